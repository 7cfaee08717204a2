// Copyright 2026 The Multirail Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <span>
#include <vector>

#include "multirail/basis_table.hpp"
#include "multirail/fock.hpp"
#include "multirail/hw.hpp"

namespace multirail {

/// Dense M x M mode transformation, row-major.
struct ModeUnitary {
  int dim = 0;
  std::vector<cplx> a;

  ModeUnitary() = default;
  explicit ModeUnitary(int d) : dim(d), a(static_cast<std::size_t>(d) * d, cplx{0.0, 0.0}) {}

  cplx& at(int r, int c) { return a[static_cast<std::size_t>(r) * dim + c]; }
  const cplx& at(int r, int c) const { return a[static_cast<std::size_t>(r) * dim + c]; }

  static ModeUnitary identity(int d);
  ModeUnitary adjoint() const;
  ModeUnitary operator*(const ModeUnitary& rhs) const;

  /// max |U U^dag - I| entry
  double unitarity_defect() const;
  bool is_unitary(double tol = 1e-10) const { return unitarity_defect() <= tol; }
};

/// Matrix permanent (Ryser, Gray-code subset iteration). n = 0 gives 1.
cplx permanent(std::span<const cplx> row_major, int n);
cplx permanent(const ModeUnitary& u);

/// Generalized Hadamard measurement matrix for phase index j:
///   entry(m', m) = tau^((M-m) m j) * omega^(m' m) / sqrt(M),  tau = exp(i pi / M).
/// Applying it maps the computational basis to the eigenbasis of the
/// shift-and-phase operator with index j; j = 0 is the plain DFT.
ModeUnitary hadamard_matrix(int modes, int j);

/// Multiphoton transport of one party's modes through U. The transition
/// amplitude from occupation n to occupation m is perm(U[m|n]) / sqrt(m! n!),
/// with U[m|n] built by repeating rows/columns per occupation.
SparseState apply_local_unitary(const SparseState& state, int party, const ModeUnitary& u);

/// Dense in-place variant over a prebuilt basis table.
void apply_local_unitary_dense(const BasisTable& table, std::vector<cplx>& dense,
                               int party, const ModeUnitary& u);

/// Local transition matrix of U on the party's fixed-photon-number basis;
/// entry (out, in) indexed by the table's local enumeration.
std::vector<cplx> local_transition_matrix(const BasisTable& table, int party,
                                          const ModeUnitary& u);

struct MeasurementSetting {
  enum class Kind { computational, hadamard };
  Kind kind = Kind::computational;
  int l = 0;
  HWIndices indices;

  static MeasurementSetting computational() { return {}; }
  static MeasurementSetting hadamard(int l, HWIndices indices) {
    MeasurementSetting s;
    s.kind = Kind::hadamard;
    s.l = l;
    s.indices = std::move(indices);
    return s;
  }
};

using OutcomeDistribution = std::map<BasisState, double, CanonicalLess>;

/// Photon-counting statistics: computational-basis probabilities, or the
/// same after per-party generalized Hadamard transformations with phase
/// indices j_i * l.
OutcomeDistribution outcome_distribution(const SparseState& state,
                                         const MeasurementSetting& setting);

/// Deterministic i.i.d. sampling from a distribution; returns counts per
/// outcome. Throws on an empty distribution.
std::map<BasisState, long, CanonicalLess> sample_outcomes(const OutcomeDistribution& dist,
                                                          long count,
                                                          std::uint64_t seed);

}  // namespace multirail
