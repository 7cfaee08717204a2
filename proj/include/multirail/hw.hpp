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

#include <set>
#include <vector>

#include "multirail/fock.hpp"

namespace multirail {

/// Heisenberg-Weyl phase indices, one per party. Valid against a shape when
/// sum_i j_i * N_i = 0 (mod M); that condition makes the shift-eigenstates
/// below simultaneous eigenstates of the product operator X Z^{j_i} across
/// parties.
struct HWIndices {
  std::vector<int> j;

  int party_count() const { return static_cast<int>(j.size()); }
  bool valid_for(const SystemShape& shape) const;
  void require_valid(const SystemShape& shape) const;
};

/// Symmetry labels (k, kappa): eigenphase indices under the simultaneous
/// mode shift and the j-weighted phase operator, both mod M.
struct SymmetryLabel {
  int k = 0;
  int kappa = 0;
};

/// Orbit of a Fock vector (or joint basis state) under cyclic mode shift.
/// The representative is the member that comes first in canonical basis
/// order; the orbit size always divides M.
template <typename StateT>
struct Orbit {
  StateT representative;
  std::vector<StateT> members;
  int cardinality() const { return static_cast<int>(members.size()); }
};

using XClass = Orbit<FockVector>;
using JointXClass = Orbit<BasisState>;

/// Cyclic mode shift by `power` steps: occupation at mode m moves to
/// (m + power) mod M. No phase is introduced.
FockVector mode_shift(const FockVector& n, int power = 1);
BasisState mode_shift(const BasisState& state, int power = 1);
SparseState mode_shift(const SparseState& state, int power = 1);

/// Weighted Z-clock label mu(n) = sum_m n_m * m, mod M.
int clock_label(const FockVector& n);

/// sum_i j_i * mu(n_i) mod M.
int weighted_clock_label(const BasisState& state, const HWIndices& indices);

/// Applies the product of per-party phase operators Z^{j_i}: each amplitude
/// picks up omega^(weighted clock label).
SparseState apply_phase_shift(const SparseState& state, const HWIndices& indices);

XClass x_class_of(const FockVector& n);
JointXClass x_class_of(const BasisState& state);

/// Shift eigenstate built on a joint orbit:
///   sqrt(|orbit|)/M * sum_m omega^(-k m) shift^m |representative>
/// Defined for k a multiple of M/|orbit| (including k = 0, the uniform
/// superposition); other k would make the sum vanish and are rejected.
SparseState build_ek_state(const SystemShape& shape, const JointXClass& cls, int k);
SparseState build_ek_state(const SystemShape& shape, const BasisState& member, int k);

/// Complementarity test for a measurement configuration set L: every pair of
/// distinct labels l, l' must satisfy
///   gcd(j_i (l-l') N_i |X|/M, |X|) = 1
/// for each party i and each local orbit cardinality |X| occurring in the
/// testing state's support. L = {0} and singletons pass trivially.
bool check_complementary_set(const SystemShape& shape, const HWIndices& indices,
                             const std::vector<int>& L,
                             const std::vector<std::set<int>>& support_cardinalities);

/// Per-party orbit cardinalities occurring in a state's support.
std::vector<std::set<int>> support_cardinalities(const SparseState& state);

}  // namespace multirail
