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

#include <optional>
#include <vector>

#include "multirail/fock.hpp"
#include "multirail/verifier.hpp"

namespace multirail {

/// Single-mode input source feeding every one of the M splitter inputs.
struct SourceSpec {
  enum class Kind { single_photon, fock, coherent, squeezed };
  Kind kind = Kind::single_photon;
  int fock_photons = 1;
  cplx alpha{0.0, 0.0};
  double r = 0.0;
  double x = 0.0;

  static SourceSpec single_photon();
  static SourceSpec fock(int photons);
  static SourceSpec coherent(cplx alpha);
  static SourceSpec squeezed(double r, double x);
};

/// gamma = tanh(r), zeta = 1/sqrt(1 - exp(-4r)). Requires r > 0; at r = 0 the
/// scaling factor diverges and the source degenerates to a coherent state,
/// which is its own variant.
struct SqueezedParams {
  double gamma;
  double zeta;
  explicit SqueezedParams(double r);
};

/// dB -> squeezing factor, r = dB * ln(10) / 20.
double squeeze_factor_from_db(double db);

/// Probabilists' Hermite polynomial h_n(x) by the three-term recurrence.
double hermite(int n, double x);

/// Photon-number amplitudes of one source copy, indices 0..cutoff.
std::vector<cplx> source_amplitudes(const SourceSpec& spec, int cutoff);

struct GenerationResult {
  SparseState state;
  double postselect_probability = 0.0;
  double normalization = 0.0;

  explicit GenerationResult(SystemShape shape) : state(std::move(shape)) {}
  bool empty() const { return state.empty(); }
};

/// Splitter generation scheme: M copies of the source enter P-mode splitters
/// (uniform 1/sqrt(P) amplitudes) and the output is postselected on local
/// photon numbers. Amplitudes are proportional to
///   c_phi(ntot) * sqrt(ntot!/(n_1!...n_P!)) / sqrt(P^Ntot).
/// An impossible photon pattern yields an explicit empty result with
/// probability 0 rather than an error.
GenerationResult generate_postselected(const SystemShape& shape, const SourceSpec& spec);

struct SweepRow {
  double x = 0.0;
  int kappa = 0;
  double expectation = 0.0;
  double bound = 0.0;
};

/// Verifier expectations of the squeezed-input state across a displacement
/// grid, all kappa at k = spec.label.k per point. Grid points are evaluated
/// in parallel and merged in grid order.
std::vector<SweepRow> sweep_displacement(const SystemShape& shape, double r,
                                         const std::vector<double>& x_grid,
                                         const VerifierSpec& spec, int threads = 0);

}  // namespace multirail
