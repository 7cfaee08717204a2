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

// Independent evaluation routes used only by tests. Everything here avoids
// the library's fast paths: permanents come from permutation sums, unitaries
// from photon-by-photon creation-operator expansion, and the loss model from
// an explicit system-plus-environment circuit.

#pragma once

#include <map>
#include <random>
#include <vector>

#include "multirail/fock.hpp"
#include "multirail/hw.hpp"
#include "multirail/lon.hpp"
#include "multirail/source.hpp"

namespace oracle {

using multirail::BasisState;
using multirail::cplx;
using multirail::FockVector;
using multirail::HWIndices;
using multirail::ModeUnitary;
using multirail::SparseState;
using multirail::SystemShape;

// ---- permanents ----

cplx permanent_by_permutations(const std::vector<cplx>& row_major, int n);

// ---- generic multi-mode Fock dictionaries ----

using Occ = std::vector<int>;
using FockDict = std::map<Occ, cplx>;

/// Moves all photons of `source_mode` into the target modes with the given
/// amplitudes (targets must be empty in every key unless equal to the
/// source).
FockDict redistribute(const FockDict& dict, int source_mode,
                      const std::vector<std::pair<int, cplx>>& targets);

/// Transports one party's modes through U by expanding each photon
/// individually; the reference for the permanent-based implementation.
SparseState apply_unitary_by_expansion(const SparseState& state, int party,
                                       const ModeUnitary& u);

// ---- generation / loss circuit ----

struct SplitterOutcome {
  std::vector<int> local_photons;
  double probability = 0.0;
  std::map<BasisState, cplx, multirail::CanonicalLess> amplitudes;  // unnormalized
};

/// Sends M truncated source copies through P-mode splitters (explicit
/// expansion) and collects the joint output sorted by local photon numbers.
std::vector<SplitterOutcome> splitter_outcomes(int modes, int parties,
                                               const std::vector<cplx>& source_amps,
                                               int per_mode_cap);

struct LossOutcome {
  FockVector nu;
  double weight = 0.0;  // joint probability of this loss pattern and the postselection
  SparseState state;    // normalized conditional state (empty when weight = 0)
};

/// Explicit environment simulation: per-mode beam splitters with reflection
/// sqrt(eps) into M environment modes, then the P-mode splitters, then
/// projection of the environment onto each lost pattern with |nu| <= cutoff
/// and postselection on the shape's local photon numbers.
std::vector<LossOutcome> lossy_components_explicit(const SystemShape& shape,
                                                   const std::vector<cplx>& source_amps,
                                                   double eps, int cutoff,
                                                   int per_mode_cap);

// ---- stabilizer expectation through the measurement circuit ----

/// Expectation of the symmetry projector for setting l and eigenphase m,
/// obtained by transforming with the per-party Hadamard matrices and summing
/// outcome probabilities whose joint clock label matches m (with the
/// eigenphase offset fixed by the half-power phase convention).
double s_lambda_by_hadamard(const SparseState& state, const HWIndices& indices,
                            int l, int m);

// ---- explicit operator matrices on one party's subspace ----

struct LocalMatrices {
  std::vector<std::vector<cplx>> x;  // cyclic mode shift
  std::vector<std::vector<cplx>> z;  // clock phases
};

LocalMatrices local_xz_matrices(int modes, int photons);

// ---- randomized inputs ----

SparseState random_state(const SystemShape& shape, std::mt19937_64& rng);

/// Uniformly random phase indices satisfying sum_i j_i N_i = 0 (mod M).
HWIndices random_valid_indices(const SystemShape& shape, std::mt19937_64& rng);

}  // namespace oracle
