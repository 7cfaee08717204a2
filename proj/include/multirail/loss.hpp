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

#include <vector>

#include "multirail/fock.hpp"
#include "multirail/source.hpp"
#include "multirail/verifier.hpp"

namespace multirail {

/// Uniform per-mode photon loss, modeled as beam splitters with reflection
/// sqrt(epsilon) coupling every mode to an inaccessible environment mode.
/// Because the rate is uniform, the loss commutes with the passive optics and
/// acts equivalently on the M pre-splitter inputs.
struct LossChannel {
  double epsilon = 0.0;

  explicit LossChannel(double eps) : epsilon(eps) {
    if (eps < 0.0 || eps >= 1.0)
      throw std::invalid_argument("loss rate must lie in [0, 1)");
  }
};

/// One term of the lossy mixture: the pre-splitter lost-photon pattern, its
/// conditional probability given successful postselection, and the
/// postselected pure state conditioned on that loss.
struct LossComponent {
  FockVector nu_tot;
  double probability = 0.0;
  SparseState state;

  LossComponent(FockVector nu, double p, SparseState s)
      : nu_tot(std::move(nu)), probability(p), state(std::move(s)) {}
};

struct LossyMixture {
  SystemShape shape;
  std::vector<LossComponent> components;  // |nu| ascending, canonical within
  double retained_probability = 0.0;      // probability mass inside the cutoff
  double postselect_probability = 0.0;    // over all loss patterns
  bool low_retention_warning = false;     // retained < 0.5
};

/// Cutoff mixture of conditional pure states for all lost-photon patterns
/// with |nu| <= cutoff. Component weights follow from the per-mode
/// beam-splitter binomial expansion of the source amplitudes,
///   q_nu ~ sum over outputs of prod_m eps^nu_m (1-eps)^n_m C(n_m+nu_m, nu_m)
///          |c_phi(n_m+nu_m)|^2 * ntot!/(n_1!...n_P!) / P^Ntot,
/// normalized over all patterns; the expansion is validated against an
/// explicit system-plus-environment simulation in the test suite. Only
/// squeezed and coherent sources are meaningful here: for Fock-type inputs
/// the postselection on the full photon number already excludes losses.
LossyMixture lossy_mixture(const SystemShape& shape, const SourceSpec& spec,
                           LossChannel channel, int cutoff);

struct LossyKappaRow {
  int kappa = 0;
  double raw = 0.0;          // convex sum over retained components
  double renormalized = 0.0; // divided by the retained probability
};

struct LossyReport {
  std::vector<LossyKappaRow> per_kappa;
  double retained_probability = 0.0;
  double bound = 1.0;  // biproducible bound of the renormalized mixture
  bool low_retention_warning = false;
};

/// Convex combination of per-component verifier expectations at the spec's k,
/// all kappa at once.
LossyReport lossy_verifier_expectation(const LossyMixture& mixture,
                                       const VerifierSpec& spec, int threads = 0);

}  // namespace multirail
