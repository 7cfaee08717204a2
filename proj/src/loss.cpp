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

#include "multirail/loss.hpp"

#include <cmath>

#include "multirail/basis_table.hpp"
#include "ntot_table.hpp"
#include "parallel.hpp"

namespace multirail {

namespace {

// amplitudes extended far enough that truncating the per-mode loss sums
// costs less than the completeness tolerance of the mixture weights
constexpr int kTailLength = 160;

double binom(int n, int k) {
  double c = 1.0;
  for (int t = 1; t <= k; ++t) c = c * (n - k + t) / t;
  return c;
}

}  // namespace

LossyMixture lossy_mixture(const SystemShape& shape, const SourceSpec& spec,
                           LossChannel channel, int cutoff) {
  if (spec.kind != SourceSpec::Kind::squeezed && spec.kind != SourceSpec::Kind::coherent)
    throw std::invalid_argument(
        "loss analysis applies to squeezed or coherent sources; Fock-type inputs "
        "exclude losses through the postselection itself");
  if (cutoff < 0) throw std::invalid_argument("loss cutoff must be >= 0");

  const double eps = channel.epsilon;
  const int M = shape.modes;
  const int n_tot = shape.total_photons();
  const BasisTable table(shape);
  const detail::NtotTable ntot(table);

  const int amp_cutoff = n_tot + cutoff + kTailLength;
  const auto c_phi = source_amplitudes(spec, amp_cutoff);
  std::vector<double> c_sq(c_phi.size());
  for (std::size_t i = 0; i < c_phi.size(); ++i) c_sq[i] = std::norm(c_phi[i]);

  const double split = std::pow(static_cast<double>(shape.parties), static_cast<double>(n_tot));

  // total postselection probability over all loss patterns: per-mode sums
  // g(n) = (1-eps)^n sum_v C(n+v, v) eps^v |c(n+v)|^2
  std::vector<double> g(static_cast<std::size_t>(n_tot) + 1, 0.0);
  for (int n = 0; n <= n_tot; ++n) {
    long double acc = 0.0L;
    for (int v = 0; n + v <= amp_cutoff; ++v) {
      const long double term = binom(n + v, v) * std::pow(eps, v) * c_sq[static_cast<std::size_t>(n + v)];
      acc += term;
      if (v > 8 && term < 1e-22L * acc) break;
    }
    g[static_cast<std::size_t>(n)] = std::pow(1.0 - eps, n) * static_cast<double>(acc);
  }
  long double p_total_acc = 0.0L;
  for (std::size_t t = 0; t < ntot.distinct.size(); ++t) {
    long double prod = ntot.weight[t] / split;
    for (int m = 0; m < M; ++m) prod *= g[static_cast<std::size_t>(ntot.distinct[t][m])];
    p_total_acc += prod;
  }
  const double p_total = static_cast<double>(p_total_acc);

  LossyMixture mixture;
  mixture.shape = shape;
  mixture.postselect_probability = p_total;
  if (p_total <= 0.0)
    throw std::runtime_error("lossy_mixture: postselection probability vanishes");

  // lost-photon patterns, |nu| ascending and canonical within each count
  std::vector<FockVector> patterns;
  for (int lost = 0; lost <= cutoff; ++lost) {
    auto level = enumerate_basis(M, lost);
    patterns.insert(patterns.end(), level.begin(), level.end());
  }

  // per-mode conditional factor, tabulated over (kept n, lost v)
  std::vector<cplx> mode_factor(static_cast<std::size_t>(n_tot + 1) *
                                static_cast<std::size_t>(cutoff + 1));
  for (int n = 0; n <= n_tot; ++n)
    for (int v = 0; v <= cutoff; ++v)
      mode_factor[static_cast<std::size_t>(n) * (cutoff + 1) + v] =
          std::pow(eps, 0.5 * v) * std::pow(1.0 - eps, 0.5 * n) *
          std::sqrt(binom(n + v, v)) * c_phi[static_cast<std::size_t>(n + v)];

  long double retained_acc = 0.0L;
  for (const auto& nu : patterns) {
    std::vector<cplx> dense(table.size());
    long double q_acc = 0.0L;
    // per-distinct-pattern product of the conditioned per-mode amplitudes
    std::vector<cplx> pattern_amp(ntot.distinct.size());
    for (std::size_t t = 0; t < ntot.distinct.size(); ++t) {
      cplx prod{1.0, 0.0};
      for (int m = 0; m < M; ++m)
        prod *= mode_factor[static_cast<std::size_t>(ntot.distinct[t][m]) * (cutoff + 1) + nu[m]];
      pattern_amp[t] = prod;
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
      const cplx a = pattern_amp[static_cast<std::size_t>(ntot.ntot_of_joint[i])] *
                     (ntot.ratio_sqrt[i] / std::sqrt(split));
      dense[i] = a;
      q_acc += static_cast<long double>(std::norm(a));
    }
    const double q = static_cast<double>(q_acc);
    if (q <= 0.0) continue;  // pattern cannot occur (e.g. any loss at eps = 0)
    const double p = q / p_total;
    retained_acc += p;
    const double inv = 1.0 / std::sqrt(q);
    for (auto& a : dense) a *= inv;
    mixture.components.emplace_back(nu, p, table.to_sparse(dense));
  }
  mixture.retained_probability = static_cast<double>(retained_acc);
  mixture.low_retention_warning = mixture.retained_probability < 0.5;
  return mixture;
}

LossyReport lossy_verifier_expectation(const LossyMixture& mixture,
                                       const VerifierSpec& spec, int threads) {
  const int M = mixture.shape.modes;
  const BasisTable table(mixture.shape);
  const VerifierEngine engine(table, spec.indices, spec.L, spec.label.k);

  struct PerComponent {
    std::vector<double> values;
    double d = 0.0;
  };
  std::vector<PerComponent> partial(mixture.components.size());
  parallel_for(mixture.components.size(), threads, [&](std::size_t ci) {
    const auto& comp = mixture.components[ci];
    if (comp.probability <= 0.0 || comp.state.empty()) return;
    const auto dense = table.to_dense(comp.state);
    engine.require_valid_configuration(dense);
    partial[ci].values = engine.all_kappa(dense);
    partial[ci].d = engine.d_expectation(dense);
  });

  LossyReport report;
  report.retained_probability = mixture.retained_probability;
  report.low_retention_warning = mixture.low_retention_warning;
  report.per_kappa.resize(static_cast<std::size_t>(M));
  double d_raw = 0.0;
  for (int kappa = 0; kappa < M; ++kappa)
    report.per_kappa[static_cast<std::size_t>(kappa)].kappa = kappa;
  for (std::size_t ci = 0; ci < mixture.components.size(); ++ci) {
    const double p = mixture.components[ci].probability;
    if (p <= 0.0 || partial[ci].values.empty()) continue;
    for (int kappa = 0; kappa < M; ++kappa)
      report.per_kappa[static_cast<std::size_t>(kappa)].raw +=
          p * partial[ci].values[static_cast<std::size_t>(kappa)];
    d_raw += p * partial[ci].d;
  }
  const double retained = std::max(report.retained_probability, 1e-300);
  for (auto& row : report.per_kappa) row.renormalized = row.raw / retained;
  report.bound = engine.bound_for(d_raw / retained);
  return report;
}

}  // namespace multirail
