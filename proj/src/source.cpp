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

#include "multirail/source.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "multirail/basis_table.hpp"
#include "ntot_table.hpp"
#include "parallel.hpp"

namespace multirail {

SourceSpec SourceSpec::single_photon() {
  SourceSpec s;
  s.kind = Kind::single_photon;
  return s;
}

SourceSpec SourceSpec::fock(int photons) {
  if (photons < 1) throw std::invalid_argument("fock source needs at least one photon");
  SourceSpec s;
  s.kind = Kind::fock;
  s.fock_photons = photons;
  return s;
}

SourceSpec SourceSpec::coherent(cplx alpha) {
  SourceSpec s;
  s.kind = Kind::coherent;
  s.alpha = alpha;
  return s;
}

SourceSpec SourceSpec::squeezed(double r, double x) {
  if (!(r > 0.0))
    throw std::invalid_argument(
        "squeezed source requires r > 0; an unsqueezed input is a coherent source");
  SourceSpec s;
  s.kind = Kind::squeezed;
  s.r = r;
  s.x = x;
  return s;
}

SqueezedParams::SqueezedParams(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("squeezing factor must be positive");
  gamma = std::tanh(r);
  zeta = std::sqrt(1.0 / (1.0 - std::exp(-4.0 * r)));
}

double squeeze_factor_from_db(double db) { return db * std::numbers::ln10 / 20.0; }

double hermite(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite: negative degree");
  double h0 = 1.0;
  if (n == 0) return h0;
  double h1 = x;
  for (int k = 1; k < n; ++k) {
    const double h2 = x * h1 - k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

std::vector<cplx> source_amplitudes(const SourceSpec& spec, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("source_amplitudes: negative cutoff");
  std::vector<cplx> c(static_cast<std::size_t>(cutoff) + 1, cplx{0.0, 0.0});
  switch (spec.kind) {
    case SourceSpec::Kind::single_photon:
      if (cutoff >= 1) c[1] = 1.0;
      return c;
    case SourceSpec::Kind::fock:
      if (spec.fock_photons <= cutoff) c[static_cast<std::size_t>(spec.fock_photons)] = 1.0;
      return c;
    case SourceSpec::Kind::coherent: {
      const double pref = std::exp(-0.5 * std::norm(spec.alpha));
      cplx num{1.0, 0.0};
      double fact = 1.0;
      for (int n = 0; n <= cutoff; ++n) {
        c[static_cast<std::size_t>(n)] = pref * num / std::sqrt(fact);
        num *= spec.alpha;
        fact *= n + 1;
      }
      return c;
    }
    case SourceSpec::Kind::squeezed: {
      const SqueezedParams p(spec.r);
      const double y = 2.0 * p.zeta * spec.x;
      const double pref = std::pow(1.0 - p.gamma * p.gamma, 0.25) *
                          std::exp(-2.0 * p.gamma * (p.zeta * spec.x) * (p.zeta * spec.x) /
                                   (1.0 + p.gamma));
      // scaled recurrence for c_n = pref * sqrt(gamma^n/n!) h_n(y); keeps the
      // Hermite growth and the 1/sqrt(n!) decay from overflowing separately
      double cm1 = 0.0;
      double c0 = pref;
      c[0] = c0;
      for (int n = 0; n < cutoff; ++n) {
        const double c1 = y * std::sqrt(p.gamma / (n + 1)) * c0 -
                          p.gamma * std::sqrt(static_cast<double>(n) / (n + 1)) * cm1;
        c[static_cast<std::size_t>(n) + 1] = c1;
        cm1 = c0;
        c0 = c1;
      }
      return c;
    }
  }
  throw std::logic_error("unreachable source kind");
}

GenerationResult generate_postselected(const SystemShape& shape, const SourceSpec& spec) {
  GenerationResult result(shape);
  const int n_tot = shape.total_photons();

  if (spec.kind == SourceSpec::Kind::single_photon || spec.kind == SourceSpec::Kind::fock) {
    const int nu = spec.kind == SourceSpec::Kind::single_photon ? 1 : spec.fock_photons;
    if (n_tot != shape.modes * nu) return result;  // impossible pattern, p = 0
  }

  const BasisTable table(shape);
  const detail::NtotTable ntot(table);
  const auto c_phi = source_amplitudes(spec, n_tot);
  const double split = std::pow(static_cast<double>(shape.parties), 0.5 * n_tot);

  // per distinct pre-splitter pattern: product of per-mode source amplitudes
  std::vector<cplx> pattern_amp(ntot.distinct.size());
  for (std::size_t t = 0; t < ntot.distinct.size(); ++t) {
    cplx prod{1.0, 0.0};
    for (int m = 0; m < shape.modes; ++m)
      prod *= c_phi[static_cast<std::size_t>(ntot.distinct[t][m])];
    pattern_amp[t] = prod;
  }

  std::vector<cplx> dense(table.size());
  long double norm_acc = 0.0L;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const cplx a = pattern_amp[static_cast<std::size_t>(ntot.ntot_of_joint[i])] *
                   (ntot.ratio_sqrt[i] / split);
    dense[i] = a;
    norm_acc += static_cast<long double>(std::norm(a));
  }
  result.postselect_probability = static_cast<double>(norm_acc);
  if (result.postselect_probability <= 0.0) return result;

  // normalization factor of the reduced amplitude form (prefactors that
  // depend only on the total photon number stripped)
  const double hermite_arg = spec.kind == SourceSpec::Kind::squeezed
                                 ? 2.0 * SqueezedParams(spec.r).zeta * spec.x
                                 : 0.0;
  long double reduced_acc = 0.0L;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (pattern_amp[static_cast<std::size_t>(ntot.ntot_of_joint[i])] == cplx{0.0, 0.0})
      continue;  // outside the source support
    long double red = 0.0L;
    const FockVector& pattern = ntot.distinct[static_cast<std::size_t>(ntot.ntot_of_joint[i])];
    switch (spec.kind) {
      case SourceSpec::Kind::single_photon:
      case SourceSpec::Kind::fock:
        red = static_cast<long double>(ntot.ratio_sqrt[i]) * ntot.ratio_sqrt[i];
        break;
      case SourceSpec::Kind::coherent: {
        const long double rr = static_cast<long double>(ntot.ratio_sqrt[i]) /
                               std::sqrt(static_cast<long double>(multinomial(pattern)));
        red = rr * rr;
        break;
      }
      case SourceSpec::Kind::squeezed: {
        long double h = 1.0L;
        for (int m = 0; m < shape.modes; ++m) h *= hermite(pattern[m], hermite_arg);
        const long double rr = h * ntot.ratio_sqrt[i] /
                               std::sqrt(static_cast<long double>(multinomial(pattern)));
        red = rr * rr;
        break;
      }
    }
    reduced_acc += red;
  }
  result.normalization = static_cast<double>(reduced_acc);

  const double inv = 1.0 / std::sqrt(result.postselect_probability);
  for (auto& a : dense) a *= inv;
  result.state = table.to_sparse(dense);
  return result;
}

std::vector<SweepRow> sweep_displacement(const SystemShape& shape, double r,
                                         const std::vector<double>& x_grid,
                                         const VerifierSpec& spec, int threads) {
  for (std::size_t i = 1; i < x_grid.size(); ++i)
    if (x_grid[i] < x_grid[i - 1])
      throw std::invalid_argument("sweep grid must be sorted ascending");
  const SqueezedParams params(r);
  const BasisTable table(shape);
  const detail::NtotTable ntot(table);
  const VerifierEngine engine(table, spec.indices, spec.L, spec.label.k);
  {
    // squeezed states populate the whole subspace; validate L against it
    std::vector<cplx> ones(table.size(), cplx{1.0, 0.0});
    engine.require_valid_configuration(ones);
  }
  const int M = shape.modes;
  const int n_tot = shape.total_photons();

  std::vector<double> inv_sqrt_part(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const FockVector& pattern = ntot.distinct[static_cast<std::size_t>(ntot.ntot_of_joint[i])];
    inv_sqrt_part[i] = ntot.ratio_sqrt[i] / std::sqrt(static_cast<double>(multinomial(pattern)));
  }

  std::vector<SweepRow> rows(x_grid.size() * static_cast<std::size_t>(M));
  parallel_for(x_grid.size(), threads, [&](std::size_t gi) {
    const double x = x_grid[gi];
    const double y = 2.0 * params.zeta * x;
    std::vector<double> hval(static_cast<std::size_t>(n_tot) + 1);
    for (int n = 0; n <= n_tot; ++n) hval[static_cast<std::size_t>(n)] = hermite(n, y);
    std::vector<cplx> dense(table.size());
    double nsq = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const FockVector& pattern = ntot.distinct[static_cast<std::size_t>(ntot.ntot_of_joint[i])];
      double h = 1.0;
      for (int m = 0; m < M; ++m) h *= hval[static_cast<std::size_t>(pattern[m])];
      dense[i] = h * inv_sqrt_part[i];
      nsq += std::norm(dense[i]);
    }
    if (nsq <= 1e-300) {
      // postselection impossible at this displacement (e.g. odd photon
      // total at x = 0); the expectation is undefined
      const double nan = std::numeric_limits<double>::quiet_NaN();
      for (int kappa = 0; kappa < M; ++kappa)
        rows[gi * static_cast<std::size_t>(M) + static_cast<std::size_t>(kappa)] =
            SweepRow{x, kappa, nan, nan};
      return;
    }
    const auto values = engine.all_kappa(dense);
    const double bound = engine.bound_for(engine.d_expectation(dense));
    for (int kappa = 0; kappa < M; ++kappa)
      rows[gi * static_cast<std::size_t>(M) + static_cast<std::size_t>(kappa)] =
          SweepRow{x, kappa, values[static_cast<std::size_t>(kappa)], bound};
  });
  return rows;
}

}  // namespace multirail
