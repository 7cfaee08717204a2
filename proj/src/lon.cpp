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

#include "multirail/lon.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "multirail/kernels.hpp"

namespace multirail {

ModeUnitary ModeUnitary::identity(int d) {
  ModeUnitary u(d);
  for (int i = 0; i < d; ++i) u.at(i, i) = cplx{1.0, 0.0};
  return u;
}

ModeUnitary ModeUnitary::adjoint() const {
  ModeUnitary u(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) u.at(r, c) = std::conj(at(c, r));
  return u;
}

ModeUnitary ModeUnitary::operator*(const ModeUnitary& rhs) const {
  ModeUnitary u(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      cplx acc{0.0, 0.0};
      for (int t = 0; t < dim; ++t) acc += at(r, t) * rhs.at(t, c);
      u.at(r, c) = acc;
    }
  return u;
}

double ModeUnitary::unitarity_defect() const {
  double worst = 0.0;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      cplx acc{0.0, 0.0};
      for (int t = 0; t < dim; ++t) acc += at(r, t) * std::conj(at(c, t));
      if (r == c) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  return worst;
}

cplx permanent(std::span<const cplx> row_major, int n) {
  if (n < 0) throw std::invalid_argument("permanent: negative dimension");
  if (row_major.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw std::invalid_argument("permanent: matrix size mismatch");
  if (n > 30) throw std::invalid_argument("permanent: dimension too large for subset iteration");
  return kernels::active().permanent(row_major.data(), n);
}

cplx permanent(const ModeUnitary& u) { return permanent(u.a, u.dim); }

ModeUnitary hadamard_matrix(int modes, int j) {
  if (modes < 1) throw std::invalid_argument("hadamard_matrix: modes must be >= 1");
  const int M = modes;
  // tau = exp(i pi / M) carries the half-power phases; exponents live mod 2M
  std::vector<cplx> tau(static_cast<std::size_t>(2 * M));
  for (int t = 0; t < 2 * M; ++t)
    tau[static_cast<std::size_t>(t)] = std::polar(1.0, std::numbers::pi * t / M);
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  ModeUnitary u(M);
  for (int mp = 0; mp < M; ++mp)
    for (int m = 0; m < M; ++m) {
      const long long half = static_cast<long long>(M - m) * m * j;
      const long long whole = 2LL * mp * m;
      u.at(mp, m) = scale * tau[static_cast<std::size_t>((half + whole) % (2 * M))];
    }
  return u;
}

std::vector<cplx> local_transition_matrix(const BasisTable& table, int party,
                                          const ModeUnitary& u) {
  if (u.dim != table.shape().modes)
    throw std::invalid_argument("local unitary dimension must match the mode count");
  const auto& basis = table.local_basis(party);
  const std::size_t dim = basis.size();
  const int photons = table.shape().photons[static_cast<std::size_t>(party)];

  // mode index of each photon, per basis vector
  std::vector<std::vector<int>> photon_modes(dim);
  std::vector<double> inv_sqrt_fact(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    auto& pm = photon_modes[i];
    pm.reserve(static_cast<std::size_t>(photons));
    for (int m = 0; m < basis[i].modes(); ++m)
      for (int c = 0; c < basis[i][m]; ++c) pm.push_back(m);
    inv_sqrt_fact[i] = 1.0 / std::sqrt(static_cast<double>(multinomial(basis[i])));
  }

  std::vector<cplx> sub(static_cast<std::size_t>(photons) * static_cast<std::size_t>(photons));
  std::vector<cplx> t(dim * dim);
  for (std::size_t out = 0; out < dim; ++out) {
    for (std::size_t in = 0; in < dim; ++in) {
      for (int r = 0; r < photons; ++r)
        for (int c = 0; c < photons; ++c)
          sub[static_cast<std::size_t>(r) * photons + c] =
              u.at(photon_modes[out][static_cast<std::size_t>(r)],
                   photon_modes[in][static_cast<std::size_t>(c)]);
      t[out * dim + in] = permanent(sub, photons) * inv_sqrt_fact[out] * inv_sqrt_fact[in];
    }
  }
  return t;
}

void apply_local_unitary_dense(const BasisTable& table, std::vector<cplx>& dense,
                               int party, const ModeUnitary& u) {
  if (party < 0 || party >= table.party_count())
    throw std::invalid_argument("apply_local_unitary: party index out of range");
  const auto t = local_transition_matrix(table, party, u);
  const std::size_t dim = static_cast<std::size_t>(table.party_dim(party));

  std::size_t inner = 1;
  for (int p = party + 1; p < table.party_count(); ++p)
    inner *= static_cast<std::size_t>(table.party_dim(p));
  const std::size_t outer = table.size() / (dim * inner);

  std::vector<cplx> slice(dim);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in_off = 0; in_off < inner; ++in_off) {
      const std::size_t base = o * dim * inner + in_off;
      for (std::size_t i = 0; i < dim; ++i) slice[i] = dense[base + i * inner];
      for (std::size_t out = 0; out < dim; ++out) {
        cplx acc{0.0, 0.0};
        for (std::size_t in = 0; in < dim; ++in) acc += t[out * dim + in] * slice[in];
        dense[base + out * inner] = acc;
      }
    }
  }
}

SparseState apply_local_unitary(const SparseState& state, int party, const ModeUnitary& u) {
  BasisTable table(state.shape());
  auto dense = table.to_dense(state);
  apply_local_unitary_dense(table, dense, party, u);
  return table.to_sparse(dense);
}

OutcomeDistribution outcome_distribution(const SparseState& state,
                                         const MeasurementSetting& setting) {
  OutcomeDistribution dist;
  if (setting.kind == MeasurementSetting::Kind::computational) {
    for (const auto& [key, amp] : state.amplitudes()) {
      const double p = std::norm(amp);
      if (p > 0.0) dist[key] += p;
    }
    return dist;
  }
  const int M = state.shape().modes;
  if (setting.l < 0 || setting.l >= M)
    throw std::invalid_argument("measurement setting l must lie in [0, M)");
  if (setting.indices.party_count() != state.shape().parties)
    throw std::invalid_argument("measurement setting needs one phase index per party");
  BasisTable table(state.shape());
  auto dense = table.to_dense(state);
  for (int p = 0; p < state.shape().parties; ++p) {
    const int a = ((setting.indices.j[static_cast<std::size_t>(p)] * setting.l) % M + M) % M;
    apply_local_unitary_dense(table, dense, p, hadamard_matrix(M, a));
  }
  for (std::size_t i = 0; i < dense.size(); ++i) {
    const double p = std::norm(dense[i]);
    if (p > 1e-30) dist[table.basis_state(i)] += p;
  }
  return dist;
}

std::map<BasisState, long, CanonicalLess> sample_outcomes(const OutcomeDistribution& dist,
                                                          long count,
                                                          std::uint64_t seed) {
  if (dist.empty()) throw std::invalid_argument("sample_outcomes: empty distribution");
  std::vector<const BasisState*> keys;
  std::vector<double> cdf;
  keys.reserve(dist.size());
  cdf.reserve(dist.size());
  double acc = 0.0;
  for (const auto& [key, p] : dist) {
    acc += p;
    keys.push_back(&key);
    cdf.push_back(acc);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, acc);
  std::map<BasisState, long, CanonicalLess> counts;
  for (long s = 0; s < count; ++s) {
    const double u = uni(rng);
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx = std::min(static_cast<std::size_t>(it - cdf.begin()), keys.size() - 1);
    ++counts[*keys[idx]];
  }
  return counts;
}

}  // namespace multirail
