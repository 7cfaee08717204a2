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

#include "multirail/verifier.hpp"

#include <cmath>
#include <numbers>

#include "multirail/kernels.hpp"

namespace multirail {

namespace {

int mod(long long value, int m) {
  return static_cast<int>(((value % m) + m) % m);
}

}  // namespace

VerifierEngine::VerifierEngine(const BasisTable& table, HWIndices indices,
                               std::vector<int> L, int k)
    : table_(&table),
      indices_(std::move(indices)),
      L_(std::move(L)),
      k_(k),
      modes_(table.shape().modes) {
  indices_.require_valid(table.shape());
  const int M = modes_;
  k_ = mod(k_, M);
  for (int& l : L_) l = mod(l, M);

  omega_.resize(static_cast<std::size_t>(M));
  for (int t = 0; t < M; ++t)
    omega_[static_cast<std::size_t>(t)] = std::polar(1.0, 2.0 * std::numbers::pi * t / M);

  mu_j_ = table.weighted_labels(indices_.j);

  const std::size_t n = table.size();
  perm_pow_.resize(static_cast<std::size_t>(M));
  perm_pow_[0].resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_pow_[0][i] = static_cast<std::int32_t>(i);
  for (int p = 1; p < M; ++p) {
    perm_pow_[static_cast<std::size_t>(p)].resize(n);
    const auto& prev = perm_pow_[static_cast<std::size_t>(p) - 1];
    const auto& shift = table.joint_shift();
    for (std::size_t i = 0; i < n; ++i)
      perm_pow_[static_cast<std::size_t>(p)][i] = shift[static_cast<std::size_t>(prev[i])];
  }

  long long jn = 0;
  for (int i = 0; i < table.shape().parties; ++i)
    jn += static_cast<long long>(indices_.j[static_cast<std::size_t>(i)]) *
          table.shape().photons[static_cast<std::size_t>(i)];

  phase_idx_.resize(L_.size());
  post_.resize(L_.size());
  for (std::size_t lp = 0; lp < L_.size(); ++lp) {
    const int l = L_[lp];
    phase_idx_[lp].resize(static_cast<std::size_t>(M));
    post_[lp].resize(static_cast<std::size_t>(M));
    for (int mp = 0; mp < M; ++mp) {
      auto& idx = phase_idx_[lp][static_cast<std::size_t>(mp)];
      idx.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        idx[i] = static_cast<std::int32_t>(
            mod(static_cast<long long>(l) * mp * mu_j_[i], M));
      const long long tri = static_cast<long long>(mp) * (mp - 1) / 2;
      post_[lp][static_cast<std::size_t>(mp)] =
          omega_[static_cast<std::size_t>(mod(static_cast<long long>(l) * tri % M * (jn % M), M))];
    }
  }
}

std::vector<double> VerifierEngine::lambda_row(std::span<const cplx> dense,
                                               std::size_t l_pos) const {
  const int M = modes_;
  const auto& kt = kernels::active();
  std::vector<cplx> power_exp(static_cast<std::size_t>(M));
  for (int mp = 0; mp < M; ++mp) {
    const cplx t = kt.permuted_phase_dot(
        dense.data(), perm_pow_[static_cast<std::size_t>(mp)].data(),
        phase_idx_[l_pos][static_cast<std::size_t>(mp)].data(), omega_.data(),
        dense.size());
    power_exp[static_cast<std::size_t>(mp)] = t * post_[l_pos][static_cast<std::size_t>(mp)];
  }
  std::vector<double> row(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    cplx acc{0.0, 0.0};
    for (int mp = 0; mp < M; ++mp)
      acc += std::conj(omega_[static_cast<std::size_t>(mod(static_cast<long long>(m) * mp, M))]) *
             power_exp[static_cast<std::size_t>(mp)];
    row[static_cast<std::size_t>(m)] = acc.real() / M;
  }
  return row;
}

std::vector<double> VerifierEngine::all_kappa(std::span<const cplx> dense) const {
  const int M = modes_;
  const auto& kt = kernels::active();
  const double nsq = kt.norm_sq(dense.data(), dense.size());
  if (nsq <= 0.0) throw std::invalid_argument("verifier: zero state");

  std::vector<double> sz(static_cast<std::size_t>(M), 0.0);
  for (std::size_t i = 0; i < dense.size(); ++i)
    sz[static_cast<std::size_t>(mu_j_[i])] += std::norm(dense[i]);

  std::vector<std::vector<double>> lam(L_.size());
  for (std::size_t lp = 0; lp < L_.size(); ++lp) lam[lp] = lambda_row(dense, lp);

  std::vector<double> out(static_cast<std::size_t>(M));
  for (int kappa = 0; kappa < M; ++kappa) {
    double acc = sz[static_cast<std::size_t>(kappa)];
    for (std::size_t lp = 0; lp < L_.size(); ++lp)
      acc += lam[lp][static_cast<std::size_t>(
          mod(static_cast<long long>(k_) + static_cast<long long>(kappa) * L_[lp], M))];
    out[static_cast<std::size_t>(kappa)] = acc / (1.0 + static_cast<double>(L_.size())) / nsq;
  }
  return out;
}

double VerifierEngine::sz(std::span<const cplx> dense, int m) const {
  const double nsq = kernels::active().norm_sq(dense.data(), dense.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (mu_j_[i] == mod(m, modes_)) acc += std::norm(dense[i]);
  return acc / nsq;
}

double VerifierEngine::s_lambda(std::span<const cplx> dense, int l, int m) const {
  for (std::size_t lp = 0; lp < L_.size(); ++lp) {
    if (L_[lp] == mod(l, modes_)) {
      const double nsq = kernels::active().norm_sq(dense.data(), dense.size());
      return lambda_row(dense, lp)[static_cast<std::size_t>(mod(m, modes_))] / nsq;
    }
  }
  throw std::invalid_argument("s_lambda: setting l not part of this engine's configuration");
}

double VerifierEngine::d_expectation(std::span<const cplx> dense) const {
  const auto& min_orb = table_->min_local_orbit();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    const double p = std::norm(dense[i]);
    num += p / static_cast<double>(min_orb[i]);
    den += p;
  }
  if (den <= 0.0) throw std::invalid_argument("verifier: zero state");
  return num / den;
}

void VerifierEngine::require_valid_configuration(std::span<const cplx> dense) const {
  std::vector<std::set<int>> cards(static_cast<std::size_t>(table_->party_count()));
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (std::abs(dense[i]) < SparseState::kPruneThreshold) continue;
    for (int p = 0; p < table_->party_count(); ++p)
      cards[static_cast<std::size_t>(p)].insert(table_->local_orbit_size(p, table_->local_of(i, p)));
  }
  if (!check_complementary_set(table_->shape(), indices_, L_, cards))
    throw std::invalid_argument(
        "configuration set L is not complementary on the state's support: "
        "gcd(j_i (l-l') N_i |X|/M, |X|) != 1 for some party and orbit size; "
        "the biproducible bound would not apply");
}

double sz_expectation(const SparseState& state, const HWIndices& indices, int m) {
  indices.require_valid(state.shape());
  const int M = state.shape().modes;
  double acc = 0.0;
  for (const auto& [key, amp] : state.amplitudes())
    if (weighted_clock_label(key, indices) == ((m % M) + M) % M) acc += std::norm(amp);
  return acc;
}

double s_lambda_expectation(const SparseState& state, const HWIndices& indices,
                            int l, int m) {
  BasisTable table(state.shape());
  VerifierEngine engine(table, indices, {((l % state.shape().modes) + state.shape().modes) % state.shape().modes});
  return engine.s_lambda(table.to_dense(state), l, m);
}

double verifier_expectation(const SparseState& state, const VerifierSpec& spec) {
  BasisTable table(state.shape());
  VerifierEngine engine(table, spec.indices, spec.L, spec.label.k);
  auto dense = table.to_dense(state);
  engine.require_valid_configuration(dense);
  const int M = state.shape().modes;
  return engine.all_kappa(dense)[static_cast<std::size_t>(((spec.label.kappa % M) + M) % M)];
}

BoundReport biproducible_bound(const SparseState& state, const VerifierSpec& spec) {
  BasisTable table(state.shape());
  VerifierEngine engine(table, spec.indices, spec.L, spec.label.k);
  auto dense = table.to_dense(state);
  engine.require_valid_configuration(dense);
  const int M = state.shape().modes;

  BoundReport report;
  report.d_expectation = engine.d_expectation(dense);
  report.bound = engine.bound_for(report.d_expectation);
  auto values = engine.all_kappa(dense);
  report.per_kappa.resize(static_cast<std::size_t>(M));
  for (int kappa = 0; kappa < M; ++kappa)
    report.per_kappa[static_cast<std::size_t>(kappa)] = {kappa, values[static_cast<std::size_t>(kappa)]};
  report.kappa = ((spec.label.kappa % M) + M) % M;
  report.verifier_value = values[static_cast<std::size_t>(report.kappa)];
  report.gme_detected = report.verifier_value > report.bound + kDetectionMargin;
  return report;
}

std::map<std::pair<int, int>, double> kappa_decomposition(const SparseState& state,
                                                          const HWIndices& indices) {
  indices.require_valid(state.shape());
  BasisTable table(state.shape());
  const int M = state.shape().modes;
  auto dense = table.to_dense(state);
  auto mu_j = table.weighted_labels(indices.j);
  const auto& shift = table.joint_shift();

  std::map<std::pair<int, int>, double> out;
  std::vector<char> visited(table.size(), 0);
  for (std::size_t start = 0; start < table.size(); ++start) {
    if (visited[start]) continue;
    std::vector<std::size_t> cycle;
    std::size_t cur = start;
    do {
      visited[cur] = 1;
      cycle.push_back(cur);
      cur = static_cast<std::size_t>(shift[cur]);
    } while (cur != start);
    const int T = static_cast<int>(cycle.size());
    const int kappa = mu_j[start];
    const int step = M / T;
    for (int t = 0; t < T; ++t) {
      const int k = t * step;
      // <E_k|psi> = (sqrt(T)/M) * (M/T) * sum_u omega^{k u} c_u along the cycle
      cplx overlap{0.0, 0.0};
      for (int u = 0; u < T; ++u)
        overlap += std::polar(1.0, 2.0 * std::numbers::pi * ((static_cast<long long>(k) * u) % M) / M) *
                   dense[cycle[static_cast<std::size_t>(u)]];
      overlap *= std::sqrt(static_cast<double>(T)) / T;
      const double w = std::norm(overlap);
      // squared amplitude-pruning threshold keeps numerical dust out
      if (w > 1e-28) out[{k, kappa}] += w;
    }
  }
  return out;
}

}  // namespace multirail
