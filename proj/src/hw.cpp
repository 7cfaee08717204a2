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

#include "multirail/hw.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace multirail {

namespace {

int mod(int value, int m) { return ((value % m) + m) % m; }

cplx omega_pow(int M, int exponent) {
  return std::polar(1.0, 2.0 * std::numbers::pi * mod(exponent, M) / M);
}

}  // namespace

bool HWIndices::valid_for(const SystemShape& shape) const {
  if (party_count() != shape.parties) return false;
  long long acc = 0;
  for (int i = 0; i < shape.parties; ++i)
    acc += static_cast<long long>(j[static_cast<std::size_t>(i)]) *
           shape.photons[static_cast<std::size_t>(i)];
  return acc % shape.modes == 0;
}

void HWIndices::require_valid(const SystemShape& shape) const {
  if (party_count() != shape.parties)
    throw std::invalid_argument("HW indices: one entry per party required");
  if (!valid_for(shape)) {
    long long acc = 0;
    for (int i = 0; i < shape.parties; ++i)
      acc += static_cast<long long>(j[static_cast<std::size_t>(i)]) *
             shape.photons[static_cast<std::size_t>(i)];
    throw std::invalid_argument(
        "HW index condition violated: sum_i j_i*N_i = " + std::to_string(acc) +
        " is not a multiple of M = " + std::to_string(shape.modes) +
        "; the simultaneous shift eigenstates are not stabilized by this choice");
  }
}

FockVector mode_shift(const FockVector& n, int power) {
  const int M = n.modes();
  const int p = mod(power, M);
  std::vector<int> out(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m)
    out[static_cast<std::size_t>(mod(m + p, M))] = n[m];
  return FockVector(std::move(out));
}

BasisState mode_shift(const BasisState& state, int power) {
  std::vector<FockVector> parts;
  parts.reserve(state.parts.size());
  for (const auto& part : state.parts) parts.push_back(mode_shift(part, power));
  return BasisState(std::move(parts));
}

SparseState mode_shift(const SparseState& state, int power) {
  SparseState out(state.shape());
  for (const auto& [key, amp] : state.amplitudes())
    out.set(mode_shift(key, power), amp);
  return out;
}

int clock_label(const FockVector& n) {
  const int M = n.modes();
  long long acc = 0;
  for (int m = 0; m < M; ++m) acc += static_cast<long long>(n[m]) * m;
  return static_cast<int>(acc % M);
}

int weighted_clock_label(const BasisState& state, const HWIndices& indices) {
  if (indices.party_count() != state.parties())
    throw std::invalid_argument("weighted_clock_label: index/party mismatch");
  const int M = state.parts.empty() ? 1 : state.part(0).modes();
  long long acc = 0;
  for (int i = 0; i < state.parties(); ++i)
    acc += static_cast<long long>(indices.j[static_cast<std::size_t>(i)]) *
           clock_label(state.part(i));
  return mod(static_cast<int>(acc % M), M);
}

SparseState apply_phase_shift(const SparseState& state, const HWIndices& indices) {
  const int M = state.shape().modes;
  SparseState out(state.shape());
  for (const auto& [key, amp] : state.amplitudes()) {
    const int label = weighted_clock_label(key, indices);
    out.set(key, amp * omega_pow(M, label));
  }
  return out;
}

namespace {

template <typename StateT>
Orbit<StateT> make_orbit(const StateT& seed) {
  Orbit<StateT> orbit;
  CanonicalLess less;
  StateT cur = seed;
  StateT best = seed;
  std::vector<StateT> members;
  do {
    members.push_back(cur);
    if (less(cur, best)) best = cur;
    cur = mode_shift(cur, 1);
  } while (!(cur == seed));
  // rotate so members start at the canonical representative
  auto it = std::find(members.begin(), members.end(), best);
  std::rotate(members.begin(), it, members.end());
  orbit.representative = best;
  orbit.members = std::move(members);
  return orbit;
}

}  // namespace

XClass x_class_of(const FockVector& n) { return make_orbit(n); }

JointXClass x_class_of(const BasisState& state) { return make_orbit(state); }

SparseState build_ek_state(const SystemShape& shape, const JointXClass& cls, int k) {
  const int M = shape.modes;
  const int card = cls.cardinality();
  const int kk = ((k % M) + M) % M;
  if (M % card != 0 || kk % (M / card) != 0)
    throw std::invalid_argument(
        "shift eigenphase k = " + std::to_string(kk) + " is not a multiple of M/|orbit| = " +
        std::to_string(M / card) + "; the superposition would vanish");
  SparseState out(shape);
  const double coeff = std::sqrt(static_cast<double>(card)) / M;
  BasisState cur = cls.representative;
  for (int m = 0; m < M; ++m) {
    out.add(cur, coeff * omega_pow(M, -kk * m));
    cur = mode_shift(cur, 1);
  }
  out.prune();
  return out;
}

SparseState build_ek_state(const SystemShape& shape, const BasisState& member, int k) {
  return build_ek_state(shape, x_class_of(member), k);
}

bool check_complementary_set(const SystemShape& shape, const HWIndices& indices,
                             const std::vector<int>& L,
                             const std::vector<std::set<int>>& support_cardinalities) {
  if (L.size() <= 1) return true;
  if (static_cast<int>(support_cardinalities.size()) != shape.parties)
    throw std::invalid_argument("check_complementary_set: one cardinality set per party");
  const int M = shape.modes;
  for (std::size_t a = 0; a < L.size(); ++a) {
    for (std::size_t b = a + 1; b < L.size(); ++b) {
      const int dl = L[a] - L[b];
      if (dl == 0) continue;
      for (int i = 0; i < shape.parties; ++i) {
        const int Ni = shape.photons[static_cast<std::size_t>(i)];
        const int ji = indices.j[static_cast<std::size_t>(i)];
        for (int card : support_cardinalities[static_cast<std::size_t>(i)]) {
          // N_i*|X|/M is integral: a vector with orbit size |X| repeats with
          // period |X|, so its photons split evenly over M/|X| blocks
          const long long lhs = static_cast<long long>(ji) * dl * Ni * card / M;
          if (std::gcd(std::llabs(lhs), static_cast<long long>(card)) != 1) return false;
        }
      }
    }
  }
  return true;
}

std::vector<std::set<int>> support_cardinalities(const SparseState& state) {
  std::vector<std::set<int>> out(static_cast<std::size_t>(state.shape().parties));
  for (const auto& [key, amp] : state.amplitudes()) {
    if (std::abs(amp) < SparseState::kPruneThreshold) continue;
    for (int i = 0; i < key.parties(); ++i)
      out[static_cast<std::size_t>(i)].insert(x_class_of(key.part(i)).cardinality());
  }
  return out;
}

}  // namespace multirail
