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

#include "multirail/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace multirail {

int FockVector::photons() const {
  return std::accumulate(occ.begin(), occ.end(), 0);
}

std::string FockVector::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t m = 0; m < occ.size(); ++m) {
    if (m) os << ',';
    os << occ[m];
  }
  os << ')';
  return os.str();
}

FockVector BasisState::mode_sum() const {
  if (parts.empty()) return FockVector{};
  std::vector<int> sum(parts[0].occ.size(), 0);
  for (const auto& part : parts) {
    for (std::size_t m = 0; m < sum.size(); ++m) sum[m] += part.occ[m];
  }
  return FockVector(std::move(sum));
}

int BasisState::total_photons() const {
  int n = 0;
  for (const auto& part : parts) n += part.photons();
  return n;
}

std::string BasisState::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) os << 'x';
    os << parts[i].str();
  }
  return os.str();
}

bool CanonicalLess::operator()(const FockVector& a, const FockVector& b) const {
  // descending lexicographic: (2,0) precedes (1,1)
  return std::lexicographical_compare(b.occ.begin(), b.occ.end(),
                                      a.occ.begin(), a.occ.end());
}

bool CanonicalLess::operator()(const BasisState& a, const BasisState& b) const {
  for (std::size_t i = 0; i < std::min(a.parts.size(), b.parts.size()); ++i) {
    if ((*this)(a.parts[i], b.parts[i])) return true;
    if ((*this)(b.parts[i], a.parts[i])) return false;
  }
  return a.parts.size() < b.parts.size();
}

SystemShape::SystemShape(int p, int m, std::vector<int> n)
    : parties(p), modes(m), photons(std::move(n)) {
  if (parties < 1) throw std::invalid_argument("shape: need at least one party");
  if (modes < 2) throw std::invalid_argument("shape: need at least two modes per party");
  if (static_cast<int>(photons.size()) != parties)
    throw std::invalid_argument("shape: photon list length must equal party count");
  for (int ni : photons)
    if (ni < 0) throw std::invalid_argument("shape: negative local photon number");
}

int SystemShape::total_photons() const {
  return std::accumulate(photons.begin(), photons.end(), 0);
}

cplx SystemShape::omega() const {
  return std::polar(1.0, 2.0 * std::numbers::pi / modes);
}

std::vector<FockVector> enumerate_basis(int modes, int photons) {
  if (modes < 1) throw std::invalid_argument("enumerate_basis: modes must be >= 1");
  if (photons < 0) throw std::invalid_argument("enumerate_basis: photons must be >= 0");
  std::vector<FockVector> out;
  std::vector<int> cur(static_cast<std::size_t>(modes), 0);
  cur[0] = photons;
  for (;;) {
    out.emplace_back(cur);
    // successor in descending lexicographic order: move one photon from the
    // rightmost movable slot one step right, pulling everything beyond it back
    int i = modes - 2;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == 0) --i;
    if (i < 0) break;
    int tail = 0;
    for (int m = i + 1; m < modes; ++m) {
      tail += cur[static_cast<std::size_t>(m)];
      cur[static_cast<std::size_t>(m)] = 0;
    }
    cur[static_cast<std::size_t>(i)] -= 1;
    cur[static_cast<std::size_t>(i) + 1] = tail + 1;
  }
  return out;
}

std::int64_t factorial_exact(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative number");
  if (n > 20) throw std::overflow_error("factorial_exact: exact arithmetic limited to n <= 20");
  std::int64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

std::int64_t multinomial(const FockVector& n) {
  std::int64_t prod = 1;
  for (int c : n.occ) {
    if (c < 0) throw std::invalid_argument("multinomial: negative occupation");
    prod *= factorial_exact(c);
  }
  return prod;
}

std::int64_t multinomial_ratio(const BasisState& state) {
  // n_tot!/(n_1!...n_P!) built as a product of binomials so every
  // intermediate stays exact
  if (state.parts.empty()) return 1;
  int total = state.total_photons();
  if (total > 20) throw std::overflow_error("multinomial_ratio: exact arithmetic limited to 20 photons");
  std::int64_t result = 1;
  int placed = 0;
  for (const auto& part : state.parts) {
    int np = part.photons();
    // C(placed + np, np)
    std::int64_t c = 1;
    for (int t = 1; t <= np; ++t) c = c * (placed + t) / t;
    result *= c;
    placed += np;
  }
  return result;
}

void SparseState::check_key(const BasisState& key) const {
  if (key.parties() != shape_.parties)
    throw std::invalid_argument("state key has wrong party count");
  for (int i = 0; i < shape_.parties; ++i) {
    const auto& part = key.part(i);
    if (part.modes() != shape_.modes)
      throw std::invalid_argument("state key has wrong mode count");
    if (part.photons() != shape_.photons[static_cast<std::size_t>(i)])
      throw std::invalid_argument("state key violates local photon number " +
                                  std::to_string(shape_.photons[static_cast<std::size_t>(i)]) +
                                  " at party " + std::to_string(i));
  }
}

void SparseState::set(const BasisState& key, cplx amplitude) {
  check_key(key);
  amps_[key] = amplitude;
}

void SparseState::add(const BasisState& key, cplx amplitude) {
  check_key(key);
  amps_[key] += amplitude;
}

cplx SparseState::amplitude(const BasisState& key) const {
  auto it = amps_.find(key);
  return it == amps_.end() ? cplx{0.0, 0.0} : it->second;
}

double SparseState::norm() const {
  long double acc = 0.0L;
  for (const auto& [key, amp] : amps_) acc += static_cast<long double>(std::norm(amp));
  return static_cast<double>(std::sqrt(acc));
}

void SparseState::normalize() {
  double n = norm();
  if (n <= 0.0) throw std::runtime_error("cannot normalize the zero state");
  for (auto& [key, amp] : amps_) amp /= n;
}

void SparseState::prune(double threshold) {
  for (auto it = amps_.begin(); it != amps_.end();) {
    if (std::abs(it->second) < threshold)
      it = amps_.erase(it);
    else
      ++it;
  }
}

cplx inner_product(const SparseState& a, const SparseState& b) {
  if (!(a.shape() == b.shape()))
    throw std::invalid_argument("inner_product: shape mismatch");
  // iterate the smaller map
  const SparseState& lead = a.size() <= b.size() ? a : b;
  const SparseState& other = a.size() <= b.size() ? b : a;
  cplx acc{0.0, 0.0};
  for (const auto& [key, amp] : lead.amplitudes()) {
    cplx oa = other.amplitude(key);
    if (&lead == &a)
      acc += std::conj(amp) * oa;
    else
      acc += std::conj(oa) * amp;
  }
  return acc;
}

}  // namespace multirail
