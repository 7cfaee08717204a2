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

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace multirail {

using cplx = std::complex<double>;

/// Photon occupation numbers of one party's M modes.
struct FockVector {
  std::vector<int> occ;

  FockVector() = default;
  explicit FockVector(std::vector<int> o) : occ(std::move(o)) {}

  int modes() const { return static_cast<int>(occ.size()); }
  int photons() const;
  int operator[](int m) const { return occ[static_cast<std::size_t>(m)]; }

  bool operator==(const FockVector& other) const { return occ == other.occ; }
  bool operator!=(const FockVector& other) const { return occ != other.occ; }

  std::string str() const;
};

/// Joint computational-basis label: one FockVector per party.
struct BasisState {
  std::vector<FockVector> parts;

  BasisState() = default;
  explicit BasisState(std::vector<FockVector> p) : parts(std::move(p)) {}

  int parties() const { return static_cast<int>(parts.size()); }
  const FockVector& part(int i) const { return parts[static_cast<std::size_t>(i)]; }

  /// Mode-wise sum of all parties' occupations (the pre-splitter pattern).
  FockVector mode_sum() const;
  int total_photons() const;

  bool operator==(const BasisState& other) const { return parts == other.parts; }

  std::string str() const;
};

/// Canonical basis order: lexicographic descending on occupation tuples,
/// extended to joint states party by party. operator() returns true when
/// `a` precedes `b` in that order, so ordered containers iterate canonically.
struct CanonicalLess {
  bool operator()(const FockVector& a, const FockVector& b) const;
  bool operator()(const BasisState& a, const BasisState& b) const;
};

/// System layout: P parties, M modes each, fixed local photon numbers N_i.
struct SystemShape {
  int parties = 0;
  int modes = 0;
  std::vector<int> photons;

  SystemShape() = default;
  SystemShape(int p, int m, std::vector<int> n);

  int total_photons() const;
  /// Primitive M-th root of unity exp(2*pi*i/M).
  cplx omega() const;

  bool operator==(const SystemShape& other) const = default;
};

/// All M-mode occupation vectors with photon count N, in canonical order.
/// Length is binomial(N+M-1, M-1).
std::vector<FockVector> enumerate_basis(int modes, int photons);

/// Exact n! for n <= 20; throws std::overflow_error beyond that.
std::int64_t factorial_exact(int n);

/// Product of per-mode factorials, n! = prod_m n_m!, exact.
std::int64_t multinomial(const FockVector& n);

/// Exact n_tot!/(n_1! ... n_P!) for the partition of a joint state's
/// mode-wise photon pattern into its party patterns. Throws
/// std::invalid_argument if the parts are incompatible.
std::int64_t multinomial_ratio(const BasisState& state);

/// Sparse complex-amplitude map over the fixed-photon-number joint basis.
/// Keys iterate in canonical order; entries below the pruning threshold
/// are dropped by prune().
class SparseState {
 public:
  static constexpr double kPruneThreshold = 1e-14;

  explicit SparseState(SystemShape shape) : shape_(std::move(shape)) {}

  const SystemShape& shape() const { return shape_; }

  /// Inserts or accumulates an amplitude. Throws if the key does not match
  /// the shape's local photon numbers.
  void set(const BasisState& key, cplx amplitude);
  void add(const BasisState& key, cplx amplitude);

  cplx amplitude(const BasisState& key) const;

  double norm() const;
  void normalize();
  void prune(double threshold = kPruneThreshold);

  std::size_t size() const { return amps_.size(); }
  bool empty() const { return amps_.empty(); }

  using Map = std::map<BasisState, cplx, CanonicalLess>;
  const Map& amplitudes() const { return amps_; }
  Map& amplitudes() { return amps_; }

  void check_key(const BasisState& key) const;

 private:
  SystemShape shape_;
  Map amps_;
};

/// <a|b> = sum over keys of conj(a) * b. Shapes must match.
cplx inner_product(const SparseState& a, const SparseState& b);

}  // namespace multirail
