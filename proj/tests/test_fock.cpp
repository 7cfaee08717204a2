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

#include <doctest.h>

#include <random>

#include "multirail/basis_table.hpp"
#include "multirail/fock.hpp"
#include "oracles.hpp"

using namespace multirail;

namespace {

std::int64_t stars_and_bars(int modes, int photons) {
  // binomial(photons + modes - 1, modes - 1)
  std::int64_t c = 1;
  for (int t = 1; t <= modes - 1; ++t) c = c * (photons + t) / t;
  return c;
}

}  // namespace

TEST_CASE("enumerate_basis matches the small examples") {
  auto b21 = enumerate_basis(2, 1);
  REQUIRE(b21.size() == 2);
  CHECK(b21[0] == FockVector({1, 0}));
  CHECK(b21[1] == FockVector({0, 1}));

  CHECK(enumerate_basis(5, 2).size() == 15);

  auto vac = enumerate_basis(3, 0);
  REQUIRE(vac.size() == 1);
  CHECK(vac[0] == FockVector({0, 0, 0}));
}

TEST_CASE("enumerate_basis counts and order for all small sizes") {
  for (int m = 1; m <= 8; ++m) {
    for (int n = 0; n <= 6; ++n) {
      auto basis = enumerate_basis(m, n);
      CHECK(static_cast<std::int64_t>(basis.size()) == stars_and_bars(m, n));
      CanonicalLess less;
      for (std::size_t i = 0; i + 1 < basis.size(); ++i) {
        CHECK(less(basis[i], basis[i + 1]));
        CHECK(!less(basis[i + 1], basis[i]));
      }
      for (const auto& v : basis) CHECK(v.photons() == n);
    }
  }
}

TEST_CASE("factorials and multinomials are exact") {
  CHECK(factorial_exact(0) == 1);
  CHECK(factorial_exact(20) == 2432902008176640000LL);
  CHECK_THROWS_AS(factorial_exact(21), std::overflow_error);

  CHECK(multinomial(FockVector({2, 0, 1})) == 2);
  CHECK(multinomial(FockVector({0, 0, 0, 0})) == 1);

  BasisState two_parties({FockVector({1, 0}), FockVector({1, 0})});
  CHECK(multinomial_ratio(two_parties) == 2);
  BasisState single({FockVector({3, 1})});
  CHECK(multinomial_ratio(single) == 1);
}

TEST_CASE("sparse state keys are validated against the shape") {
  SystemShape shape(2, 2, {1, 1});
  SparseState state(shape);
  CHECK_THROWS_AS(state.set(BasisState({FockVector({2, 0}), FockVector({0, 1})}), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(state.set(BasisState({FockVector({1, 0, 0}), FockVector({0, 1})}), 1.0),
                  std::invalid_argument);
  state.set(BasisState({FockVector({1, 0}), FockVector({0, 1})}), 1.0);
  CHECK(state.norm() == doctest::Approx(1.0));
}

TEST_CASE("inner product basics") {
  SystemShape shape(2, 2, {1, 1});
  std::mt19937_64 rng(11);
  auto a = oracle::random_state(shape, rng);
  auto b = oracle::random_state(shape, rng);

  CHECK(std::abs(inner_product(a, a) - cplx{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))) < 1e-12);

  BasisState k1({FockVector({1, 0}), FockVector({1, 0})});
  BasisState k2({FockVector({0, 1}), FockVector({1, 0})});
  SparseState e1(shape), e2(shape);
  e1.set(k1, 1.0);
  e2.set(k2, 1.0);
  CHECK(std::abs(inner_product(e1, e2)) == 0.0);

  SystemShape other(2, 3, {1, 1});
  SparseState c(other);
  CHECK_THROWS_AS(inner_product(a, c), std::invalid_argument);
}

TEST_CASE("norm is insertion-order independent") {
  SystemShape shape(2, 3, {2, 1});
  BasisTable table(shape);
  std::vector<std::pair<BasisState, cplx>> entries;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  for (std::size_t i = 0; i < table.size(); ++i)
    entries.emplace_back(table.basis_state(i), cplx{gauss(rng), gauss(rng)});

  SparseState fwd(shape), rev(shape);
  for (const auto& [k, v] : entries) fwd.set(k, v);
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) rev.set(it->first, it->second);
  CHECK(fwd.norm() == doctest::Approx(rev.norm()).epsilon(1e-14));
}

TEST_CASE("basis table round trip and shift permutation") {
  SystemShape shape(3, 4, {2, 1, 0});
  BasisTable table(shape);
  CHECK(table.size() == static_cast<std::size_t>(10 * 4 * 1));
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto state = table.basis_state(i);
    CHECK(table.joint_index(state) == i);
    const auto shifted = mode_shift(state, 1);
    CHECK(table.joint_index(shifted) == static_cast<std::size_t>(table.joint_shift()[i]));
  }
}
