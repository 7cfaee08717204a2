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

#include "multirail/kernels.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <vector>

namespace multirail::kernels {

namespace {

double norm_sq_scalar(const cplx* c, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(c[i]);
  return acc;
}

cplx dot_conj_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void scale_scalar(cplx* c, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) c[i] *= s;
}

cplx permuted_phase_dot_scalar(const cplx* c, const std::int32_t* perm,
                               const std::int32_t* phase_idx, const cplx* phase,
                               std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx t = phase[phase_idx[i]] * c[i];
    const cplx& p = c[perm[i]];
    re += p.real() * t.real() + p.imag() * t.imag();
    im += p.real() * t.imag() - p.imag() * t.real();
  }
  return {re, im};
}

cplx permanent_scalar(const cplx* a, int n) {
  if (n == 0) return {1.0, 0.0};
  std::vector<cplx> rowsum(static_cast<std::size_t>(n), cplx{0.0, 0.0});
  cplx total{0.0, 0.0};
  const std::uint64_t end = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k != end; ++k) {
    const int col = std::countr_zero(k);
    const std::uint64_t gray = k ^ (k >> 1);
    const double dir = (gray >> col) & 1 ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i)
      rowsum[static_cast<std::size_t>(i)] += dir * a[i * n + col];
    cplx prod{1.0, 0.0};
    for (int i = 0; i < n; ++i) prod *= rowsum[static_cast<std::size_t>(i)];
    total += (std::popcount(gray) & 1 ? -1.0 : 1.0) * prod;
  }
  return (n & 1 ? -1.0 : 1.0) * total;
}

const KernelTable kScalar{
    "scalar",          norm_sq_scalar, dot_conj_scalar,
    scale_scalar,      permuted_phase_dot_scalar,
    permanent_scalar,
};

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* pick_default() {
  if (const char* env = std::getenv("MULTIRAIL_KERNELS")) {
    std::string req(env);
    if (req == "scalar") return &kScalar;
    if (req == "avx2" && avx2_table()) return avx2_table();
    // "auto" or unusable request falls through
  }
  if (const KernelTable* t = avx2_table()) return t;
  return &kScalar;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (!t) {
    t = pick_default();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

bool set_active(const std::string& name) {
  if (name == "scalar") {
    g_active.store(&kScalar, std::memory_order_release);
    return true;
  }
  if (name == "avx2") {
    if (const KernelTable* t = avx2_table()) {
      g_active.store(t, std::memory_order_release);
      return true;
    }
    return false;
  }
  if (name == "auto") {
    g_active.store(nullptr, std::memory_order_release);
    active();
    return true;
  }
  return false;
}

}  // namespace multirail::kernels
