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

// AVX2/FMA variants of the inner-loop kernels. Complex numbers are handled
// two per 256-bit vector in interleaved (re,im) layout, except the permanent
// which uses a split re/im layout so row-sum updates touch four entries per op.

#include "multirail/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <bit>
#include <vector>

namespace multirail::kernels {

namespace {

// [r0,i0,r1,i1] * [s0,t0,s1,t1] as two complex products
inline __m256d cmul(__m256d x, __m256d y) {
  __m256d xr = _mm256_movedup_pd(x);
  __m256d xi = _mm256_unpackhi_pd(x, x);
  __m256d ys = _mm256_shuffle_pd(y, y, 0x5);
  return _mm256_fmaddsub_pd(xr, y, _mm256_mul_pd(xi, ys));
}

inline __m256d conj2(__m256d x) {
  const __m256d mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  return _mm256_xor_pd(x, mask);
}

inline cplx reduce_c(__m256d acc) {
  alignas(32) double v[4];
  _mm256_store_pd(v, acc);
  return {v[0] + v[2], v[1] + v[3]};
}

double norm_sq_avx2(const cplx* c, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d x = _mm256_loadu_pd(d + 2 * i);
    acc = _mm256_fmadd_pd(x, x, acc);
  }
  alignas(32) double v[4];
  _mm256_store_pd(v, acc);
  double total = v[0] + v[1] + v[2] + v[3];
  for (; i < n; ++i) total += std::norm(c[i]);
  return total;
}

cplx dot_conj_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* da = reinterpret_cast<const double*>(a);
  const double* db = reinterpret_cast<const double*>(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d x = conj2(_mm256_loadu_pd(da + 2 * i));
    __m256d y = _mm256_loadu_pd(db + 2 * i);
    acc = _mm256_add_pd(acc, cmul(x, y));
  }
  cplx total = reduce_c(acc);
  for (; i < n; ++i) total += std::conj(a[i]) * b[i];
  return total;
}

void scale_avx2(cplx* c, std::size_t n, double s) {
  double* d = reinterpret_cast<double*>(c);
  const __m256d f = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(d + 2 * i), f));
  for (; i < n; ++i) c[i] *= s;
}

inline __m256d load_pair(const cplx& lo, const cplx& hi) {
  __m128d l = _mm_loadu_pd(reinterpret_cast<const double*>(&lo));
  __m128d h = _mm_loadu_pd(reinterpret_cast<const double*>(&hi));
  return _mm256_insertf128_pd(_mm256_castpd128_pd256(l), h, 1);
}

cplx permuted_phase_dot_avx2(const cplx* c, const std::int32_t* perm,
                             const std::int32_t* phase_idx, const cplx* phase,
                             std::size_t n) {
  const double* d = reinterpret_cast<const double*>(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d x = _mm256_loadu_pd(d + 2 * i);
    __m256d ph = load_pair(phase[phase_idx[i]], phase[phase_idx[i + 1]]);
    __m256d u = cmul(ph, x);
    __m256d p = conj2(load_pair(c[perm[i]], c[perm[i + 1]]));
    acc = _mm256_add_pd(acc, cmul(p, u));
  }
  cplx total = reduce_c(acc);
  for (; i < n; ++i)
    total += std::conj(c[perm[i]]) * (phase[phase_idx[i]] * c[i]);
  return total;
}

cplx permanent_avx2(const cplx* a, int n) {
  if (n == 0) return {1.0, 0.0};
  const std::size_t nv = (static_cast<std::size_t>(n) + 3) & ~std::size_t{3};
  // split layout, padded with the multiplicative identity so lane products
  // over the padding stay 1
  std::vector<double> row_re(nv, 1.0), row_im(nv, 0.0);
  std::vector<double> col_re(nv * static_cast<std::size_t>(n), 0.0);
  std::vector<double> col_im(nv * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    row_re[static_cast<std::size_t>(i)] = 0.0;
    for (int j = 0; j < n; ++j) {
      col_re[static_cast<std::size_t>(j) * nv + i] = a[i * n + j].real();
      col_im[static_cast<std::size_t>(j) * nv + i] = a[i * n + j].imag();
    }
  }
  double total_re = 0.0, total_im = 0.0;
  const std::uint64_t end = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k != end; ++k) {
    const int col = std::countr_zero(k);
    const std::uint64_t gray = k ^ (k >> 1);
    const double* cr = col_re.data() + static_cast<std::size_t>(col) * nv;
    const double* ci = col_im.data() + static_cast<std::size_t>(col) * nv;
    __m256d prod_re = _mm256_set1_pd(1.0);
    __m256d prod_im = _mm256_setzero_pd();
    if ((gray >> col) & 1) {
      for (std::size_t b = 0; b < nv; b += 4) {
        __m256d rr = _mm256_add_pd(_mm256_loadu_pd(row_re.data() + b), _mm256_loadu_pd(cr + b));
        __m256d ri = _mm256_add_pd(_mm256_loadu_pd(row_im.data() + b), _mm256_loadu_pd(ci + b));
        _mm256_storeu_pd(row_re.data() + b, rr);
        _mm256_storeu_pd(row_im.data() + b, ri);
        __m256d nre = _mm256_fmsub_pd(prod_re, rr, _mm256_mul_pd(prod_im, ri));
        prod_im = _mm256_fmadd_pd(prod_re, ri, _mm256_mul_pd(prod_im, rr));
        prod_re = nre;
      }
    } else {
      for (std::size_t b = 0; b < nv; b += 4) {
        __m256d rr = _mm256_sub_pd(_mm256_loadu_pd(row_re.data() + b), _mm256_loadu_pd(cr + b));
        __m256d ri = _mm256_sub_pd(_mm256_loadu_pd(row_im.data() + b), _mm256_loadu_pd(ci + b));
        _mm256_storeu_pd(row_re.data() + b, rr);
        _mm256_storeu_pd(row_im.data() + b, ri);
        __m256d nre = _mm256_fmsub_pd(prod_re, rr, _mm256_mul_pd(prod_im, ri));
        prod_im = _mm256_fmadd_pd(prod_re, ri, _mm256_mul_pd(prod_im, rr));
        prod_re = nre;
      }
    }
    // combine the four lane products into one complex term
    alignas(32) double pr[4], pi[4];
    _mm256_store_pd(pr, prod_re);
    _mm256_store_pd(pi, prod_im);
    double tre = pr[0], tim = pi[0];
    for (int l = 1; l < 4; ++l) {
      double nre = tre * pr[l] - tim * pi[l];
      tim = tre * pi[l] + tim * pr[l];
      tre = nre;
    }
    const double sign = (std::popcount(gray) & 1) ? -1.0 : 1.0;
    total_re += sign * tre;
    total_im += sign * tim;
  }
  const double outer = (n & 1) ? -1.0 : 1.0;
  return {outer * total_re, outer * total_im};
}

const KernelTable kAvx2{
    "avx2",     norm_sq_avx2, dot_conj_avx2,
    scale_avx2, permuted_phase_dot_avx2,
    permanent_avx2,
};

bool cpu_has_avx2() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace

const KernelTable* avx2_table() {
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
}

}  // namespace multirail::kernels

#else  // non-x86 fallback

namespace multirail::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace multirail::kernels

#endif
