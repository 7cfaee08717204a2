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
#include <cstddef>
#include <cstdint>
#include <string>

namespace multirail::kernels {

using cplx = std::complex<double>;

// Inner-loop primitives behind the state engine. Each entry has a scalar
// reference implementation and may have ISA-specific variants; the active
// table is chosen once at startup from CPU features (overridable through
// set_active / the MULTIRAIL_KERNELS environment variable).
struct KernelTable {
  const char* name;

  // sum_i |c_i|^2
  double (*norm_sq)(const cplx* c, std::size_t n);

  // sum_i conj(a_i) * b_i
  cplx (*dot_conj)(const cplx* a, const cplx* b, std::size_t n);

  // c_i *= s
  void (*scale)(cplx* c, std::size_t n, double s);

  // sum_i conj(c[perm[i]]) * phase[phase_idx[i]] * c[i]
  cplx (*permuted_phase_dot)(const cplx* c, const std::int32_t* perm,
                             const std::int32_t* phase_idx, const cplx* phase,
                             std::size_t n);

  // Matrix permanent by Ryser inclusion-exclusion with Gray-code subset
  // iteration, O(2^n * n). Row-major n x n input, n <= 30. n = 0 gives 1.
  cplx (*permanent)(const cplx* a, int n);
};

const KernelTable& scalar_table();

/// AVX2 table, or nullptr when unsupported (non-x86 build or CPU without AVX2).
const KernelTable* avx2_table();

/// The runtime-selected table.
const KernelTable& active();

/// Force a table by name ("scalar", "avx2", "auto"). Returns false if the
/// request cannot be honored on this machine.
bool set_active(const std::string& name);

}  // namespace multirail::kernels
