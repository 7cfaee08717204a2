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

#include "multirail/basis_table.hpp"

#include <algorithm>

#include "multirail/hw.hpp"

namespace multirail {

BasisTable::BasisTable(SystemShape shape) : shape_(std::move(shape)) {
  const int P = shape_.parties;
  const int M = shape_.modes;
  local_.resize(static_cast<std::size_t>(P));
  local_lookup_.resize(static_cast<std::size_t>(P));
  local_shift_.resize(static_cast<std::size_t>(P));
  local_mu_.resize(static_cast<std::size_t>(P));

  // joint metadata lives in 32-bit index arrays; refuse shapes that cannot
  // be enumerated at desk scale
  constexpr std::size_t kMaxJointStates = 100'000'000;

  size_ = 1;
  for (int p = 0; p < P; ++p) {
    auto& basis = local_[static_cast<std::size_t>(p)];
    basis = enumerate_basis(M, shape_.photons[static_cast<std::size_t>(p)]);
    auto& lookup = local_lookup_[static_cast<std::size_t>(p)];
    for (int i = 0; i < static_cast<int>(basis.size()); ++i)
      lookup.emplace(basis[static_cast<std::size_t>(i)], i);
    auto& shift = local_shift_[static_cast<std::size_t>(p)];
    auto& mu = local_mu_[static_cast<std::size_t>(p)];
    shift.resize(basis.size());
    mu.resize(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      shift[i] = lookup.at(mode_shift(basis[i], 1));
      mu[i] = static_cast<std::int32_t>(clock_label(basis[i]));
    }
    if (size_ > kMaxJointStates / basis.size())
      throw std::invalid_argument("joint basis exceeds " +
                                  std::to_string(kMaxJointStates) + " states");
    size_ *= basis.size();
  }

  stride_.assign(static_cast<std::size_t>(P), 1);
  for (int p = P - 2; p >= 0; --p)
    stride_[static_cast<std::size_t>(p)] =
        stride_[static_cast<std::size_t>(p) + 1] * local_[static_cast<std::size_t>(p) + 1].size();

  joint_shift_.resize(size_);
  min_orbit_.resize(size_);

  // local orbit sizes
  local_orbit_.resize(static_cast<std::size_t>(P));
  for (int p = 0; p < P; ++p) {
    const auto& shift = local_shift_[static_cast<std::size_t>(p)];
    auto& orb = local_orbit_[static_cast<std::size_t>(p)];
    orb.resize(shift.size());
    for (std::size_t i = 0; i < shift.size(); ++i) {
      int t = 1;
      std::int32_t cur = shift[i];
      while (cur != static_cast<std::int32_t>(i)) {
        cur = shift[static_cast<std::size_t>(cur)];
        ++t;
      }
      orb[i] = t;
    }
  }

  std::vector<int> idx(static_cast<std::size_t>(P), 0);
  for (std::size_t joint = 0; joint < size_; ++joint) {
    std::size_t shifted = 0;
    std::int32_t min_orb = static_cast<std::int32_t>(M) + 1;
    for (int p = 0; p < P; ++p) {
      const auto i = static_cast<std::size_t>(idx[static_cast<std::size_t>(p)]);
      shifted += static_cast<std::size_t>(local_shift_[static_cast<std::size_t>(p)][i]) *
                 stride_[static_cast<std::size_t>(p)];
      min_orb = std::min(min_orb, local_orbit_[static_cast<std::size_t>(p)][i]);
    }
    joint_shift_[joint] = static_cast<std::int32_t>(shifted);
    min_orbit_[joint] = min_orb;
    // advance mixed-radix counter
    for (int p = P - 1; p >= 0; --p) {
      if (++idx[static_cast<std::size_t>(p)] < party_dim(p)) break;
      idx[static_cast<std::size_t>(p)] = 0;
    }
  }
}

int BasisTable::local_index(int p, const FockVector& n) const {
  auto it = local_lookup_[static_cast<std::size_t>(p)].find(n);
  if (it == local_lookup_[static_cast<std::size_t>(p)].end())
    throw std::invalid_argument("basis table: Fock vector not in party subspace");
  return it->second;
}

BasisState BasisTable::basis_state(std::size_t joint) const {
  std::vector<FockVector> parts;
  parts.reserve(static_cast<std::size_t>(shape_.parties));
  for (int p = 0; p < shape_.parties; ++p)
    parts.push_back(local_[static_cast<std::size_t>(p)][static_cast<std::size_t>(local_of(joint, p))]);
  return BasisState(std::move(parts));
}

std::size_t BasisTable::joint_index(const BasisState& state) const {
  std::size_t joint = 0;
  for (int p = 0; p < shape_.parties; ++p)
    joint += static_cast<std::size_t>(local_index(p, state.part(p))) * stride_[static_cast<std::size_t>(p)];
  return joint;
}

int BasisTable::local_of(std::size_t joint, int party) const {
  return static_cast<int>((joint / stride_[static_cast<std::size_t>(party)]) %
                          local_[static_cast<std::size_t>(party)].size());
}

int BasisTable::joint_orbit_size(std::size_t joint) const {
  int t = 1;
  std::size_t cur = static_cast<std::size_t>(joint_shift_[joint]);
  while (cur != joint) {
    cur = static_cast<std::size_t>(joint_shift_[cur]);
    ++t;
  }
  return t;
}

std::vector<std::int32_t> BasisTable::weighted_labels(const std::vector<int>& j) const {
  if (static_cast<int>(j.size()) != shape_.parties)
    throw std::invalid_argument("weighted_labels: one index per party required");
  const int M = shape_.modes;
  std::vector<std::int32_t> out(size_);
  for (std::size_t joint = 0; joint < size_; ++joint) {
    std::int64_t acc = 0;
    for (int p = 0; p < shape_.parties; ++p)
      acc += static_cast<std::int64_t>(j[static_cast<std::size_t>(p)]) *
             local_mu_[static_cast<std::size_t>(p)][static_cast<std::size_t>(local_of(joint, p))];
    out[joint] = static_cast<std::int32_t>(((acc % M) + M) % M);
  }
  return out;
}

std::vector<std::int32_t> BasisTable::plain_labels() const {
  return weighted_labels(std::vector<int>(static_cast<std::size_t>(shape_.parties), 1));
}

std::vector<cplx> BasisTable::to_dense(const SparseState& state) const {
  if (!(state.shape() == shape_))
    throw std::invalid_argument("to_dense: shape mismatch");
  std::vector<cplx> dense(size_, cplx{0.0, 0.0});
  for (const auto& [key, amp] : state.amplitudes())
    dense[joint_index(key)] = amp;
  return dense;
}

SparseState BasisTable::to_sparse(std::span<const cplx> dense, double prune) const {
  if (dense.size() != size_)
    throw std::invalid_argument("to_sparse: dense size mismatch");
  SparseState out(shape_);
  for (std::size_t joint = 0; joint < size_; ++joint)
    if (std::abs(dense[joint]) >= prune) out.set(basis_state(joint), dense[joint]);
  return out;
}

}  // namespace multirail
