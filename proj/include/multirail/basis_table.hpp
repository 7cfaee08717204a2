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

#include <cstdint>
#include <span>
#include <vector>

#include "multirail/fock.hpp"

namespace multirail {

/// Enumerated fixed-photon-number joint basis with precomputed per-state
/// metadata. Joint indices are row-major over the per-party canonical
/// enumerations, so index order equals canonical basis order. Dense
/// amplitude vectors aligned with this enumeration are the fast path for
/// expectation values; SparseState remains the exchange format.
class BasisTable {
 public:
  explicit BasisTable(SystemShape shape);

  const SystemShape& shape() const { return shape_; }
  std::size_t size() const { return size_; }

  int party_count() const { return shape_.parties; }
  int party_dim(int p) const { return static_cast<int>(local_[static_cast<std::size_t>(p)].size()); }
  const std::vector<FockVector>& local_basis(int p) const { return local_[static_cast<std::size_t>(p)]; }
  int local_index(int p, const FockVector& n) const;

  BasisState basis_state(std::size_t joint) const;
  std::size_t joint_index(const BasisState& state) const;
  int local_of(std::size_t joint, int party) const;

  /// Permutation applying the simultaneous single-step mode shift.
  const std::vector<std::int32_t>& joint_shift() const { return joint_shift_; }

  /// min over parties of the local shift-orbit size, per joint index.
  const std::vector<std::int32_t>& min_local_orbit() const { return min_orbit_; }

  /// Shift-orbit size of one party's local basis vector.
  int local_orbit_size(int party, int local_index) const {
    return local_orbit_[static_cast<std::size_t>(party)][static_cast<std::size_t>(local_index)];
  }

  /// Size of the joint shift orbit through the given index.
  int joint_orbit_size(std::size_t joint) const;

  /// j-weighted clock label per joint index, mod M.
  std::vector<std::int32_t> weighted_labels(const std::vector<int>& j) const;

  /// Unweighted joint clock label (sum of per-party labels) per index, mod M.
  std::vector<std::int32_t> plain_labels() const;

  std::vector<cplx> to_dense(const SparseState& state) const;
  SparseState to_sparse(std::span<const cplx> dense,
                        double prune = SparseState::kPruneThreshold) const;

 private:
  SystemShape shape_;
  std::size_t size_ = 0;
  std::vector<std::vector<FockVector>> local_;
  std::vector<std::map<FockVector, int, CanonicalLess>> local_lookup_;
  std::vector<std::vector<std::int32_t>> local_shift_;  // per party
  std::vector<std::vector<std::int32_t>> local_mu_;     // per party
  std::vector<std::vector<std::int32_t>> local_orbit_;  // per party
  std::vector<std::int32_t> joint_shift_;
  std::vector<std::int32_t> min_orbit_;
  std::vector<std::size_t> stride_;
};

}  // namespace multirail
