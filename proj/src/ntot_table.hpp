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
#include <map>
#include <vector>

#include "multirail/basis_table.hpp"

namespace multirail::detail {

// Per-joint-index pre-splitter photon patterns (mode-wise sums over parties)
// and the splitter multinomial factors. Shared by the generator and the loss
// model, where every amplitude is a function of the pattern times
// sqrt(ntot!/prod n_i!).
struct NtotTable {
  explicit NtotTable(const BasisTable& table) {
    std::map<FockVector, std::int32_t, CanonicalLess> seen;
    ntot_of_joint.resize(table.size());
    ratio_sqrt.resize(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
      const BasisState state = table.basis_state(i);
      const FockVector sum = state.mode_sum();
      auto [it, inserted] = seen.emplace(sum, static_cast<std::int32_t>(distinct.size()));
      if (inserted) distinct.push_back(sum);
      ntot_of_joint[i] = it->second;
      const double ratio = static_cast<double>(multinomial(sum)) /
                           static_cast<double>(multinomial_parts(state));
      ratio_sqrt[i] = std::sqrt(ratio);
    }
    weight.assign(distinct.size(), 0.0);
    for (std::size_t i = 0; i < table.size(); ++i)
      weight[static_cast<std::size_t>(ntot_of_joint[i])] +=
          ratio_sqrt[i] * ratio_sqrt[i];
  }

  static std::int64_t multinomial_parts(const BasisState& state) {
    std::int64_t prod = 1;
    for (const auto& part : state.parts) prod *= multinomial(part);
    return prod;
  }

  std::vector<FockVector> distinct;
  std::vector<std::int32_t> ntot_of_joint;
  std::vector<double> ratio_sqrt;  // sqrt(ntot!/prod_i n_i!) per joint index
  std::vector<double> weight;      // sum of ratios per distinct pattern
};

}  // namespace multirail::detail
