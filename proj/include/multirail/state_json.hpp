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

#include <iosfwd>
#include <string>

#include "multirail/fock.hpp"

namespace multirail {

// State file layout:
//   {"parties": P, "modes": M, "photons": [N_i],
//    "amplitudes": [{"basis": [[n...], ...], "re": x, "im": y}, ...]}
// with amplitudes in canonical basis order.

std::string state_to_json(const SparseState& state);
void write_state_json(const SparseState& state, const std::string& path);

SparseState state_from_json(const std::string& text);
SparseState read_state_json(const std::string& path);

}  // namespace multirail
