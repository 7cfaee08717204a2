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

#include "multirail/state_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace multirail {

std::string state_to_json(const SparseState& state) {
  nlohmann::ordered_json doc;
  const auto& shape = state.shape();
  doc["parties"] = shape.parties;
  doc["modes"] = shape.modes;
  doc["photons"] = shape.photons;
  auto amps = nlohmann::ordered_json::array();
  for (const auto& [key, amp] : state.amplitudes()) {
    auto basis = nlohmann::ordered_json::array();
    for (const auto& part : key.parts) basis.push_back(part.occ);
    nlohmann::ordered_json entry;
    entry["basis"] = std::move(basis);
    entry["re"] = amp.real();
    entry["im"] = amp.imag();
    amps.push_back(std::move(entry));
  }
  doc["amplitudes"] = std::move(amps);
  return doc.dump(1);
}

void write_state_json(const SparseState& state, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open state file for writing: " + path);
  out << state_to_json(state) << '\n';
}

SparseState state_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("state file is not valid JSON: ") + e.what());
  }
  SystemShape shape(doc.at("parties").get<int>(), doc.at("modes").get<int>(),
                    doc.at("photons").get<std::vector<int>>());
  SparseState state(shape);
  for (const auto& entry : doc.at("amplitudes")) {
    std::vector<FockVector> parts;
    for (const auto& occ : entry.at("basis"))
      parts.emplace_back(occ.get<std::vector<int>>());
    state.set(BasisState(std::move(parts)),
              cplx{entry.at("re").get<double>(), entry.at("im").get<double>()});
  }
  return state;
}

SparseState read_state_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

}  // namespace multirail
