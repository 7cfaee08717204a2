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

#include "multirail/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace multirail {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string basis_label(const BasisState& state) {
  std::string out;
  for (std::size_t p = 0; p < state.parts.size(); ++p) {
    if (p) out += '|';
    const auto& occ = state.parts[p].occ;
    for (std::size_t m = 0; m < occ.size(); ++m) {
      if (m) out += ';';
      out += std::to_string(occ[m]);
    }
  }
  return out;
}

std::string CsvWriter::version_line() {
  return std::string("# multirail ") + kVersion;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : out_(path), columns_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot open output file: " + path);
  out_ << version_line() << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw std::logic_error("csv row does not match the header width");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace multirail
