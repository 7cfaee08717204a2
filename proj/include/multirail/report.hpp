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

#include <fstream>
#include <string>
#include <vector>

#include "multirail/fock.hpp"

namespace multirail {

inline constexpr const char* kVersion = "1.0.0";

/// Numbers in report files: 12 significant digits, '.' decimal, no locale.
std::string format_number(double value);

/// Compact basis label for CSV cells: occupations joined by ';', parties by
/// '|', e.g. "2;0;0|1;0;0".
std::string basis_label(const BasisState& state);

/// CSV writer with a '#'-prefixed version line ahead of the header row.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  static std::string version_line();

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace multirail
