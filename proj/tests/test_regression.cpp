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

// The committed figure files are regenerated through the CLI and compared
// field by field. Comment lines ('#') are outside the contract so a version
// bump does not invalidate the data.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::vector<std::vector<std::string>> load_csv(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

bool cells_match(const std::string& a, const std::string& b) {
  if (a == b) return true;
  try {
    std::size_t ia = 0, ib = 0;
    const double da = std::stod(a, &ia);
    const double db = std::stod(b, &ib);
    if (ia != a.size() || ib != b.size()) return false;
    return std::abs(da - db) <= 1e-9;
  } catch (const std::exception&) {
    return false;
  }
}

void compare_figure(const std::string& figure) {
  const fs::path fresh_dir = fs::path(TEST_TMP_DIR) / "regression";
  fs::create_directories(fresh_dir);
  const fs::path fresh = fresh_dir / (figure + ".csv");
  const std::string cmd = std::string("'") + MULTIRAIL_BIN + "' --reproduce " + figure +
                          " -o '" + fresh.string() + "' > /dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);

  const auto want = load_csv(fs::path(REGRESSION_DIR) / (figure + ".csv"));
  const auto got = load_csv(fresh);
  REQUIRE(want.size() == got.size());
  for (std::size_t r = 0; r < want.size(); ++r) {
    REQUIRE(want[r].size() == got[r].size());
    for (std::size_t c = 0; c < want[r].size(); ++c)
      CHECK_MESSAGE(cells_match(want[r][c], got[r][c]), figure, " row ", r, " col ", c, ": ",
                    want[r][c], " vs ", got[r][c]);
  }
}

}  // namespace

TEST_CASE("figure pipelines reproduce the committed data" * doctest::timeout(600)) {
  for (const std::string figure : {"fig2a", "fig2b", "fig4", "fig5"}) compare_figure(figure);
}
