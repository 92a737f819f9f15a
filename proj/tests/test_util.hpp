// Copyright 2026 The fcgen Authors
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

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "fcgen/syntax.hpp"

namespace testutil {

inline std::filesystem::path data(const std::string& rel) {
  return std::filesystem::path(FCGEN_TEST_DATA) / rel;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("fcgen-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

// Random rooted tree over n tokens: a random order, each node attached to an
// earlier node in that order.
inline fcgen::syntax::DepGraph random_tree(std::size_t n, std::mt19937_64& rng) {
  fcgen::syntax::DepGraph g;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  g.heads.assign(n, fcgen::syntax::kRoot);
  for (std::size_t k = 1; k < n; ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    g.heads[order[k]] = order[pick(rng)];
  }
  for (std::size_t i = 0; i < n; ++i) {
    g.forms.push_back("w" + std::to_string(i));
    g.rels.push_back(g.heads[i] == fcgen::syntax::kRoot ? "ROOT" : "dep");
  }
  return g;
}

}  // namespace testutil
