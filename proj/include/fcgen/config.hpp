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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcgen/corpus.hpp"
#include "json.hpp"

namespace fcgen {

inline constexpr std::string_view kEndpointEnvVar = "FCG_ENDPOINT";

// Everything a pipeline stage needs. Loaded from a flat JSON object; every
// key can also be set individually (command-line flags), last write wins.
struct RunConfig {
  // Inputs.
  std::optional<std::filesystem::path> train, dev, test, conllu;
  std::optional<std::filesystem::path> augmented, lexicon, continuations;
  std::optional<std::filesystem::path> generated, outputs, labels, hyp, ref;
  std::filesystem::path out_dir = "out";

  std::optional<corpus::SpanConvention> span_convention;

  // Generation.
  std::string endpoint;
  int max_new_tokens = 40;
  double temperature = 0.9;
  std::int64_t seed = 13;
  int timeout_s = 60;
  int parallelism = 4;
  int retries = 3;
  bool stub_generator = false;
  std::size_t stub_distinct = 10;
  std::optional<std::string> stub_echo;

  // Augmentation thresholds.
  std::size_t group_skip = 10;
  std::size_t per_sample_min = 8;
  std::size_t per_sample_max = 10;
  std::size_t topup_rounds = 3;

  // Training manifests.
  std::uint64_t shuffle_seed = 13;
  std::optional<int> epochs;
  std::optional<int> eval_every_steps;

  std::optional<std::uint64_t> sample_id;

  static const std::vector<std::string>& keys();

  // Throws ValidationError on unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value);
  void merge_json(const nlohmann::json& j);
  void load_file(const std::filesystem::path& path);
  // Fills `endpoint` from the environment when still empty.
  void apply_environment();

  // Thresholds positive, min <= max, and every input path that is set exists.
  void validate() const;

  nlohmann::ordered_json to_json() const;
};

}  // namespace fcgen
