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

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "fcgen/preprocess.hpp"
#include "json.hpp"

// Training artifacts for an external seq2seq trainer: three stage manifests
// (initial data, augmented data, both merged at a lower learning rate) and
// the JSON-lines pair files they reference.
namespace fcgen::trainprep {

inline constexpr int kBatchSize = 8;
inline constexpr double kGradientClipNorm = 1.0;
inline constexpr double kLearningRate = 1e-5;
inline constexpr double kMergedLearningRate = 1e-6;
inline constexpr int kMergedMaxSteps = 4000;

struct EmitOptions {
  std::uint64_t shuffle_seed = 0;
  // No defaults on purpose: callers must state them.
  std::optional<int> epochs;
  std::optional<int> eval_every_steps;
};

struct EmitResult {
  std::array<std::filesystem::path, 3> manifests;
  std::array<std::size_t, 3> pair_counts{};
};

// Writes into `outdir`:
//   initial.jsonl, augmented.jsonl, merged.jsonl, dev.jsonl (when dev given)
//   stage1.manifest.json, stage2.manifest.json, stage3.manifest.json
// Throws ValidationError when a corpus is empty or options are missing.
EmitResult emit_manifests(std::span<const preprocess::TrainingPair> initial,
                          std::span<const preprocess::TrainingPair> augmented,
                          const std::filesystem::path& outdir,
                          const EmitOptions& options,
                          std::span<const preprocess::TrainingPair> dev = {});

// Seeded Fisher-Yates over a splitmix64 stream; stable across platforms.
std::vector<preprocess::TrainingPair> shuffled(
    std::span<const preprocess::TrainingPair> pairs, std::uint64_t seed);

// Checks a manifest against the schema in docs/manifest.schema.json, which
// includes the per-stage regimen. Throws ValidationError.
void validate_manifest(const nlohmann::json& manifest);

}  // namespace fcgen::trainprep
