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

#include "fcgen/trainprep.hpp"

#include "fcgen/text.hpp"

namespace fcgen::trainprep {
namespace {

using ojson = nlohmann::ordered_json;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct StageSpec {
  int stage;
  const char* name;
  const char* data_file;
  double learning_rate;
  std::optional<int> max_steps;
  const char* init_from;
};

constexpr StageSpec kStages[3] = {
    {1, "initial", "initial.jsonl", kLearningRate, std::nullopt, nullptr},
    {2, "augmented", "augmented.jsonl", kLearningRate, std::nullopt, "stage1:best"},
    {3, "merged", "merged.jsonl", kMergedLearningRate, kMergedMaxSteps, "stage2:best"},
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("manifest: " + what);
}

}  // namespace

std::vector<preprocess::TrainingPair> shuffled(
    std::span<const preprocess::TrainingPair> pairs, std::uint64_t seed) {
  std::vector<preprocess::TrainingPair> out(pairs.begin(), pairs.end());
  std::uint64_t state = seed;
  for (std::size_t i = out.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(splitmix64(state) % i);
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

EmitResult emit_manifests(std::span<const preprocess::TrainingPair> initial,
                          std::span<const preprocess::TrainingPair> augmented,
                          const std::filesystem::path& outdir,
                          const EmitOptions& options,
                          std::span<const preprocess::TrainingPair> dev) {
  if (initial.empty()) throw ValidationError("initial corpus is empty");
  if (augmented.empty()) throw ValidationError("augmented corpus is empty");
  if (!options.epochs || *options.epochs < 1) {
    throw ValidationError("epochs must be given and positive");
  }
  if (!options.eval_every_steps || *options.eval_every_steps < 1) {
    throw ValidationError("eval_every_steps must be given and positive");
  }

  std::vector<preprocess::TrainingPair> merged(initial.begin(), initial.end());
  merged.insert(merged.end(), augmented.begin(), augmented.end());
  merged = shuffled(merged, options.shuffle_seed);

  const std::string data[3] = {preprocess::pairs_jsonl(initial),
                               preprocess::pairs_jsonl(augmented),
                               preprocess::pairs_jsonl(merged)};
  const std::size_t counts[3] = {initial.size(), augmented.size(),
                                 merged.size()};

  std::optional<std::string> dev_file;
  if (!dev.empty()) {
    text::write_file(outdir / "dev.jsonl", preprocess::pairs_jsonl(dev));
    dev_file = "dev.jsonl";
  }

  EmitResult result;
  for (int i = 0; i < 3; ++i) {
    const auto& spec = kStages[i];
    text::write_file(outdir / spec.data_file, data[i]);

    ojson m;
    m["schema_version"] = 1;
    m["stage"] = spec.stage;
    m["name"] = spec.name;
    m["data_files"] = {spec.data_file};
    m["data_sha256"] = {text::sha256_hex(data[i])};
    m["num_pairs"] = counts[i];
    m["init_from"] = spec.init_from ? ojson(spec.init_from) : ojson(nullptr);
    ojson hp;
    hp["batch_size"] = kBatchSize;
    hp["optimizer"] = "adam";
    hp["gradient_clip_norm"] = kGradientClipNorm;
    hp["learning_rate"] = spec.learning_rate;
    hp["max_steps"] = spec.max_steps ? ojson(*spec.max_steps) : ojson(nullptr);
    hp["epochs"] = *options.epochs;
    m["hyperparameters"] = hp;
    ojson ev;
    ev["metric"] = "bleu";
    ev["split"] = "dev";
    ev["data_file"] = dev_file ? ojson(*dev_file) : ojson(nullptr);
    ev["every_steps"] = *options.eval_every_steps;
    ev["select"] = "best";
    m["eval"] = ev;
    m["shuffle_seed"] = options.shuffle_seed;
    m["shuffled"] = spec.stage == 3;

    validate_manifest(m);
    auto path = outdir / ("stage" + std::to_string(spec.stage) + ".manifest.json");
    text::write_file(path, m.dump(2) + "\n");
    result.manifests[i] = path;
    result.pair_counts[i] = counts[i];
  }
  return result;
}

void validate_manifest(const nlohmann::json& m) {
  require(m.is_object(), "not an object");
  for (const char* key : {"schema_version", "stage", "name", "data_files",
                          "data_sha256", "num_pairs", "init_from",
                          "hyperparameters", "eval", "shuffle_seed",
                          "shuffled"}) {
    require(m.contains(key), std::string("missing \"") + key + "\"");
  }
  require(m["schema_version"] == 1, "unsupported schema_version");
  require(m["stage"].is_number_integer(), "stage must be an integer");
  const int stage = m["stage"].get<int>();
  require(stage >= 1 && stage <= 3, "stage must be 1, 2 or 3");
  const auto& spec = kStages[stage - 1];
  require(m["name"] == spec.name, "stage name mismatch");
  require(m["data_files"].is_array() && m["data_files"].size() == 1 &&
              m["data_files"][0] == spec.data_file,
          "unexpected data_files");
  require(m["data_sha256"].is_array() && m["data_sha256"].size() == 1,
          "data_sha256 must list one digest");
  require(m["num_pairs"].is_number_unsigned() && m["num_pairs"].get<std::size_t>() > 0,
          "num_pairs must be positive");

  const auto& hp = m["hyperparameters"];
  require(hp.is_object(), "hyperparameters must be an object");
  for (const char* key : {"batch_size", "optimizer", "gradient_clip_norm",
                          "learning_rate", "max_steps", "epochs"}) {
    require(hp.contains(key), std::string("missing hyperparameters.") + key);
  }
  require(hp["batch_size"] == kBatchSize, "batch_size must be 8");
  require(hp["optimizer"] == "adam", "optimizer must be adam");
  require(hp["gradient_clip_norm"] == kGradientClipNorm,
          "gradient_clip_norm must be 1.0");
  require(hp["learning_rate"].is_number() &&
              hp["learning_rate"].get<double>() == spec.learning_rate,
          "learning_rate does not match the stage");
  if (spec.max_steps) {
    require(hp["max_steps"] == *spec.max_steps, "max_steps must be 4000");
  } else {
    require(hp["max_steps"].is_null(), "max_steps must be null");
  }
  require(hp["epochs"].is_number_integer() && hp["epochs"].get<int>() > 0,
          "epochs must be a positive integer");

  const auto& ev = m["eval"];
  require(ev.is_object(), "eval must be an object");
  require(ev.value("metric", "") == "bleu", "eval.metric must be bleu");
  require(ev.value("split", "") == "dev", "eval.split must be dev");
  require(ev.contains("every_steps") && ev["every_steps"].is_number_integer() &&
              ev["every_steps"].get<int>() > 0,
          "eval.every_steps must be a positive integer");
  require(ev.contains("data_file"), "missing eval.data_file");
}

}  // namespace fcgen::trainprep
