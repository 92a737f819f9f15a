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

#include <string>
#include <string_view>
#include <vector>

#include "fcgen/config.hpp"
#include "json.hpp"

// Pipeline stages. Each reads its inputs from the config, writes only under
// config.out_dir, leaves a "<stage>.meta.json" with input/output digests,
// and returns a JSON summary.
namespace fcgen::pipeline {

struct StageResult {
  nlohmann::ordered_json summary;
  // False when the stage completed but found invalid input records.
  bool ok = true;
};

StageResult validate(const RunConfig& config);
StageResult preprocess(const RunConfig& config);
StageResult clip(const RunConfig& config);
StageResult augment_plan(const RunConfig& config);
StageResult augment_run(const RunConfig& config);
StageResult augment_import(const RunConfig& config);
StageResult build_lexicon(const RunConfig& config);
StageResult repair(const RunConfig& config);
StageResult emit_train(const RunConfig& config);
StageResult eval_bleu(const RunConfig& config);
StageResult eval_prf(const RunConfig& config);
StageResult report_pairs(const RunConfig& config);

const std::vector<std::string>& stage_names();
StageResult run_stage(std::string_view name, const RunConfig& config);

}  // namespace fcgen::pipeline
