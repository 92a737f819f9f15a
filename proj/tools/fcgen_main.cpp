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

// Command-line front end. Talks to the pipeline only through the C API.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fcgen/fcgen.h"

namespace {

struct Flag {
  const char* key;
  const char* help;
};

// Flags mirror the run-config keys; "--max-new-tokens" sets "max_new_tokens".
constexpr Flag kFlags[] = {
    {"train", "training corpus TSV"},
    {"dev", "development corpus TSV"},
    {"test", "test corpus TSV"},
    {"conllu", "CoNLL-U parses, one block per line of the training TSV"},
    {"augmented", "augmented corpus TSV (default: <out-dir>/augmented.tsv)"},
    {"lexicon", "term lexicon (default: <out-dir>/lexicon.txt)"},
    {"continuations", "offline continuations JSON-lines file"},
    {"generated", "generated comments, \"id<TAB>text\" per line"},
    {"outputs", "system outputs, \"id<TAB>text\" per line"},
    {"labels", "judgements, \"id<TAB>correct|incorrect|no_comment\" per line"},
    {"hyp", "hypotheses, \"id<TAB>text\" per line"},
    {"ref", "reference corpus TSV"},
    {"out_dir", "output directory (default: out)"},
    {"span_convention", "auto | zero-based-exclusive | one-based-inclusive"},
    {"endpoint", "generation service URL (also FCG_ENDPOINT)"},
    {"max_new_tokens", "generation length limit (default 40)"},
    {"temperature", "sampling temperature (default 0.9)"},
    {"seed", "generation seed (default 13)"},
    {"timeout_s", "per-request timeout in seconds (default 60)"},
    {"parallelism", "requests in flight (default 4)"},
    {"retries", "retries for transient failures (default 3)"},
    {"stub_distinct", "distinct continuations per prompt from the stub (default 10)"},
    {"stub_echo", "make the stub return this continuation verbatim"},
    {"group_skip", "skip samples whose feedback group has this many members (default 10)"},
    {"per_sample_min", "minimum augmented sentences per sample (default 8)"},
    {"per_sample_max", "maximum augmented sentences per sample (default 10)"},
    {"topup_rounds", "extra generation rounds for under-filled samples (default 3)"},
    {"shuffle_seed", "seed for shuffling merged training data (default 13)"},
    {"epochs", "epochs per training stage (required by emit-train)"},
    {"eval_every_steps", "dev BLEU cadence (required by emit-train)"},
    {"sample_id", "clip a single record (1-based line number)"},
};

const std::map<std::string, const char*> kStageHelp = {
    {"validate", "parse corpora, resolve spans, write rejects reports"},
    {"preprocess", "write marked-source / normalized-target pairs"},
    {"clip", "clip training sentences after the span's dependency neighbours"},
    {"augment-plan", "select samples and export generation prompts"},
    {"augment-run", "generate continuations and write the augmented corpus"},
    {"augment-import", "build the augmented corpus from offline continuations"},
    {"build-lexicon", "harvest grammar terms from train/dev comments"},
    {"repair", "restore missing opening brackets in generated comments"},
    {"emit-train", "write the three training-stage manifests and data"},
    {"eval-bleu", "corpus BLEU of hypotheses against reference comments"},
    {"eval-prf", "precision / recall / F1 from judgement labels"},
    {"report-pairs", "check outputs differ for the same sentence with different spans"},
};

int exit_code(fcg_status s) {
  switch (s) {
    case FCG_OK:
      return 0;
    case FCG_ERR_VALIDATION:
    case FCG_ERR_INVALID_ARGUMENT:
      return 1;
    default:
      return 2;
  }
}

std::string flag_name(const char* key) {
  std::string s = key;
  for (char& c : s) {
    if (c == '_') c = '-';
  }
  return "--" + s;
}

int report_failure(fcg_status s) {
  std::cerr << "fcgen: " << fcg_last_error() << "\n";
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fcgen: feedback comment generation data pipeline"};
  app.set_version_flag("--version", std::string(fcg_version()));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "JSON run config; flags override it");
  bool stub = false;
  app.add_flag("--stub-generator", stub,
               "use the deterministic scripted generator instead of HTTP");

  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
      ->capture_default_str();

  std::map<std::string, std::string> values;
  for (const auto& f : kFlags) {
    app.add_option(flag_name(f.key), values[f.key], f.help);
  }
  for (const auto& [name, help] : kStageHelp) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (auto s = fcg_set_log_level(log_level.c_str()); s != FCG_OK) {
    return report_failure(s);
  }
  fcg_config* config = nullptr;
  if (auto s = fcg_config_new(&config); s != FCG_OK) return report_failure(s);
  struct Guard {
    fcg_config* c;
    ~Guard() { fcg_config_free(c); }
  } guard{config};

  if (!config_path.empty()) {
    if (auto s = fcg_config_load_file(config, config_path.c_str()); s != FCG_OK) {
      return report_failure(s);
    }
  }
  for (const auto& f : kFlags) {
    if (app.count(flag_name(f.key)) == 0) continue;
    if (auto s = fcg_config_set(config, f.key, values[f.key].c_str()); s != FCG_OK) {
      return report_failure(s);
    }
  }
  if (stub) {
    if (auto s = fcg_config_set(config, "stub_generator", "true"); s != FCG_OK) {
      return report_failure(s);
    }
  }
  if (auto s = fcg_config_apply_environment(config); s != FCG_OK) {
    return report_failure(s);
  }

  const std::string stage = app.get_subcommands().front()->get_name();
  if (stage == "clip" && app.count("--sample-id")) {
    char* prefix = nullptr;
    auto s = fcg_clip_sample(config, std::stoull(values["sample_id"]), &prefix);
    if (s != FCG_OK) return report_failure(s);
    std::cout << prefix << "\n";
    fcg_string_free(prefix);
    return 0;
  }

  char* summary = nullptr;
  auto s = fcg_run_stage(config, stage.c_str(), &summary);
  if (summary) {
    std::cout << summary << "\n";
    fcg_string_free(summary);
  }
  if (s != FCG_OK) return report_failure(s);
  return 0;
}
