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

#include "fcgen/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <functional>
#include <map>
#include <memory>

#include "fcgen/augment.hpp"
#include "fcgen/corpus.hpp"
#include "fcgen/eval.hpp"
#include "fcgen/genclient.hpp"
#include "fcgen/preprocess.hpp"
#include "fcgen/repair.hpp"
#include "fcgen/syntax.hpp"
#include "fcgen/text.hpp"
#include "fcgen/trainprep.hpp"

namespace fcgen::pipeline {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

// Tracks the files a stage reads and writes and emits its metadata record.
class StageContext {
 public:
  StageContext(const RunConfig& config, std::string stage)
      : config_(config), stage_(std::move(stage)) {
    config_.validate();
    std::error_code ec;
    fs::create_directories(config_.out_dir, ec);
    if (ec) throw IoError("cannot create output dir " + config_.out_dir.string());
  }

  const RunConfig& config() const { return config_; }

  std::string read(const fs::path& path) {
    auto content = text::read_file(path);
    ojson j;
    j["path"] = path.string();
    j["sha256"] = text::sha256_hex(content);
    inputs_.push_back(std::move(j));
    return content;
  }

  const fs::path& require(const std::optional<fs::path>& p, std::string_view key) {
    if (!p) {
      throw ValidationError("stage " + stage_ + " needs --" +
                            std::string(key));
    }
    return *p;
  }

  fs::path write(const fs::path& relative, std::string_view content) {
    auto path = config_.out_dir / relative;
    text::write_file(path, content);
    ojson j;
    j["path"] = relative.generic_string();
    j["sha256"] = text::sha256_hex(content);
    outputs_.push_back(std::move(j));
    return path;
  }

  StageResult finish(ojson summary, bool ok = true) {
    ojson meta;
    meta["tool"] = "fcgen";
    meta["version"] = FCGEN_VERSION;
    meta["stage"] = stage_;
    meta["config"] = config_.to_json();
    meta["inputs"] = inputs_;
    meta["outputs"] = outputs_;
    meta["summary"] = summary;
    text::write_file(config_.out_dir / (stage_ + ".meta.json"), meta.dump(2) + "\n");
    return StageResult{std::move(summary), ok};
  }

 private:
  const RunConfig& config_;
  std::string stage_;
  ojson inputs_ = ojson::array();
  ojson outputs_ = ojson::array();
};

struct Split {
  std::string name;
  corpus::LoadResult load;
  std::vector<std::optional<corpus::ResolvedSpan>> spans;  // per record
  std::vector<corpus::Reject> span_rejects;
  std::size_t roundtrip_mismatches = 0;

  std::vector<corpus::Reject> all_rejects() const {
    std::vector<corpus::Reject> out;
    for (const auto& r : load.rejects) {
      out.push_back({r.line_no, "malformed: " + r.reason});
    }
    out.insert(out.end(), span_rejects.begin(), span_rejects.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.line_no < b.line_no; });
    return out;
  }
};

Split load_split(StageContext& ctx, const std::string& name, const fs::path& path,
                 std::optional<corpus::SpanConvention> forced) {
  Split s;
  s.name = name;
  auto lines = text::split_lines(ctx.read(path));
  s.load = corpus::parse_corpus(lines);
  s.spans.reserve(s.load.records.size());
  for (const auto& rec : s.load.records) {
    if (corpus::write_line(rec.sample) != lines[rec.id - 1]) {
      ++s.roundtrip_mismatches;
    }
    try {
      s.spans.push_back(corpus::resolve_span(rec.sample, forced));
    } catch (const corpus::SpanError& e) {
      s.spans.push_back(std::nullopt);
      s.span_rejects.push_back({rec.id, std::string("span: ") + e.what()});
    }
  }
  return s;
}

ojson split_summary(const Split& s) {
  ojson j;
  j["lines"] = s.load.line_count;
  j["records"] = s.load.records.size();
  j["malformed"] = s.load.rejects.size();
  j["span_rejects"] = s.span_rejects.size();
  j["roundtrip_mismatches"] = s.roundtrip_mismatches;
  std::map<std::string, std::size_t> conv;
  for (const auto& sp : s.spans) {
    if (sp) ++conv[std::string(corpus::to_string(sp->convention))];
  }
  j["conventions"] = conv;
  return j;
}

std::vector<std::pair<std::string, fs::path>> corpus_splits(const RunConfig& c) {
  std::vector<std::pair<std::string, fs::path>> out;
  if (c.train) out.emplace_back("train", *c.train);
  if (c.dev) out.emplace_back("dev", *c.dev);
  if (c.test) out.emplace_back("test", *c.test);
  return out;
}

std::vector<preprocess::TrainingPair> training_pairs(const Split& s) {
  std::vector<preprocess::TrainingPair> pairs;
  for (std::size_t i = 0; i < s.load.records.size(); ++i) {
    const auto& rec = s.load.records[i];
    if (!s.spans[i] || !rec.sample.comment) continue;
    pairs.push_back({preprocess::mark_span(rec.sample, *s.spans[i], rec.id).str(),
                     preprocess::normalize_comment(*rec.sample.comment)});
  }
  return pairs;
}

// --- clipping and planning -------------------------------------------------

struct Skipped {
  std::uint64_t id;
  std::string reason;
};

struct TaskSet {
  std::vector<augment::SampleTask> tasks;
  std::vector<Skipped> skipped;
};

// Clip tasks for the records at `indices`. Records whose span does not
// resolve or whose parse does not line up are skipped, never force-aligned.
TaskSet build_tasks(const Split& train, const std::vector<std::string>& blocks,
                    const std::vector<std::size_t>& indices) {
  TaskSet out;
  for (auto i : indices) {
    const auto& rec = train.load.records[i];
    if (!train.spans[i]) {
      out.skipped.push_back({rec.id, "unresolved span"});
      continue;
    }
    if (!rec.sample.comment) {
      out.skipped.push_back({rec.id, "no comment"});
      continue;
    }
    if (rec.id - 1 >= blocks.size()) {
      out.skipped.push_back({rec.id, "no dependency parse for this line"});
      continue;
    }
    try {
      auto graph = syntax::parse_conllu(blocks[rec.id - 1]);
      auto tokens = text::split_whitespace(rec.sample.text);
      augment::SampleTask task;
      task.id = rec.id;
      task.span = *train.spans[i];
      task.comment = preprocess::normalize_comment(*rec.sample.comment);
      task.clip = syntax::clip(tokens, graph, task.span);
      out.tasks.push_back(std::move(task));
    } catch (const ValidationError& e) {
      spdlog::warn("sample {} skipped: {}", rec.id, e.what());
      out.skipped.push_back({rec.id, e.what()});
    }
  }
  return out;
}

std::string skipped_jsonl(const std::vector<Skipped>& skipped) {
  std::string out;
  for (const auto& s : skipped) {
    ojson j;
    j["id"] = s.id;
    j["reason"] = s.reason;
    out += j.dump() + "\n";
  }
  return out;
}

ojson clip_json(const augment::SampleTask& t) {
  ojson j;
  j["id"] = t.id;
  j["prefix"] = t.clip.prefix();
  j["cut_index"] = t.clip.cut_index;
  j["reason"] = std::string(syntax::to_string(t.clip.reason));
  return j;
}

struct Plan {
  ojson selection;
  TaskSet taskset;
};

Plan make_plan(StageContext& ctx) {
  const auto& cfg = ctx.config();
  auto train = load_split(ctx, "train", ctx.require(cfg.train, "train"),
                          cfg.span_convention);
  auto blocks = syntax::split_conllu_blocks(ctx.read(ctx.require(cfg.conllu, "conllu")));

  // Selection runs over every record carrying a comment.
  std::vector<std::size_t> with_comment;
  std::vector<std::string> comments;
  for (std::size_t i = 0; i < train.load.records.size(); ++i) {
    if (const auto& c = train.load.records[i].sample.comment) {
      with_comment.push_back(i);
      comments.push_back(preprocess::normalize_comment(*c));
    }
  }
  auto sel = augment::select_for_augmentation(comments, cfg.group_skip);
  std::vector<std::size_t> augment_idx;
  for (auto k : sel.augment) augment_idx.push_back(with_comment[k]);

  Plan plan;
  plan.taskset = build_tasks(train, blocks, augment_idx);

  ojson s;
  s["corpus_size"] = comments.size();
  s["group_skip"] = cfg.group_skip;
  s["augment"] = sel.augment.size();
  s["skip"] = sel.skip.size();
  s["signatures"] = sel.group_sizes.size();
  ojson hist = ojson::object();
  for (const auto& [size, groups] : augment::group_size_histogram(sel)) {
    hist[std::to_string(size)] = groups;
  }
  s["group_size_histogram"] = hist;
  s["below_4000"] = sel.augment.size() < 4000;
  s["tasks"] = plan.taskset.tasks.size();
  s["plan_skipped"] = plan.taskset.skipped.size();
  if (sel.augment.size() < 4000) {
    spdlog::warn("only {} of {} samples selected for augmentation",
                 sel.augment.size(), comments.size());
  }
  plan.selection = s;

  std::string plan_lines, prompt_lines;
  std::vector<gen::PromptPlan> prompts;
  for (const auto& t : plan.taskset.tasks) {
    ojson j = clip_json(t);
    j["n"] = cfg.per_sample_max;
    j["token_start"] = t.span.token_start;
    j["token_end"] = t.span.token_end;
    j["comment"] = t.comment;
    plan_lines += j.dump() + "\n";
    prompts.push_back({t.id, t.clip.prefix(), static_cast<int>(cfg.per_sample_max)});
  }
  ctx.write("selection.json", s.dump(2) + "\n");
  ctx.write("plan.jsonl", plan_lines);
  ctx.write("prompts.jsonl", gen::export_prompts(prompts));
  ctx.write("plan_skipped.jsonl", skipped_jsonl(plan.taskset.skipped));
  return plan;
}

std::vector<augment::SampleTask> read_plan(std::string_view content) {
  std::vector<augment::SampleTask> tasks;
  std::size_t line_no = 0;
  for (const auto& line : text::split_lines(content)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      augment::SampleTask t;
      t.id = j.at("id").get<std::uint64_t>();
      t.span.token_start = j.at("token_start").get<std::size_t>();
      t.span.token_end = j.at("token_end").get<std::size_t>();
      t.comment = j.at("comment").get<std::string>();
      t.clip.prefix_tokens = text::split_whitespace(j.at("prefix").get<std::string>());
      t.clip.cut_index = j.at("cut_index").get<std::size_t>();
      t.clip.reason = j.at("reason").get<std::string>() == "span-end-fallback"
                          ? syntax::ClipReason::kSpanEndFallback
                          : syntax::ClipReason::kLastConnectedWord;
      if (t.span.token_end > t.clip.prefix_tokens.size() ||
          t.span.token_start >= t.span.token_end) {
        throw ValidationError("span outside prefix");
      }
      tasks.push_back(std::move(t));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("plan line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("plan line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return tasks;
}

augment::AssembleParams assemble_params(const RunConfig& c) {
  return {c.per_sample_min, c.per_sample_max, c.topup_rounds};
}

// Writes augmented.tsv, its sidecar and the per-sample report.
ojson write_augmented(StageContext& ctx, const std::vector<augment::SampleOutcome>& outcomes,
                      const std::string& mode, ojson extra_counts) {
  const auto& cfg = ctx.config();
  std::string tsv, report;
  std::size_t total = 0, underfilled = 0;
  std::string model_id;
  for (const auto& o : outcomes) {
    if (!o.model_id.empty()) model_id = o.model_id;
    for (const auto& s : o.samples) {
      tsv += corpus::write_line(s.to_sample()) + "\n";
    }
    total += o.samples.size();
    if (o.underfilled) ++underfilled;
    ojson j;
    j["id"] = o.id;
    j["augmented"] = o.samples.size();
    j["requests"] = o.requests;
    j["raw_continuations"] = o.raw_continuations;
    j["rejected"] = o.rejected;
    j["underfilled"] = o.underfilled;
    report += j.dump() + "\n";
  }
  ctx.write("augmented.tsv", tsv);
  ctx.write("augment_report.jsonl", report);

  ojson counts = std::move(extra_counts);
  counts["samples_augmented"] = outcomes.size();
  counts["augmented_total"] = total;
  counts["underfilled"] = underfilled;

  ojson sidecar;
  sidecar["format"] = "text \\t start:end \\t comment";
  sidecar["span_convention"] =
      std::string(corpus::to_string(corpus::SpanConvention::kZeroBasedExclusive));
  sidecar["model_id"] = model_id;
  sidecar["generation"] = {{"mode", mode},
                           {"max_new_tokens", cfg.max_new_tokens},
                           {"temperature", cfg.temperature},
                           {"seed", cfg.seed}};
  sidecar["thresholds"] = {{"group_skip", cfg.group_skip},
                           {"per_sample_min", cfg.per_sample_min},
                           {"per_sample_max", cfg.per_sample_max},
                           {"topup_rounds", cfg.topup_rounds}};
  sidecar["counts"] = counts;
  ctx.write("augmented.meta.json", sidecar.dump(2) + "\n");
  return counts;
}

std::map<std::uint64_t, std::vector<std::string>> learner_tokens_by_id(const Split& s) {
  std::map<std::uint64_t, std::vector<std::string>> out;
  for (const auto& r : s.load.records) {
    out[r.id] = text::split_whitespace(r.sample.text);
  }
  return out;
}

}  // namespace

StageResult validate(const RunConfig& config) {
  StageContext ctx(config, "validate");
  auto splits = corpus_splits(config);
  if (splits.empty()) throw ValidationError("validate needs --train, --dev or --test");
  ojson summary;
  bool ok = true;
  for (const auto& [name, path] : splits) {
    auto s = load_split(ctx, name, path, config.span_convention);
    ctx.write("rejects." + name + ".jsonl", corpus::rejects_jsonl(s.all_rejects()));
    summary[name] = split_summary(s);
    if (!s.load.rejects.empty() || s.roundtrip_mismatches) ok = false;
  }
  return ctx.finish(summary, ok);
}

StageResult preprocess(const RunConfig& config) {
  StageContext ctx(config, "preprocess");
  auto splits = corpus_splits(config);
  if (splits.empty()) throw ValidationError("preprocess needs --train, --dev or --test");
  ojson summary;
  for (const auto& [name, path] : splits) {
    auto s = load_split(ctx, name, path, config.span_convention);
    ctx.write("rejects." + name + ".jsonl", corpus::rejects_jsonl(s.all_rejects()));
    ojson j = split_summary(s);
    if (name == "test") {
      std::string lines;
      std::size_t n = 0;
      for (std::size_t i = 0; i < s.load.records.size(); ++i) {
        if (!s.spans[i]) continue;
        const auto& rec = s.load.records[i];
        ojson line;
        line["id"] = rec.id;
        line["source"] = preprocess::mark_span(rec.sample, *s.spans[i], rec.id).str();
        lines += line.dump() + "\n";
        ++n;
      }
      ctx.write("preprocessed/test.jsonl", lines);
      j["emitted"] = n;
    } else {
      auto pairs = training_pairs(s);
      ctx.write("preprocessed/" + name + ".jsonl", preprocess::pairs_jsonl(pairs));
      j["emitted"] = pairs.size();
    }
    summary[name] = j;
  }
  return ctx.finish(summary);
}

StageResult clip(const RunConfig& config) {
  StageContext ctx(config, "clip");
  auto train = load_split(ctx, "train", ctx.require(config.train, "train"),
                          config.span_convention);
  auto blocks =
      syntax::split_conllu_blocks(ctx.read(ctx.require(config.conllu, "conllu")));

  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < train.load.records.size(); ++i) {
    if (!config.sample_id || train.load.records[i].id == *config.sample_id) {
      indices.push_back(i);
    }
  }
  if (config.sample_id && indices.empty()) {
    throw ValidationError("no record with id " + std::to_string(*config.sample_id));
  }
  auto set = build_tasks(train, blocks, indices);

  ojson summary;
  if (config.sample_id) {
    if (set.tasks.empty()) {
      throw ValidationError("sample " + std::to_string(*config.sample_id) +
                            " cannot be clipped: " + set.skipped.front().reason);
    }
    summary = clip_json(set.tasks.front());
    return ctx.finish(summary);
  }
  std::string lines;
  for (const auto& t : set.tasks) lines += clip_json(t).dump() + "\n";
  ctx.write("clips.jsonl", lines);
  ctx.write("clip_skipped.jsonl", skipped_jsonl(set.skipped));
  summary["clipped"] = set.tasks.size();
  summary["skipped"] = set.skipped.size();
  return ctx.finish(summary);
}

StageResult augment_plan(const RunConfig& config) {
  StageContext ctx(config, "augment-plan");
  auto plan = make_plan(ctx);
  return ctx.finish(plan.selection);
}

StageResult augment_run(const RunConfig& config) {
  StageContext ctx(config, "augment-run");
  auto plan = make_plan(ctx);

  std::unique_ptr<gen::Generator> generator;
  std::string mode;
  if (config.stub_generator) {
    gen::StubOptions opts;
    opts.distinct = config.stub_distinct;
    opts.echo = config.stub_echo;
    generator = std::make_unique<gen::StubGenerator>(opts);
    mode = "stub";
  } else {
    if (config.endpoint.empty()) {
      throw ValidationError("augment-run needs --endpoint, " +
                            std::string(kEndpointEnvVar) +
                            " or --stub-generator");
    }
    auto log_path = config.out_dir / "generation.log.jsonl";
    text::write_file(log_path, "");
    gen::HttpOptions opts;
    opts.endpoint = config.endpoint;
    opts.retries = config.retries;
    opts.timeout = std::chrono::seconds(config.timeout_s);
    generator = std::make_unique<gen::HttpGenerator>(
        opts, std::make_shared<gen::GenerationLog>(log_path));
    mode = "http";
  }

  augment::GenerationParams gp{config.max_new_tokens, config.temperature, config.seed};
  auto outcomes = augment::augment_all(plan.taskset.tasks, *generator, gp,
                                       assemble_params(config),
                                       static_cast<std::size_t>(config.parallelism));
  ojson counts;
  counts["augmentable"] = plan.selection["augment"];
  counts["plan_skipped"] = plan.taskset.skipped.size();
  auto summary = plan.selection;
  summary["augmentation"] = write_augmented(ctx, outcomes, mode, counts);
  return ctx.finish(summary);
}

StageResult augment_import(const RunConfig& config) {
  StageContext ctx(config, "augment-import");
  auto plan_path = config.out_dir / "plan.jsonl";
  if (!fs::exists(plan_path)) {
    throw ValidationError("augment-import needs " + plan_path.string() +
                          " from augment-plan");
  }
  auto tasks = read_plan(ctx.read(plan_path));
  std::vector<gen::PromptPlan> prompts;
  for (const auto& t : tasks) {
    prompts.push_back({t.id, t.clip.prefix(), static_cast<int>(config.per_sample_max)});
  }
  auto imported = gen::import_continuations(
      ctx.read(ctx.require(config.continuations, "continuations")), prompts);

  std::vector<augment::SampleOutcome> outcomes;
  for (const auto& t : tasks) {
    auto it = imported.responses.find(t.id);
    if (it == imported.responses.end()) continue;
    auto o = augment::augment_from_continuations(t, it->second.continuations,
                                                 config.max_new_tokens,
                                                 assemble_params(config));
    o.model_id = it->second.model_id;
    outcomes.push_back(std::move(o));
  }
  std::string missing;
  for (auto id : imported.missing) {
    ojson j;
    j["id"] = id;
    j["reason"] = "no continuations returned";
    missing += j.dump() + "\n";
  }
  ctx.write("missing.jsonl", missing);
  ojson counts;
  counts["planned"] = tasks.size();
  counts["answered"] = imported.responses.size();
  counts["missing"] = imported.missing.size();
  ojson summary;
  summary["augmentation"] = write_augmented(ctx, outcomes, "offline", counts);
  return ctx.finish(summary);
}

StageResult build_lexicon(const RunConfig& config) {
  StageContext ctx(config, "build-lexicon");
  std::vector<std::string> comments;
  ojson summary;
  for (const auto& [name, path] : corpus_splits(config)) {
    if (name == "test") continue;
    auto load = corpus::parse_corpus(text::split_lines(ctx.read(path)));
    std::size_t n = 0;
    for (const auto& r : load.records) {
      if (r.sample.comment) {
        comments.push_back(preprocess::normalize_comment(*r.sample.comment));
        ++n;
      }
    }
    summary["comments_" + name] = n;
  }
  if (comments.empty()) throw ValidationError("build-lexicon needs --train and/or --dev");
  std::vector<std::string> warnings;
  auto lex = repair::TermLexicon::build(comments, &warnings);
  ctx.write("lexicon.txt", lex.serialize());
  std::string w;
  for (const auto& s : warnings) w += ojson({{"warning", s}}).dump() + "\n";
  ctx.write("lexicon_warnings.jsonl", w);
  summary["terms"] = lex.size();
  summary["max_term_tokens"] = lex.max_term_tokens();
  summary["warnings"] = warnings.size();
  return ctx.finish(summary);
}

StageResult repair(const RunConfig& config) {
  StageContext ctx(config, "repair");
  auto generated = eval::parse_outputs(ctx.read(ctx.require(config.generated, "generated")));
  auto test = corpus::parse_corpus(
      text::split_lines(ctx.read(ctx.require(config.test, "test"))));
  auto learners = learner_tokens_by_id(Split{"test", test, {}, {}, 0});

  fs::path lex_path = config.lexicon ? *config.lexicon : config.out_dir / "lexicon.txt";
  if (!fs::exists(lex_path)) {
    throw ValidationError("repair needs --lexicon or a lexicon.txt from build-lexicon");
  }
  ctx.read(lex_path);
  auto lex = repair::TermLexicon::read(lex_path);

  std::string repaired, report;
  std::size_t fixed = 0, unresolved = 0;
  for (const auto& [id, out] : generated) {
    auto it = learners.find(id);
    if (it == learners.end()) {
      throw ValidationError("generated id " + std::to_string(id) +
                            " has no learner sentence in the test file");
    }
    auto r = repair::repair_comment(out, it->second, lex);
    repaired += std::to_string(id) + "\t" + r.text + "\n";
    report += repair::report_line(id, r) + "\n";
    fixed += r.fixes.size();
    unresolved += r.unresolved.size();
  }
  ctx.write("repaired.tsv", repaired);
  ctx.write("repair_report.jsonl", report);
  ojson summary;
  summary["comments"] = generated.size();
  summary["brackets_inserted"] = fixed;
  summary["unresolved"] = unresolved;
  return ctx.finish(summary);
}

StageResult emit_train(const RunConfig& config) {
  StageContext ctx(config, "emit-train");
  auto train = load_split(ctx, "train", ctx.require(config.train, "train"),
                          config.span_convention);
  fs::path aug_path =
      config.augmented ? *config.augmented : config.out_dir / "augmented.tsv";
  if (!fs::exists(aug_path)) {
    throw ValidationError("emit-train needs --augmented or an augmented.tsv from augment-run");
  }
  auto augmented = load_split(ctx, "augmented", aug_path,
                              corpus::SpanConvention::kZeroBasedExclusive);
  std::vector<preprocess::TrainingPair> dev_pairs;
  if (config.dev) {
    dev_pairs = training_pairs(load_split(ctx, "dev", *config.dev, config.span_convention));
  }
  auto initial_pairs = training_pairs(train);
  auto aug_pairs = training_pairs(augmented);

  trainprep::EmitOptions opts;
  opts.shuffle_seed = config.shuffle_seed;
  opts.epochs = config.epochs;
  opts.eval_every_steps = config.eval_every_steps;
  auto outdir = config.out_dir / "train";
  auto result = trainprep::emit_manifests(initial_pairs, aug_pairs, outdir, opts, dev_pairs);

  ojson summary;
  for (int i = 0; i < 3; ++i) {
    // Record outputs relative to out_dir for the metadata.
    auto rel = fs::relative(result.manifests[i], config.out_dir);
    ctx.write(rel, text::read_file(result.manifests[i]));
    summary["stage" + std::to_string(i + 1) + "_pairs"] = result.pair_counts[i];
  }
  summary["dev_pairs"] = dev_pairs.size();
  summary["augmented_rejects"] = augmented.all_rejects().size();
  return ctx.finish(summary);
}

StageResult eval_bleu(const RunConfig& config) {
  StageContext ctx(config, "eval-bleu");
  auto hyps = eval::parse_outputs(ctx.read(ctx.require(config.hyp, "hyp")));
  auto refs = corpus::parse_corpus(
      text::split_lines(ctx.read(ctx.require(config.ref, "ref"))));
  if (!refs.rejects.empty()) {
    throw ValidationError("reference file has malformed line " +
                          std::to_string(refs.rejects.front().line_no));
  }
  std::vector<std::string> h, r;
  for (const auto& rec : refs.records) {
    if (!rec.sample.comment) continue;
    auto it = hyps.find(rec.id);
    if (it == hyps.end()) {
      throw ValidationError("no hypothesis for reference id " + std::to_string(rec.id));
    }
    h.push_back(preprocess::normalize_comment(it->second));
    r.push_back(preprocess::normalize_comment(*rec.sample.comment));
  }
  auto stats = eval::corpus_bleu_stats(h, r);
  auto summary = eval::to_json(stats);
  summary["items"] = h.size();
  ctx.write("bleu.json", summary.dump(2) + "\n");
  return ctx.finish(summary);
}

StageResult eval_prf(const RunConfig& config) {
  StageContext ctx(config, "eval-prf");
  auto labels = eval::parse_labels(ctx.read(ctx.require(config.labels, "labels")));
  std::vector<eval::Label> v;
  for (const auto& [id, l] : labels) v.push_back(l);
  auto summary = eval::to_json(eval::prf_scores(v));
  ctx.write("prf.json", summary.dump(2) + "\n");
  return ctx.finish(summary);
}

StageResult report_pairs(const RunConfig& config) {
  StageContext ctx(config, "report-pairs");
  auto test = corpus::parse_corpus(
      text::split_lines(ctx.read(ctx.require(config.test, "test"))));
  auto outputs = eval::parse_outputs(ctx.read(ctx.require(config.outputs, "outputs")));
  std::optional<std::map<std::uint64_t, eval::Label>> labels;
  if (config.labels) labels = eval::parse_labels(ctx.read(*config.labels));
  auto report = eval::paired_span_report(test.records, outputs,
                                         labels ? &*labels : nullptr);
  auto summary = eval::to_json(report);
  ctx.write("pairs.json", summary.dump(2) + "\n");
  summary.erase("groups");
  return ctx.finish(summary);
}

const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names = {
      "validate",      "preprocess", "clip",       "augment-plan",
      "augment-run",   "augment-import", "build-lexicon", "repair",
      "emit-train",    "eval-bleu",  "eval-prf",   "report-pairs"};
  return names;
}

StageResult run_stage(std::string_view name, const RunConfig& config) {
  static const std::map<std::string, std::function<StageResult(const RunConfig&)>,
                        std::less<>>
      table = {{"validate", validate},
               {"preprocess", preprocess},
               {"clip", clip},
               {"augment-plan", augment_plan},
               {"augment-run", augment_run},
               {"augment-import", augment_import},
               {"build-lexicon", build_lexicon},
               {"repair", repair},
               {"emit-train", emit_train},
               {"eval-bleu", eval_bleu},
               {"eval-prf", eval_prf},
               {"report-pairs", report_pairs}};
  auto it = table.find(name);
  if (it == table.end()) {
    throw ValidationError("unknown stage \"" + std::string(name) + "\"");
  }
  return it->second(config);
}

}  // namespace fcgen::pipeline
