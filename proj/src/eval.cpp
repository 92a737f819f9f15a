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

#include "fcgen/eval.hpp"

#include <cmath>
#include <set>
#include <unordered_map>

#include "fcgen/text.hpp"

namespace fcgen::eval {
namespace {

using NgramCounts = std::unordered_map<std::string, std::size_t>;

// n-grams keyed by their tokens joined with a separator that cannot occur
// inside a whitespace token.
NgramCounts count_ngrams(const std::vector<std::string>& tokens, int n) {
  NgramCounts counts;
  if (tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key += ' ';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

bool parse_id(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  out = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    out = out * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return true;
}

double safe_div(double a, double b) { return b == 0.0 ? 0.0 : a / b; }

}  // namespace

BleuStats corpus_bleu_stats(std::span<const std::string> hypotheses,
                            std::span<const std::string> references) {
  if (hypotheses.size() != references.size()) {
    throw ValidationError("BLEU: " + std::to_string(hypotheses.size()) +
                          " hypotheses vs " + std::to_string(references.size()) +
                          " references");
  }
  if (hypotheses.empty()) throw ValidationError("BLEU: empty corpus");

  BleuStats s;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    auto hyp = text::split_whitespace(hypotheses[i]);
    auto ref = text::split_whitespace(references[i]);
    s.hyp_length += hyp.size();
    s.ref_length += ref.size();
    for (int n = 1; n <= kMaxOrder; ++n) {
      auto h = count_ngrams(hyp, n);
      auto r = count_ngrams(ref, n);
      for (const auto& [gram, count] : h) {
        s.totals[n - 1] += count;
        auto it = r.find(gram);
        if (it != r.end()) s.matches[n - 1] += std::min(count, it->second);
      }
    }
  }

  if (s.hyp_length == 0) {
    s.brevity_penalty = 0.0;
    s.score = 0.0;
    return s;
  }
  s.brevity_penalty =
      s.hyp_length > s.ref_length
          ? 1.0
          : std::exp(1.0 - static_cast<double>(s.ref_length) /
                               static_cast<double>(s.hyp_length));
  double log_sum = 0.0;
  for (int n = 0; n < kMaxOrder; ++n) {
    if (s.matches[n] == 0 || s.totals[n] == 0) {
      s.score = 0.0;
      return s;
    }
    log_sum += std::log(static_cast<double>(s.matches[n]) /
                        static_cast<double>(s.totals[n]));
  }
  s.score = s.brevity_penalty * std::exp(log_sum / kMaxOrder);
  return s;
}

double corpus_bleu(std::span<const std::string> hypotheses,
                   std::span<const std::string> references) {
  return corpus_bleu_stats(hypotheses, references).score;
}

std::optional<Label> parse_label(std::string_view s) {
  auto t = text::lowercase(text::trim(s));
  if (t == "correct") return Label::kCorrect;
  if (t == "incorrect") return Label::kIncorrect;
  if (t == "no_comment" || t == text::lowercase(kNoComment)) return Label::kNoComment;
  return std::nullopt;
}

std::string_view to_string(Label l) {
  switch (l) {
    case Label::kCorrect:
      return "correct";
    case Label::kIncorrect:
      return "incorrect";
    case Label::kNoComment:
      return "no_comment";
  }
  return "?";
}

PRF prf_scores(std::span<const Label> labels) {
  if (labels.empty()) throw ValidationError("PRF: no labels");
  PRF p;
  for (auto l : labels) {
    switch (l) {
      case Label::kCorrect: ++p.correct; break;
      case Label::kIncorrect: ++p.incorrect; break;
      case Label::kNoComment: ++p.no_comment; break;
    }
  }
  const double c = static_cast<double>(p.correct);
  const double answered = static_cast<double>(p.correct + p.incorrect);
  const double all = answered + static_cast<double>(p.no_comment);
  p.precision = safe_div(c, answered);
  p.recall = safe_div(c, all);
  // Harmonic mean of P and R written over counts, 2C / (answered + all):
  // one rounding step, so with no NO_COMMENT items F1 equals P bit for bit.
  p.f1 = safe_div(2.0 * c, answered + all);
  return p;
}

std::map<std::uint64_t, Label> parse_labels(std::string_view content) {
  std::map<std::uint64_t, Label> out;
  std::size_t line_no = 0;
  for (const auto& line : text::split_lines(content)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto where = "labels line " + std::to_string(line_no) + ": ";
    auto fields = text::split(line, '\t');
    std::uint64_t id = 0;
    if (fields.size() != 2 || !parse_id(text::trim(fields[0]), id)) {
      throw ValidationError(where + "expected \"id\\tlabel\"");
    }
    auto label = parse_label(fields[1]);
    if (!label) {
      throw ValidationError(where + "unknown label \"" + std::string(fields[1]) + "\"");
    }
    if (!out.emplace(id, *label).second) {
      throw ValidationError(where + "duplicate id " + std::to_string(id));
    }
  }
  return out;
}

std::map<std::uint64_t, std::string> parse_outputs(std::string_view content) {
  std::map<std::uint64_t, std::string> out;
  std::size_t line_no = 0;
  for (const auto& line : text::split_lines(content)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto where = "outputs line " + std::to_string(line_no) + ": ";
    auto tab = line.find('\t');
    std::uint64_t id = 0;
    if (tab == std::string::npos ||
        !parse_id(text::trim(std::string_view(line).substr(0, tab)), id)) {
      throw ValidationError(where + "expected \"id\\ttext\"");
    }
    if (!out.emplace(id, line.substr(tab + 1)).second) {
      throw ValidationError(where + "duplicate id " + std::to_string(id));
    }
  }
  return out;
}

PairReport paired_span_report(std::span<const corpus::Record> records,
                              const std::map<std::uint64_t, std::string>& outputs,
                              const std::map<std::uint64_t, Label>* labels) {
  std::map<std::string, std::vector<std::uint64_t>> by_text;
  std::vector<std::string> order;
  for (const auto& r : records) {
    auto key = text::collapse_whitespace(r.sample.text);
    auto [it, inserted] = by_text.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r.id);
  }

  PairReport report;
  for (const auto& key : order) {
    const auto& ids = by_text[key];
    if (ids.size() < 2) continue;
    PairGroup g;
    g.text = key;
    g.ids = ids;
    std::set<std::string> seen;
    bool all_present = true;
    for (auto id : ids) {
      auto it = outputs.find(id);
      if (it == outputs.end()) {
        all_present = false;
        report.missing_outputs.push_back(id);
        continue;
      }
      seen.insert(text::collapse_whitespace(it->second));
      if (labels) {
        auto l = labels->find(id);
        if (l != labels->end()) {
          ++g.labeled;
          if (l->second == Label::kCorrect) ++g.correct;
        }
      }
    }
    g.distinct = all_present && seen.size() == ids.size();
    report.paired_items += ids.size();
    report.paired_correct += g.correct;
    report.paired_labeled += g.labeled;
    if (g.distinct) ++report.groups_distinct;
    report.groups.push_back(std::move(g));
  }
  return report;
}

nlohmann::ordered_json to_json(const BleuStats& s) {
  nlohmann::ordered_json j;
  j["bleu"] = s.score;
  j["brevity_penalty"] = s.brevity_penalty;
  j["hyp_length"] = s.hyp_length;
  j["ref_length"] = s.ref_length;
  j["matches"] = s.matches;
  j["totals"] = s.totals;
  return j;
}

nlohmann::ordered_json to_json(const PRF& p) {
  nlohmann::ordered_json j;
  j["precision"] = p.precision;
  j["recall"] = p.recall;
  j["f1"] = p.f1;
  j["counts"] = {{"correct", p.correct},
                 {"incorrect", p.incorrect},
                 {"no_comment", p.no_comment}};
  return j;
}

nlohmann::ordered_json to_json(const PairReport& r) {
  nlohmann::ordered_json j;
  j["groups_total"] = r.groups.size();
  j["groups_distinct"] = r.groups_distinct;
  j["paired_items"] = r.paired_items;
  j["paired_labeled"] = r.paired_labeled;
  j["paired_correct"] = r.paired_correct;
  j["missing_outputs"] = r.missing_outputs;
  j["groups"] = nlohmann::ordered_json::array();
  for (const auto& g : r.groups) {
    nlohmann::ordered_json gj;
    gj["text"] = g.text;
    gj["ids"] = g.ids;
    gj["distinct"] = g.distinct;
    gj["labeled"] = g.labeled;
    gj["correct"] = g.correct;
    j["groups"].push_back(gj);
  }
  return j;
}

}  // namespace fcgen::eval
