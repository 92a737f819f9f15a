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
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fcgen/corpus.hpp"
#include "json.hpp"

namespace fcgen::eval {

inline constexpr std::string_view kNoComment = "<NO_COMMENT>";
inline constexpr int kMaxOrder = 4;

struct BleuStats {
  std::array<std::size_t, kMaxOrder> matches{};  // clipped n-gram matches
  std::array<std::size_t, kMaxOrder> totals{};   // hypothesis n-grams
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
  double brevity_penalty = 0.0;
  double score = 0.0;
};

// Corpus-level BLEU-4: clipped n-gram counts summed over the corpus, uniform
// weights, brevity penalty on total lengths, no smoothing. Texts are split
// on whitespace. Throws ValidationError on empty input or length mismatch.
BleuStats corpus_bleu_stats(std::span<const std::string> hypotheses,
                            std::span<const std::string> references);
double corpus_bleu(std::span<const std::string> hypotheses,
                   std::span<const std::string> references);

enum class Label { kCorrect, kIncorrect, kNoComment };
std::optional<Label> parse_label(std::string_view s);
std::string_view to_string(Label l);

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::size_t no_comment = 0;
};

// NO_COMMENT items count only in the recall denominator.
PRF prf_scores(std::span<const Label> labels);

// Labels file: "id \t label" per line.
std::map<std::uint64_t, Label> parse_labels(std::string_view content);

// Output files: "id \t text" per line.
std::map<std::uint64_t, std::string> parse_outputs(std::string_view content);

struct PairGroup {
  std::string text;
  std::vector<std::uint64_t> ids;
  bool distinct = false;  // all outputs pairwise different
  std::size_t correct = 0;
  std::size_t labeled = 0;
};

struct PairReport {
  std::vector<PairGroup> groups;
  std::size_t groups_distinct = 0;
  std::size_t paired_items = 0;
  std::size_t paired_correct = 0;
  std::size_t paired_labeled = 0;
  std::vector<std::uint64_t> missing_outputs;
};

// Groups records by identical sentence text and checks, for every group of
// two or more, that the system produced a different output for each item.
PairReport paired_span_report(std::span<const corpus::Record> records,
                              const std::map<std::uint64_t, std::string>& outputs,
                              const std::map<std::uint64_t, Label>* labels = nullptr);

nlohmann::ordered_json to_json(const BleuStats& s);
nlohmann::ordered_json to_json(const PRF& p);
nlohmann::ordered_json to_json(const PairReport& r);

}  // namespace fcgen::eval
