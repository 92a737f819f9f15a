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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fcgen/corpus.hpp"

namespace fcgen::preprocess {

inline constexpr std::string_view kOpenCitation = "<<";
inline constexpr std::string_view kCloseCitation = ">>";
inline constexpr std::string_view kOpenTerm = "<";
inline constexpr std::string_view kCloseTerm = ">";

bool is_bracket_token(std::string_view token);

// Lowercases and isolates bracket symbols as their own tokens. Runs of
// angle brackets are consumed greedily in pairs, so "<<x>>" becomes
// "<< x >>" and "<x>" becomes "< x >". Everything else is left alone apart
// from whitespace collapsing. Idempotent.
std::string normalize_comment(std::string_view comment);
std::vector<std::string> comment_tokens(std::string_view comment);

// Learner sentence with the error span wrapped in "<<" ... ">>" tokens.
struct MarkedSentence {
  std::vector<std::string> tokens;
  std::uint64_t origin = 0;  // id of the source record

  std::string str() const;
};

MarkedSentence mark_span(const corpus::Sample& sample,
                         const corpus::ResolvedSpan& span,
                         std::uint64_t origin = 0);

std::vector<std::string> strip_markers(std::span<const std::string> tokens);

struct TrainingPair {
  std::string source;
  std::string target;

  bool operator==(const TrainingPair&) const = default;
};

// {"source": ..., "target": ...} per line.
std::string pairs_jsonl(std::span<const TrainingPair> pairs);
std::vector<TrainingPair> parse_pairs_jsonl(std::string_view content);

}  // namespace fcgen::preprocess
