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

#include "fcgen/preprocess.hpp"

#include "fcgen/text.hpp"
#include "json.hpp"

namespace fcgen::preprocess {

bool is_bracket_token(std::string_view token) {
  return token == kOpenCitation || token == kCloseCitation ||
         token == kOpenTerm || token == kCloseTerm;
}

std::vector<std::string> comment_tokens(std::string_view comment) {
  std::string spaced;
  spaced.reserve(comment.size() + 16);
  std::size_t i = 0;
  while (i < comment.size()) {
    char c = comment[i];
    if (c == '<' || c == '>') {
      std::size_t run = 1;
      if (i + 1 < comment.size() && comment[i + 1] == c) run = 2;
      spaced += ' ';
      spaced.append(run, c);
      spaced += ' ';
      i += run;
    } else {
      spaced += c;
      ++i;
    }
  }
  return text::split_whitespace(text::lowercase(spaced));
}

std::string normalize_comment(std::string_view comment) {
  auto tokens = comment_tokens(comment);
  return text::join(tokens);
}

std::string MarkedSentence::str() const { return text::join(tokens); }

MarkedSentence mark_span(const corpus::Sample& sample,
                         const corpus::ResolvedSpan& span,
                         std::uint64_t origin) {
  auto tokens = text::split_whitespace(sample.text);
  if (span.token_start >= span.token_end || span.token_end > tokens.size()) {
    throw ValidationError("span [" + std::to_string(span.token_start) + "," +
                          std::to_string(span.token_end) +
                          ") out of range for " +
                          std::to_string(tokens.size()) + " tokens");
  }
  MarkedSentence m;
  m.origin = origin;
  m.tokens.reserve(tokens.size() + 2);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i == span.token_start) m.tokens.emplace_back(kOpenCitation);
    m.tokens.push_back(text::lowercase(tokens[i]));
    if (i + 1 == span.token_end) m.tokens.emplace_back(kCloseCitation);
  }
  return m;
}

std::vector<std::string> strip_markers(std::span<const std::string> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t != kOpenCitation && t != kCloseCitation) out.push_back(t);
  }
  return out;
}

std::string pairs_jsonl(std::span<const TrainingPair> pairs) {
  std::string out;
  for (const auto& p : pairs) {
    nlohmann::ordered_json j;
    j["source"] = p.source;
    j["target"] = p.target;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<TrainingPair> parse_pairs_jsonl(std::string_view content) {
  std::vector<TrainingPair> out;
  std::size_t line_no = 0;
  for (const auto& line : text::split_lines(content)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      out.push_back({j.at("source").get<std::string>(),
                     j.at("target").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("pairs line " + std::to_string(line_no) + ": " +
                            e.what());
    }
  }
  return out;
}

}  // namespace fcgen::preprocess
