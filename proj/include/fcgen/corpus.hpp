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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcgen/error.hpp"

// Reading and writing the tab-separated learner corpus
//
//     text \t start:end [\t comment]
//
// and mapping the character-offset span onto whitespace tokens.
namespace fcgen::corpus {

struct RawSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const RawSpan&) const = default;
};

struct Sample {
  std::string text;
  RawSpan raw_span;
  std::optional<std::string> comment;  // absent for test items

  bool operator==(const Sample&) const = default;
};

struct Token {
  std::string form;
  std::size_t index = 0;
  std::size_t char_start = 0;
  std::size_t char_end = 0;  // exclusive
};

enum class SpanConvention {
  kZeroBasedExclusive,  // [start, end)
  kOneBasedInclusive,   // [start - 1, end)
};

std::string_view to_string(SpanConvention c);
std::optional<SpanConvention> parse_convention(std::string_view name);

struct ResolvedSpan {
  std::size_t token_start = 0;
  std::size_t token_end = 0;  // exclusive
  SpanConvention convention = SpanConvention::kZeroBasedExclusive;

  std::size_t size() const { return token_end - token_start; }
  bool operator==(const ResolvedSpan&) const = default;
};

// A malformed corpus line. `line_no` is 1-based, 0 when unknown.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line_no, const std::string& reason);

  std::size_t line_no() const { return line_no_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_no_;
  std::string reason_;
};

enum class SpanFailure {
  kNoTokens,
  kNeitherAligns,
  kAmbiguous,
  kForcedMisaligned,
};

class SpanError : public ValidationError {
 public:
  SpanError(SpanFailure failure, const std::string& diagnostics);

  SpanFailure failure() const { return failure_; }

 private:
  SpanFailure failure_;
};

std::string_view to_string(SpanFailure f);

// Throws ParseError on a wrong field count, a non-numeric span or
// start > end.
Sample parse_line(std::string_view line, std::size_t line_no = 0);

// Inverse of parse_line. Throws ValidationError if the sample violates the
// record invariants (empty text, embedded tabs or newlines, start > end).
std::string write_line(const Sample& sample);

void validate(const Sample& sample);

std::vector<Token> tokenize(std::string_view text);

// Tries both offset conventions and returns the one that lands on token
// boundaries. With `forced`, only that convention is tried.
ResolvedSpan resolve_span(const Sample& sample,
                          std::optional<SpanConvention> forced = std::nullopt);
ResolvedSpan resolve_span(const Sample& sample, const std::vector<Token>& tokens,
                          std::optional<SpanConvention> forced = std::nullopt);

// Character span of tokens [token_start, token_end) expressed in `convention`.
RawSpan to_raw_span(const std::vector<Token>& tokens, std::size_t token_start,
                    std::size_t token_end, SpanConvention convention);

// Corpus record: ids are 1-based line numbers within the source file.
struct Record {
  std::uint64_t id = 0;
  Sample sample;
};

struct Reject {
  std::size_t line_no = 0;
  std::string reason;
};

struct LoadResult {
  std::vector<Record> records;
  std::vector<Reject> rejects;  // lines that failed to parse
  std::size_t line_count = 0;
};

LoadResult parse_corpus(const std::vector<std::string>& lines);
LoadResult read_corpus(const std::filesystem::path& path);

// JSON-lines rejects report: {"line_no": N, "reason": "..."} per line.
std::string rejects_jsonl(const std::vector<Reject>& rejects);

}  // namespace fcgen::corpus
