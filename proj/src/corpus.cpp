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

#include "fcgen/corpus.hpp"

#include <charconv>
#include <sstream>

#include "fcgen/text.hpp"
#include "json.hpp"

namespace fcgen::corpus {
namespace {

std::string with_line(std::size_t line_no, const std::string& reason) {
  if (line_no == 0) return reason;
  return "line " + std::to_string(line_no) + ": " + reason;
}

bool parse_size(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Token range whose characters are exactly [cs, ce), if any.
std::optional<std::pair<std::size_t, std::size_t>> align(
    const std::vector<Token>& tokens, std::size_t cs, std::size_t ce) {
  if (cs >= ce) return std::nullopt;
  std::optional<std::size_t> first;
  for (const auto& t : tokens) {
    if (t.char_start == cs) first = t.index;
    if (t.char_end == ce) {
      if (first) return std::make_pair(*first, t.index + 1);
      return std::nullopt;
    }
    if (t.char_end > ce) break;
  }
  return std::nullopt;
}

std::string describe(const Sample& s, SpanConvention c) {
  std::ostringstream os;
  std::size_t cs = c == SpanConvention::kZeroBasedExclusive
                       ? s.raw_span.start
                       : s.raw_span.start - 1;
  os << to_string(c) << " reads chars [" << cs << "," << s.raw_span.end
     << ")";
  if (s.raw_span.end <= s.text.size() && cs < s.raw_span.end) {
    os << " = \"" << s.text.substr(cs, s.raw_span.end - cs) << "\"";
  } else {
    os << " (out of range, text has " << s.text.size() << " chars)";
  }
  return os.str();
}

}  // namespace

std::string_view to_string(SpanConvention c) {
  switch (c) {
    case SpanConvention::kZeroBasedExclusive:
      return "zero-based-exclusive";
    case SpanConvention::kOneBasedInclusive:
      return "one-based-inclusive";
  }
  return "?";
}

std::optional<SpanConvention> parse_convention(std::string_view name) {
  if (name == "zero-based-exclusive") return SpanConvention::kZeroBasedExclusive;
  if (name == "one-based-inclusive") return SpanConvention::kOneBasedInclusive;
  return std::nullopt;
}

std::string_view to_string(SpanFailure f) {
  switch (f) {
    case SpanFailure::kNoTokens:
      return "no tokens";
    case SpanFailure::kNeitherAligns:
      return "span cuts a token under both conventions";
    case SpanFailure::kAmbiguous:
      return "both conventions align with different token spans";
    case SpanFailure::kForcedMisaligned:
      return "span does not align under the forced convention";
  }
  return "?";
}

ParseError::ParseError(std::size_t line_no, const std::string& reason)
    : ValidationError(with_line(line_no, reason)),
      line_no_(line_no),
      reason_(reason) {}

SpanError::SpanError(SpanFailure failure, const std::string& diagnostics)
    : ValidationError(std::string(to_string(failure)) +
                      (diagnostics.empty() ? "" : ": " + diagnostics)),
      failure_(failure) {}

Sample parse_line(std::string_view line, std::size_t line_no) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  auto fields = text::split(line, '\t');
  if (fields.size() != 2 && fields.size() != 3) {
    throw ParseError(line_no, "malformed field count: expected 2 or 3 "
                              "tab-separated fields, got " +
                                  std::to_string(fields.size()));
  }
  Sample s;
  s.text = std::string(fields[0]);
  if (text::trim(s.text).empty()) throw ParseError(line_no, "empty text");

  auto colon = fields[1].find(':');
  if (colon == std::string_view::npos ||
      !parse_size(fields[1].substr(0, colon), s.raw_span.start) ||
      !parse_size(fields[1].substr(colon + 1), s.raw_span.end)) {
    throw ParseError(line_no, "non-numeric span \"" + std::string(fields[1]) +
                                  "\", expected <int>:<int>");
  }
  // start == end is a one-character span under the one-based convention.
  if (s.raw_span.start > s.raw_span.end) {
    throw ParseError(line_no, "span start > end in \"" +
                                  std::string(fields[1]) + "\"");
  }
  if (fields.size() == 3) s.comment = std::string(fields[2]);
  return s;
}

void validate(const Sample& s) {
  auto bad = [](std::string_view v) {
    return v.find_first_of("\t\n") != std::string_view::npos;
  };
  if (text::trim(s.text).empty()) throw ValidationError("sample text is empty");
  if (bad(s.text)) throw ValidationError("sample text contains tab or newline");
  if (s.raw_span.start > s.raw_span.end) {
    throw ValidationError("sample span start > end");
  }
  if (s.comment && bad(*s.comment)) {
    throw ValidationError("comment contains tab or newline");
  }
}

std::string write_line(const Sample& s) {
  validate(s);
  std::string out = s.text;
  out += '\t';
  out += std::to_string(s.raw_span.start);
  out += ':';
  out += std::to_string(s.raw_span.end);
  if (s.comment) {
    out += '\t';
    out += *s.comment;
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (i < text.size()) {
    while (i < text.size() && space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !space(text[j])) ++j;
    if (j > i) {
      tokens.push_back(Token{std::string(text.substr(i, j - i)), tokens.size(),
                             i, j});
    }
    i = j;
  }
  return tokens;
}

ResolvedSpan resolve_span(const Sample& sample,
                          std::optional<SpanConvention> forced) {
  return resolve_span(sample, tokenize(sample.text), forced);
}

ResolvedSpan resolve_span(const Sample& sample, const std::vector<Token>& tokens,
                          std::optional<SpanConvention> forced) {
  if (tokens.empty()) throw SpanError(SpanFailure::kNoTokens, "");

  auto attempt = [&](SpanConvention c)
      -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::size_t end = sample.raw_span.end;
    std::size_t start = sample.raw_span.start;
    if (c == SpanConvention::kOneBasedInclusive) {
      if (start == 0) return std::nullopt;
      --start;
    }
    return align(tokens, start, end);
  };

  if (forced) {
    auto r = attempt(*forced);
    if (!r) throw SpanError(SpanFailure::kForcedMisaligned, describe(sample, *forced));
    return ResolvedSpan{r->first, r->second, *forced};
  }

  auto zero = attempt(SpanConvention::kZeroBasedExclusive);
  auto one = attempt(SpanConvention::kOneBasedInclusive);
  if (zero && one) {
    if (*zero == *one) {
      return ResolvedSpan{zero->first, zero->second,
                          SpanConvention::kZeroBasedExclusive};
    }
    throw SpanError(SpanFailure::kAmbiguous,
                    describe(sample, SpanConvention::kZeroBasedExclusive) +
                        "; " +
                        describe(sample, SpanConvention::kOneBasedInclusive));
  }
  if (zero) {
    return ResolvedSpan{zero->first, zero->second,
                        SpanConvention::kZeroBasedExclusive};
  }
  if (one) {
    return ResolvedSpan{one->first, one->second,
                        SpanConvention::kOneBasedInclusive};
  }
  std::string diag = describe(sample, SpanConvention::kZeroBasedExclusive);
  if (sample.raw_span.start > 0) {
    diag += "; " + describe(sample, SpanConvention::kOneBasedInclusive);
  }
  throw SpanError(SpanFailure::kNeitherAligns, diag);
}

RawSpan to_raw_span(const std::vector<Token>& tokens, std::size_t token_start,
                    std::size_t token_end, SpanConvention convention) {
  if (token_start >= token_end || token_end > tokens.size()) {
    throw ValidationError("token span out of range");
  }
  RawSpan r{tokens[token_start].char_start, tokens[token_end - 1].char_end};
  if (convention == SpanConvention::kOneBasedInclusive) ++r.start;
  return r;
}

LoadResult parse_corpus(const std::vector<std::string>& lines) {
  LoadResult out;
  out.line_count = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      out.records.push_back(Record{i + 1, parse_line(lines[i], i + 1)});
    } catch (const ParseError& e) {
      out.rejects.push_back(Reject{i + 1, e.reason()});
    }
  }
  return out;
}

LoadResult read_corpus(const std::filesystem::path& path) {
  return parse_corpus(text::read_lines(path));
}

std::string rejects_jsonl(const std::vector<Reject>& rejects) {
  std::string out;
  for (const auto& r : rejects) {
    nlohmann::ordered_json j;
    j["line_no"] = r.line_no;
    j["reason"] = r.reason;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace fcgen::corpus
