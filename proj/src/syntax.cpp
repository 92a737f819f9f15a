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

#include "fcgen/syntax.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "fcgen/text.hpp"

namespace fcgen::syntax {
namespace {

std::optional<long> parse_int(std::string_view s) {
  long v = 0;
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

DepGraph parse_conllu(std::string_view block) {
  DepGraph g;
  std::vector<long> raw_heads;
  std::size_t row = 0;
  for (const auto& line : text::split_lines(block)) {
    ++row;
    if (text::trim(line).empty()) continue;
    if (line[0] == '#') {
      std::string_view l(line);
      constexpr std::string_view kText = "# text = ";
      if (l.substr(0, kText.size()) == kText) {
        g.text = std::string(l.substr(kText.size()));
      }
      continue;
    }
    auto cols = text::split(line, '\t');
    auto where = "conllu row " + std::to_string(row) + ": ";
    if (cols.size() != 10) {
      throw ValidationError(where + "expected 10 columns, got " +
                            std::to_string(cols.size()));
    }
    // Multiword token ranges ("3-4") and empty nodes ("3.1").
    if (cols[0].find_first_of("-.") != std::string_view::npos) continue;
    auto id = parse_int(cols[0]);
    if (!id) throw ValidationError(where + "non-integer ID \"" + std::string(cols[0]) + "\"");
    if (*id != static_cast<long>(g.forms.size()) + 1) {
      throw ValidationError(where + "ID " + std::to_string(*id) +
                            " out of sequence");
    }
    auto head = parse_int(cols[6]);
    if (!head) throw ValidationError(where + "non-integer HEAD \"" + std::string(cols[6]) + "\"");
    g.forms.emplace_back(cols[1]);
    g.rels.emplace_back(cols[7]);
    raw_heads.push_back(*head);
  }
  if (g.forms.empty()) throw ValidationError("conllu block has no tokens");

  const long n = static_cast<long>(g.forms.size());
  bool has_root = false;
  g.heads.reserve(raw_heads.size());
  for (long i = 0; i < n; ++i) {
    long h = raw_heads[i];
    if (h < 0 || h > n) {
      throw ValidationError("conllu token " + std::to_string(i + 1) +
                            ": head " + std::to_string(h) + " out of range");
    }
    if (h == i + 1) {
      throw ValidationError("conllu token " + std::to_string(i + 1) +
                            ": self-loop");
    }
    if (h == 0) {
      has_root = true;
      g.heads.push_back(kRoot);
    } else {
      g.heads.push_back(static_cast<std::size_t>(h - 1));
    }
  }
  if (!has_root) throw ValidationError("conllu block has no root");
  return g;
}

std::vector<std::string> split_conllu_blocks(std::string_view content) {
  std::vector<std::string> blocks;
  std::string current;
  for (const auto& line : text::split_lines(content)) {
    if (text::trim(line).empty()) {
      if (!current.empty()) blocks.push_back(std::move(current));
      current.clear();
      continue;
    }
    current += line;
    current += '\n';
  }
  if (!current.empty()) blocks.push_back(std::move(current));
  return blocks;
}

std::string to_conllu(const DepGraph& g) {
  std::string out;
  if (g.text) out += "# text = " + *g.text + "\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::size_t head = g.heads[i] == kRoot ? 0 : g.heads[i] + 1;
    out += std::to_string(i + 1) + "\t" + g.forms[i] + "\t_\t_\t_\t_\t" +
           std::to_string(head) + "\t" + g.rels[i] + "\t_\t_\n";
  }
  return out;
}

void check_alignment(std::span<const std::string> sentence, const DepGraph& g) {
  if (sentence.size() != g.size()) {
    throw AlignmentError("parse has " + std::to_string(g.size()) +
                         " tokens, sentence has " +
                         std::to_string(sentence.size()));
  }
  if (g.text && text::collapse_whitespace(*g.text) != text::join(sentence)) {
    throw AlignmentError("parse text \"" + *g.text +
                         "\" differs from sentence \"" + text::join(sentence) +
                         "\"");
  }
}

std::vector<std::size_t> neighbor_set(const DepGraph& g,
                                      const corpus::ResolvedSpan& span) {
  if (span.token_start >= span.token_end || span.token_end > g.size()) {
    throw AlignmentError("span [" + std::to_string(span.token_start) + "," +
                         std::to_string(span.token_end) + ") outside a " +
                         std::to_string(g.size()) + "-token parse");
  }
  std::set<std::size_t> out;
  for (std::size_t t = span.token_start; t < span.token_end; ++t) {
    out.insert(t);
    if (g.heads[t] != kRoot) out.insert(g.heads[t]);
  }
  for (std::size_t d = 0; d < g.size(); ++d) {
    std::size_t h = g.heads[d];
    if (h != kRoot && h >= span.token_start && h < span.token_end) out.insert(d);
  }
  return {out.begin(), out.end()};
}

std::string_view to_string(ClipReason r) {
  return r == ClipReason::kLastConnectedWord ? "last-connected-word"
                                             : "span-end-fallback";
}

std::string ClipResult::prefix() const { return text::join(prefix_tokens); }

ClipResult clip(std::span<const std::string> sentence, const DepGraph& g,
                const corpus::ResolvedSpan& span) {
  check_alignment(sentence, g);
  auto neighbors = neighbor_set(g, span);
  const std::size_t span_last = span.token_end - 1;

  ClipResult r;
  r.cut_index = neighbors.back();
  r.reason = ClipReason::kLastConnectedWord;
  if (r.cut_index <= span_last) {
    r.cut_index = span_last;
    r.reason = ClipReason::kSpanEndFallback;
  }
  r.prefix_tokens.reserve(r.cut_index + 1);
  for (std::size_t i = 0; i <= r.cut_index; ++i) {
    r.prefix_tokens.push_back(text::lowercase(sentence[i]));
  }
  return r;
}

}  // namespace fcgen::syntax
