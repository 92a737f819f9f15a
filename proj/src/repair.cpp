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

#include "fcgen/repair.hpp"

#include <algorithm>

#include "fcgen/preprocess.hpp"
#include "fcgen/text.hpp"
#include "json.hpp"

namespace fcgen::repair {
namespace {

using preprocess::is_bracket_token;
using preprocess::kCloseCitation;
using preprocess::kCloseTerm;
using preprocess::kOpenCitation;
using preprocess::kOpenTerm;

// Length of the bracket-free run at the end of `tokens`.
std::size_t plain_tail(const std::vector<std::string>& tokens) {
  std::size_t k = 0;
  while (k < tokens.size() && !is_bracket_token(tokens[tokens.size() - 1 - k])) {
    ++k;
  }
  return k;
}

bool occurs_in(std::span<const std::string> needle,
               std::span<const std::string> haystack) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

}  // namespace

TermLexicon::TermLexicon(std::set<std::string> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    max_term_tokens_ =
        std::max(max_term_tokens_, text::split_whitespace(t).size());
  }
}

TermLexicon TermLexicon::build(std::span<const std::string> comments,
                               std::vector<std::string>* warnings) {
  std::set<std::string> terms;
  auto warn = [&](std::size_t c, const std::string& what) {
    if (warnings) warnings->push_back("comment " + std::to_string(c) + ": " + what);
  };
  for (std::size_t c = 0; c < comments.size(); ++c) {
    auto tokens = preprocess::comment_tokens(comments[c]);
    std::size_t i = 0;
    while (i < tokens.size()) {
      const auto& tok = tokens[i];
      if (tok == kOpenCitation) {
        auto close = std::find(tokens.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                               tokens.end(), kCloseCitation);
        if (close == tokens.end()) {
          warn(c, "unclosed citation");
          ++i;
        } else {
          i = static_cast<std::size_t>(close - tokens.begin()) + 1;
        }
      } else if (tok == kOpenTerm) {
        std::size_t j = i + 1;
        while (j < tokens.size() && !is_bracket_token(tokens[j])) ++j;
        if (j < tokens.size() && tokens[j] == kCloseTerm && j > i + 1) {
          std::vector<std::string> inner(tokens.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                         tokens.begin() + static_cast<std::ptrdiff_t>(j));
          terms.insert(text::join(inner));
          i = j + 1;
        } else {
          warn(c, "unbalanced term bracket at token " + std::to_string(i));
          i = j;
        }
      } else {
        if (tok == kCloseTerm || tok == kCloseCitation) {
          warn(c, "stray closing bracket at token " + std::to_string(i));
        }
        ++i;
      }
    }
  }
  return TermLexicon(std::move(terms));
}

TermLexicon TermLexicon::read(const std::filesystem::path& path) {
  std::set<std::string> terms;
  for (const auto& line : text::read_lines(path)) {
    auto t = text::collapse_whitespace(line);
    if (!t.empty()) terms.insert(text::lowercase(t));
  }
  return TermLexicon(std::move(terms));
}

std::string TermLexicon::serialize() const {
  std::string out;
  for (const auto& t : terms_) {
    out += t;
    out += '\n';
  }
  return out;
}

std::optional<std::string> longest_term_suffix(
    std::span<const std::string> prefix_tokens, const TermLexicon& lexicon) {
  const std::size_t limit = std::min(prefix_tokens.size(), lexicon.max_term_tokens());
  // A k-token suffix is a single string, so the first hit from the longest k
  // down is also the longest in characters.
  for (std::size_t k = limit; k >= 1; --k) {
    auto tail = prefix_tokens.subspan(prefix_tokens.size() - k);
    if (std::any_of(tail.begin(), tail.end(),
                    [](const auto& t) { return is_bracket_token(t); })) {
      continue;
    }
    std::vector<std::string> v(tail.begin(), tail.end());
    std::string cand = text::join(v);
    if (lexicon.contains(cand)) return cand;
  }
  return std::nullopt;
}

std::string_view to_string(FixKind k) {
  return k == FixKind::kTerm ? "term" : "citation";
}

RepairOutcome repair_comment(std::string_view generated,
                             std::span<const std::string> learner_tokens,
                             const TermLexicon& lexicon,
                             std::size_t citation_window) {
  const auto input = preprocess::comment_tokens(generated);
  const auto learner = text::lowercase(learner_tokens);

  RepairOutcome r;
  std::vector<std::string> out;
  out.reserve(input.size() + 8);
  std::size_t open_terms = 0, open_citations = 0;

  for (const auto& tok : input) {
    if (tok == kOpenTerm) {
      ++open_terms;
    } else if (tok == kOpenCitation) {
      ++open_citations;
    } else if (tok == kCloseTerm) {
      if (open_terms > 0) {
        --open_terms;
      } else {
        const std::size_t tail = plain_tail(out);
        std::span<const std::string> view(out.data() + out.size() - tail, tail);
        if (auto term = longest_term_suffix(view, lexicon)) {
          std::size_t k = text::split_whitespace(*term).size();
          std::size_t pos = out.size() - k;
          out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), std::string(kOpenTerm));
          r.fixes.push_back({pos, FixKind::kTerm, std::string(kOpenTerm)});
        } else {
          r.unresolved.push_back(out.size());
        }
      }
    } else if (tok == kCloseCitation) {
      if (open_citations > 0) {
        --open_citations;
      } else {
        const std::size_t tail = std::min(plain_tail(out), citation_window);
        std::size_t found = 0;
        for (std::size_t k = tail; k >= 1; --k) {
          std::span<const std::string> cand(out.data() + out.size() - k, k);
          if (occurs_in(cand, learner)) {
            found = k;
            break;
          }
        }
        if (found) {
          std::size_t pos = out.size() - found;
          out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos),
                     std::string(kOpenCitation));
          r.fixes.push_back({pos, FixKind::kCitation, std::string(kOpenCitation)});
        } else {
          r.unresolved.push_back(out.size());
        }
      }
    }
    out.push_back(tok);
  }
  r.text = text::join(out);
  return r;
}

std::string report_line(std::uint64_t id, const RepairOutcome& outcome) {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["fixes"] = nlohmann::ordered_json::array();
  for (const auto& f : outcome.fixes) {
    nlohmann::ordered_json fj;
    fj["position"] = f.position;
    fj["kind"] = std::string(to_string(f.kind));
    fj["inserted"] = f.inserted;
    j["fixes"].push_back(fj);
  }
  j["unresolved"] = outcome.unresolved;
  return j.dump();
}

}  // namespace fcgen::repair
