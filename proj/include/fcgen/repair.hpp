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
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Restores opening brackets that a generator dropped while keeping the
// closing ones: "verbs > that follow an auxiliary verb >" becomes
// "< verbs > that follow an < auxiliary verb >".
namespace fcgen::repair {

inline constexpr std::size_t kCitationWindow = 6;

class TermLexicon {
 public:
  TermLexicon() = default;
  explicit TermLexicon(std::set<std::string> terms);

  // Harvests the contents of "< ... >" pairs from comments; "<< ... >>"
  // citations are skipped. Unbalanced regions are skipped and described in
  // `warnings` when given.
  static TermLexicon build(std::span<const std::string> comments,
                           std::vector<std::string>* warnings = nullptr);

  static TermLexicon read(const std::filesystem::path& path);
  // Sorted, one term per line.
  std::string serialize() const;

  bool contains(const std::string& term) const { return terms_.count(term) != 0; }
  const std::set<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  std::size_t max_term_tokens() const { return max_term_tokens_; }

 private:
  std::set<std::string> terms_;
  std::size_t max_term_tokens_ = 0;
};

// The lexicon term with the most tokens that equals a token suffix of
// `prefix_tokens`.
std::optional<std::string> longest_term_suffix(
    std::span<const std::string> prefix_tokens, const TermLexicon& lexicon);

enum class FixKind { kTerm, kCitation };
std::string_view to_string(FixKind k);

struct Fix {
  std::size_t position = 0;  // token index of the inserted bracket in `text`
  FixKind kind = FixKind::kTerm;
  std::string inserted;

  bool operator==(const Fix&) const = default;
};

struct RepairOutcome {
  std::string text;
  std::vector<Fix> fixes;
  std::vector<std::size_t> unresolved;  // token indices of unmatched closers

  bool operator==(const RepairOutcome&) const = default;
};

// Scans left to right. An unmatched ">" gets "<" before the longest lexicon
// term ending just before it; an unmatched ">>" gets "<<" before the longest
// run of at most `citation_window` tokens that also occurs in the learner
// sentence. Closers with no candidate stay as they are and are reported.
RepairOutcome repair_comment(std::string_view generated,
                             std::span<const std::string> learner_tokens,
                             const TermLexicon& lexicon,
                             std::size_t citation_window = kCitationWindow);

// {"id", "fixes": [{"position", "kind", "inserted"}], "unresolved": [...]}
std::string report_line(std::uint64_t id, const RepairOutcome& outcome);

}  // namespace fcgen::repair
