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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fcgen/corpus.hpp"

// Dependency analyses read from CoNLL-U, and prompt clipping driven by the
// one-hop dependency neighbourhood of the error span.
namespace fcgen::syntax {

inline constexpr std::size_t kRoot = std::numeric_limits<std::size_t>::max();

struct DepGraph {
  std::vector<std::string> forms;
  std::vector<std::size_t> heads;  // 0-based, kRoot for the root
  std::vector<std::string> rels;
  std::optional<std::string> text;  // "# text = ..." when present

  std::size_t size() const { return forms.size(); }
};

class AlignmentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// One CoNLL-U sentence. Comment lines and multiword/empty-node rows are
// skipped. Throws ValidationError on column-count violations, non-integer
// ID/HEAD, out-of-range heads, self-loops or a missing root.
DepGraph parse_conllu(std::string_view block);

// Blank-line separated blocks, in file order.
std::vector<std::string> split_conllu_blocks(std::string_view content);

std::string to_conllu(const DepGraph& graph);

// Throws AlignmentError if the graph does not line up with `sentence`.
void check_alignment(std::span<const std::string> sentence, const DepGraph& graph);

// Span tokens together with their heads and direct dependents, sorted.
std::vector<std::size_t> neighbor_set(const DepGraph& graph,
                                      const corpus::ResolvedSpan& span);

enum class ClipReason { kLastConnectedWord, kSpanEndFallback };
std::string_view to_string(ClipReason r);

struct ClipResult {
  std::vector<std::string> prefix_tokens;  // lowercased
  std::size_t cut_index = 0;               // last kept token
  ClipReason reason = ClipReason::kLastConnectedWord;

  std::string prefix() const;
};

// Keeps the sentence up to the last token connected to the span; when every
// connected token precedes the span end, keeps up to the span end instead.
ClipResult clip(std::span<const std::string> sentence, const DepGraph& graph,
                const corpus::ResolvedSpan& span);

}  // namespace fcgen::syntax
