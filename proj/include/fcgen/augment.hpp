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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fcgen/corpus.hpp"
#include "fcgen/genclient.hpp"
#include "fcgen/syntax.hpp"

// Data augmentation by prompt continuation: pick the samples whose feedback
// is rare, clip their sentences after the span's syntactic neighbourhood, let
// a language model finish the sentence, and attach the original feedback.
namespace fcgen::augment {

inline constexpr std::string_view kCitationPlaceholder = "<< * >>";

struct CommentSignature {
  std::string key;

  auto operator<=>(const CommentSignature&) const = default;
};

// Normalized comment with every "<< ... >>" citation collapsed to a
// placeholder, so comments differing only in the quoted learner words match.
CommentSignature signature(std::string_view comment);

struct Selection {
  std::vector<std::size_t> augment;  // indices into the input
  std::vector<std::size_t> skip;
  std::map<std::string, std::size_t> group_sizes;  // signature -> count
};

Selection select_for_augmentation(std::span<const std::string> comments,
                                  std::size_t group_skip = 10);

// Group size -> number of groups of that size.
std::map<std::size_t, std::size_t> group_size_histogram(const Selection& s);

// Filters one raw continuation. Strips an echoed prompt, collapses
// whitespace, and cuts after the first sentence terminator within the first
// `max_new_tokens` tokens. Without a terminator, fragments of 3+ tokens get
// a '.' appended. Rejects empty text, text without any letter or digit, and
// anything containing '<' or '>'.
std::optional<std::string> accept_continuation(std::string_view prefix,
                                               std::string_view raw,
                                               int max_new_tokens =
                                                   gen::kDefaultMaxNewTokens);

// Whitespace tokens of a continuation with sentence punctuation split off
// word edges, matching the corpus' pre-tokenized style.
std::vector<std::string> tokenize_continuation(std::string_view continuation);

struct AugmentedSample {
  std::uint64_t base_id = 0;
  std::vector<std::string> tokens;  // clip prefix ++ continuation tokens
  corpus::ResolvedSpan span;        // zero-based-exclusive, copied from base
  std::string comment;              // normalized source comment

  std::string text() const;
  corpus::Sample to_sample() const;
};

struct AssembleParams {
  std::size_t per_sample_min = 8;
  std::size_t per_sample_max = 10;
  std::size_t topup_rounds = 3;

  void validate() const;
};

// The inputs for augmenting one corpus sample.
struct SampleTask {
  std::uint64_t id = 0;
  corpus::ResolvedSpan span;
  std::string comment;  // normalized
  syntax::ClipResult clip;
};

// Builds augmented samples from accepted continuations: duplicates (after
// whitespace collapse) are dropped, at most `max_keep` are kept in arrival
// order, and the result is sorted by continuation hash.
std::vector<AugmentedSample> assemble(const SampleTask& task,
                                      std::span<const std::string> accepted,
                                      std::size_t max_keep);

struct GenerationParams {
  int max_new_tokens = gen::kDefaultMaxNewTokens;
  double temperature = gen::kDefaultTemperature;
  std::optional<std::int64_t> seed;
};

struct SampleOutcome {
  std::uint64_t id = 0;
  std::vector<AugmentedSample> samples;
  std::size_t requests = 0;
  std::size_t raw_continuations = 0;
  std::size_t rejected = 0;
  bool underfilled = false;
  std::string model_id;
};

// Requests per_sample_max continuations, then tops up while fewer than
// per_sample_min are accepted and the round budget lasts.
SampleOutcome augment_sample(const SampleTask& task, gen::Generator& generator,
                             const GenerationParams& gen_params,
                             const AssembleParams& params);

// Accepts and assembles continuations that were produced offline.
SampleOutcome augment_from_continuations(const SampleTask& task,
                                         std::span<const std::string> raw,
                                         int max_new_tokens,
                                         const AssembleParams& params);

// Runs augment_sample over all tasks with at most `parallelism` requests in
// flight. Outcomes come back in task order.
std::vector<SampleOutcome> augment_all(std::span<const SampleTask> tasks,
                                       gen::Generator& generator,
                                       const GenerationParams& gen_params,
                                       const AssembleParams& params,
                                       std::size_t parallelism);

}  // namespace fcgen::augment
