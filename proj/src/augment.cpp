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

#include "fcgen/augment.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "fcgen/preprocess.hpp"
#include "fcgen/text.hpp"

namespace fcgen::augment {
namespace {

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closing_quote(char c) { return c == '"' || c == '\'' || c == ')'; }

bool is_edge_punct(char c) {
  switch (c) {
    case ',': case '.': case '!': case '?': case ';': case ':':
    case '"': case '(': case ')':
      return true;
    default:
      return false;
  }
}

bool has_alnum(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c >= 0x80;
  });
}

}  // namespace

CommentSignature signature(std::string_view comment) {
  auto tokens = preprocess::comment_tokens(comment);
  std::vector<std::string> out;
  out.reserve(tokens.size());
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (tokens[i] == preprocess::kOpenCitation) {
      auto close = std::find(tokens.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                             tokens.end(), std::string(preprocess::kCloseCitation));
      if (close != tokens.end()) {
        out.emplace_back(kCitationPlaceholder);
        i = static_cast<std::size_t>(close - tokens.begin()) + 1;
        continue;
      }
    }
    out.push_back(tokens[i]);
    ++i;
  }
  return CommentSignature{text::join(out)};
}

Selection select_for_augmentation(std::span<const std::string> comments,
                                  std::size_t group_skip) {
  Selection s;
  std::vector<std::string> keys;
  keys.reserve(comments.size());
  for (const auto& c : comments) {
    keys.push_back(signature(c).key);
    ++s.group_sizes[keys.back()];
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (s.group_sizes[keys[i]] >= group_skip) {
      s.skip.push_back(i);
    } else {
      s.augment.push_back(i);
    }
  }
  return s;
}

std::map<std::size_t, std::size_t> group_size_histogram(const Selection& s) {
  std::map<std::size_t, std::size_t> h;
  for (const auto& [key, size] : s.group_sizes) ++h[size];
  return h;
}

std::optional<std::string> accept_continuation(std::string_view prefix,
                                               std::string_view raw,
                                               int max_new_tokens) {
  std::string_view body = raw;
  if (!prefix.empty() && body.substr(0, prefix.size()) == prefix) {
    body.remove_prefix(prefix.size());
  }
  auto tokens = text::split_whitespace(body);
  if (tokens.empty()) return std::nullopt;
  if (max_new_tokens > 0 &&
      tokens.size() > static_cast<std::size_t>(max_new_tokens)) {
    tokens.resize(static_cast<std::size_t>(max_new_tokens));
  }
  const std::string window = text::join(tokens);

  std::optional<std::string> kept;
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (!is_terminator(window[i])) continue;
    std::size_t next = i + 1;
    while (next < window.size() && is_terminator(window[next])) ++next;
    while (next < window.size() && is_closing_quote(window[next])) ++next;
    if (next == window.size() || window[next] == ' ') {
      kept = window.substr(0, next);
      break;
    }
  }
  if (!kept) {
    if (tokens.size() < 3) return std::nullopt;
    kept = window + ".";
  }
  if (kept->find_first_of("<>") != std::string::npos) return std::nullopt;
  if (!has_alnum(*kept)) return std::nullopt;
  return kept;
}

std::vector<std::string> tokenize_continuation(std::string_view continuation) {
  std::vector<std::string> out;
  for (const auto& word : text::split_whitespace(continuation)) {
    std::size_t b = 0, e = word.size();
    std::vector<std::string> trailing;
    while (b < e && is_edge_punct(word[b])) {
      out.emplace_back(1, word[b]);
      ++b;
    }
    while (e > b && is_edge_punct(word[e - 1])) {
      trailing.emplace_back(1, word[e - 1]);
      --e;
    }
    if (e > b) out.push_back(word.substr(b, e - b));
    out.insert(out.end(), trailing.rbegin(), trailing.rend());
  }
  return out;
}

std::string AugmentedSample::text() const { return text::join(tokens); }

corpus::Sample AugmentedSample::to_sample() const {
  corpus::Sample s;
  s.text = text();
  auto toks = corpus::tokenize(s.text);
  s.raw_span = corpus::to_raw_span(toks, span.token_start, span.token_end,
                                   corpus::SpanConvention::kZeroBasedExclusive);
  s.comment = comment;
  return s;
}

void AssembleParams::validate() const {
  if (per_sample_min == 0 || per_sample_max == 0) {
    throw ValidationError("per-sample thresholds must be positive");
  }
  if (per_sample_min > per_sample_max) {
    throw ValidationError("per_sample_min must not exceed per_sample_max");
  }
}

std::vector<AugmentedSample> assemble(const SampleTask& task,
                                      std::span<const std::string> accepted,
                                      std::size_t max_keep) {
  std::set<std::string> seen;
  std::vector<std::string> kept;
  for (const auto& a : accepted) {
    auto key = text::collapse_whitespace(a);
    if (key.empty() || !seen.insert(key).second) continue;
    if (kept.size() == max_keep) break;
    kept.push_back(std::move(key));
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    auto ha = text::fnv1a64(a), hb = text::fnv1a64(b);
    return ha != hb ? ha < hb : a < b;
  });

  std::vector<AugmentedSample> out;
  out.reserve(kept.size());
  for (const auto& cont : kept) {
    AugmentedSample s;
    s.base_id = task.id;
    s.tokens = task.clip.prefix_tokens;
    auto extra = tokenize_continuation(cont);
    s.tokens.insert(s.tokens.end(), extra.begin(), extra.end());
    s.span = corpus::ResolvedSpan{task.span.token_start, task.span.token_end,
                                  corpus::SpanConvention::kZeroBasedExclusive};
    s.comment = task.comment;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

void absorb(const SampleTask& task, std::span<const std::string> raw,
            int max_new_tokens, std::vector<std::string>& accepted,
            std::set<std::string>& seen, SampleOutcome& out) {
  const std::string prompt = task.clip.prefix();
  for (const auto& r : raw) {
    ++out.raw_continuations;
    auto a = accept_continuation(prompt, r, max_new_tokens);
    if (!a) {
      ++out.rejected;
      continue;
    }
    if (seen.insert(text::collapse_whitespace(*a)).second) {
      accepted.push_back(std::move(*a));
    }
  }
}

}  // namespace

SampleOutcome augment_sample(const SampleTask& task, gen::Generator& generator,
                             const GenerationParams& gen_params,
                             const AssembleParams& params) {
  params.validate();
  SampleOutcome out;
  out.id = task.id;
  std::vector<std::string> accepted;
  std::set<std::string> seen;

  for (std::size_t round = 0; round <= params.topup_rounds; ++round) {
    if (round > 0 && accepted.size() >= params.per_sample_min) break;
    gen::GenerationRequest req;
    req.prompt = task.clip.prefix();
    req.n = static_cast<int>(params.per_sample_max);
    req.max_new_tokens = gen_params.max_new_tokens;
    req.temperature = gen_params.temperature;
    if (gen_params.seed) {
      req.seed = *gen_params.seed + static_cast<std::int64_t>(round);
    }
    auto resp = generator.generate(req);
    ++out.requests;
    out.model_id = resp.model_id;
    absorb(task, resp.continuations, gen_params.max_new_tokens, accepted, seen,
           out);
  }
  out.samples = assemble(task, accepted, params.per_sample_max);
  out.underfilled = out.samples.size() < params.per_sample_min;
  if (out.underfilled) {
    spdlog::warn("sample {}: only {} augmented sentences after {} requests",
                 task.id, out.samples.size(), out.requests);
  }
  return out;
}

SampleOutcome augment_from_continuations(const SampleTask& task,
                                         std::span<const std::string> raw,
                                         int max_new_tokens,
                                         const AssembleParams& params) {
  params.validate();
  SampleOutcome out;
  out.id = task.id;
  std::vector<std::string> accepted;
  std::set<std::string> seen;
  absorb(task, raw, max_new_tokens, accepted, seen, out);
  out.samples = assemble(task, accepted, params.per_sample_max);
  out.underfilled = out.samples.size() < params.per_sample_min;
  if (out.underfilled) {
    spdlog::warn("sample {}: only {} augmented sentences from offline file",
                 task.id, out.samples.size());
  }
  return out;
}

std::vector<SampleOutcome> augment_all(std::span<const SampleTask> tasks,
                                       gen::Generator& generator,
                                       const GenerationParams& gen_params,
                                       const AssembleParams& params,
                                       std::size_t parallelism) {
  params.validate();
  std::vector<SampleOutcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;

  auto worker = [&] {
    while (!failed.load()) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        outcomes[i] = augment_sample(tasks[i], generator, gen_params, params);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };

  const std::size_t n = std::clamp<std::size_t>(parallelism, 1, 64);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return outcomes;
}

}  // namespace fcgen::augment
