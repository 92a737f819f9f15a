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

#include "fcgen/fcgen.h"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <cstring>
#include <mutex>
#include <new>
#include <string>
#include <vector>

#include "fcgen/config.hpp"
#include "fcgen/corpus.hpp"
#include "fcgen/eval.hpp"
#include "fcgen/pipeline.hpp"
#include "fcgen/preprocess.hpp"
#include "fcgen/repair.hpp"
#include "fcgen/text.hpp"

struct fcg_config {
  fcgen::RunConfig config;
};

struct fcg_lexicon {
  fcgen::repair::TermLexicon lexicon;
};

namespace {

thread_local std::string g_last_error;

fcg_status fail(fcg_status status, const std::string& what) {
  g_last_error = what;
  return status;
}

fcg_status status_of(fcgen::ErrorKind kind) {
  switch (kind) {
    case fcgen::ErrorKind::kValidation:
      return FCG_ERR_VALIDATION;
    case fcgen::ErrorKind::kIo:
      return FCG_ERR_IO;
    case fcgen::ErrorKind::kEndpoint:
      return FCG_ERR_ENDPOINT;
    case fcgen::ErrorKind::kInternal:
      return FCG_ERR_INTERNAL;
  }
  return FCG_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
fcg_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const fcgen::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FCG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FCG_ERR_INTERNAL, e.what());
  }
}

// Stdout carries stage summaries, so logging moves to stderr.
void use_stderr_logger() {
  static std::once_flag once;
  std::call_once(once, [] {
    auto level = spdlog::default_logger()->level();
    auto logger = spdlog::stderr_logger_mt("fcgen");
    logger->set_level(level);
    spdlog::set_default_logger(logger);
  });
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* fcg_version(void) { return FCGEN_VERSION; }

const char* fcg_last_error(void) { return g_last_error.c_str(); }

void fcg_string_free(char* s) { std::free(s); }

fcg_status fcg_set_log_level(const char* level) {
  if (!level) return fail(FCG_ERR_INVALID_ARGUMENT, "level is NULL");
  return guarded([&] {
    std::string name(level);
    auto lv = spdlog::level::from_str(name);
    if (lv == spdlog::level::off && name != "off") {
      return fail(FCG_ERR_INVALID_ARGUMENT, "unknown log level \"" + name + "\"");
    }
    use_stderr_logger();
    spdlog::set_level(lv);
    return FCG_OK;
  });
}

fcg_status fcg_config_new(fcg_config** out) {
  if (!out) return fail(FCG_ERR_INVALID_ARGUMENT, "out is NULL");
  return guarded([&] {
    use_stderr_logger();
    *out = new fcg_config();
    return FCG_OK;
  });
}

void fcg_config_free(fcg_config* config) { delete config; }

fcg_status fcg_config_load_file(fcg_config* config, const char* path) {
  if (!config || !path) return fail(FCG_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    config->config.load_file(path);
    return FCG_OK;
  });
}

fcg_status fcg_config_set(fcg_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(FCG_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    config->config.set(key, value);
    return FCG_OK;
  });
}

fcg_status fcg_config_apply_environment(fcg_config* config) {
  if (!config) return fail(FCG_ERR_INVALID_ARGUMENT, "config is NULL");
  return guarded([&] {
    config->config.apply_environment();
    return FCG_OK;
  });
}

fcg_status fcg_config_to_json(const fcg_config* config, char** out_json) {
  if (!config || !out_json) return fail(FCG_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out_json = dup_string(config->config.to_json().dump(2));
    return FCG_OK;
  });
}

fcg_status fcg_run_stage(const fcg_config* config, const char* stage,
                         char** out_summary_json) {
  if (!config || !stage) return fail(FCG_ERR_INVALID_ARGUMENT, "NULL argument");
  if (out_summary_json) *out_summary_json = nullptr;
  return guarded([&] {
    auto result = fcgen::pipeline::run_stage(stage, config->config);
    if (out_summary_json) *out_summary_json = dup_string(result.summary.dump(2));
    if (!result.ok) {
      return fail(FCG_ERR_VALIDATION,
                  std::string(stage) + ": input contains invalid records");
    }
    return FCG_OK;
  });
}

fcg_status fcg_clip_sample(const fcg_config* config, uint64_t sample_id,
                           char** out_prefix) {
  if (!config || !out_prefix) return fail(FCG_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    fcgen::RunConfig c = config->config;
    c.sample_id = sample_id;
    auto result = fcgen::pipeline::clip(c);
    *out_prefix = dup_string(result.summary.at("prefix").get<std::string>());
    return FCG_OK;
  });
}

fcg_status fcg_normalize_comment(const char* comment, char** out) {
  if (!comment || !out) return fail(FCG_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = dup_string(fcgen::preprocess::normalize_comment(comment));
    return FCG_OK;
  });
}

fcg_status fcg_resolve_span(const char* text, size_t start, size_t end, int forced,
                            size_t* out_token_start, size_t* out_token_end,
                            fcg_span_convention* out_convention) {
  if (!text || !out_token_start || !out_token_end) {
    return fail(FCG_ERR_INVALID_ARGUMENT, "NULL argument");
  }
  if (forced > 1) return fail(FCG_ERR_INVALID_ARGUMENT, "unknown convention");
  return guarded([&] {
    fcgen::corpus::Sample s{text, {start, end}, std::nullopt};
    std::optional<fcgen::corpus::SpanConvention> f;
    if (forced >= 0) f = static_cast<fcgen::corpus::SpanConvention>(forced);
    auto span = fcgen::corpus::resolve_span(s, f);
    *out_token_start = span.token_start;
    *out_token_end = span.token_end;
    if (out_convention) *out_convention = static_cast<fcg_span_convention>(span.convention);
    return FCG_OK;
  });
}

fcg_status fcg_mark_span(const char* text, size_t token_start, size_t token_end,
                         char** out) {
  if (!text || !out) return fail(FCG_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    fcgen::corpus::Sample s{text, {0, 1}, std::nullopt};
    fcgen::corpus::ResolvedSpan span{token_start, token_end,
                                     fcgen::corpus::SpanConvention::kZeroBasedExclusive};
    *out = dup_string(fcgen::preprocess::mark_span(s, span).str());
    return FCG_OK;
  });
}

fcg_status fcg_lexicon_load(const char* path, fcg_lexicon** out) {
  if (!path || !out) return fail(FCG_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = new fcg_lexicon{fcgen::repair::TermLexicon::read(path)};
    return FCG_OK;
  });
}

fcg_status fcg_lexicon_from_comments(const char* const* comments, size_t count,
                                     fcg_lexicon** out) {
  if ((!comments && count) || !out) return fail(FCG_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    std::vector<std::string> v;
    v.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!comments[i]) return fail(FCG_ERR_INVALID_ARGUMENT, "NULL comment");
      v.push_back(fcgen::preprocess::normalize_comment(comments[i]));
    }
    *out = new fcg_lexicon{fcgen::repair::TermLexicon::build(v)};
    return FCG_OK;
  });
}

size_t fcg_lexicon_size(const fcg_lexicon* lexicon) {
  return lexicon ? lexicon->lexicon.size() : 0;
}

void fcg_lexicon_free(fcg_lexicon* lexicon) { delete lexicon; }

fcg_status fcg_repair_comment(const fcg_lexicon* lexicon, const char* generated,
                              const char* learner_sentence, char** out_text,
                              size_t* out_unresolved) {
  if (!lexicon || !generated || !learner_sentence || !out_text) {
    return fail(FCG_ERR_INVALID_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    auto learner = fcgen::text::split_whitespace(learner_sentence);
    auto r = fcgen::repair::repair_comment(generated, learner, lexicon->lexicon);
    *out_text = dup_string(r.text);
    if (out_unresolved) *out_unresolved = r.unresolved.size();
    return FCG_OK;
  });
}

fcg_status fcg_corpus_bleu(const char* const* hypotheses,
                           const char* const* references, size_t count,
                           double* out_bleu) {
  if (!hypotheses || !references || !out_bleu) {
    return fail(FCG_ERR_INVALID_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    std::vector<std::string> h, r;
    for (size_t i = 0; i < count; ++i) {
      if (!hypotheses[i] || !references[i]) {
        return fail(FCG_ERR_INVALID_ARGUMENT, "NULL text");
      }
      h.emplace_back(hypotheses[i]);
      r.emplace_back(references[i]);
    }
    *out_bleu = fcgen::eval::corpus_bleu(h, r);
    return FCG_OK;
  });
}

fcg_status fcg_prf_scores(const fcg_label* labels, size_t count, fcg_prf* out) {
  if ((!labels && count) || !out) return fail(FCG_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    std::vector<fcgen::eval::Label> v;
    v.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (labels[i] < FCG_LABEL_CORRECT || labels[i] > FCG_LABEL_NO_COMMENT) {
        return fail(FCG_ERR_INVALID_ARGUMENT, "unknown label value");
      }
      v.push_back(static_cast<fcgen::eval::Label>(labels[i]));
    }
    auto p = fcgen::eval::prf_scores(v);
    *out = fcg_prf{p.precision, p.recall, p.f1, p.correct, p.incorrect, p.no_comment};
    return FCG_OK;
  });
}

}  // extern "C"
