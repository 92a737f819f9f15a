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

/*
 * C interface to the fcgen feedback-comment pipeline.
 *
 * All functions return an fcg_status. On failure, fcg_last_error() returns a
 * message describing the most recent error on the calling thread. Strings
 * returned through `char**` out-parameters are owned by the caller and must
 * be released with fcg_string_free().
 */
#ifndef FCGEN_FCGEN_H_
#define FCGEN_FCGEN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(FCG_BUILDING_LIBRARY)
#define FCG_API __attribute__((visibility("default")))
#else
#define FCG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fcg_status {
  FCG_OK = 0,
  FCG_ERR_VALIDATION = 1,       /* malformed input data or configuration */
  FCG_ERR_IO = 2,               /* file system failure */
  FCG_ERR_ENDPOINT = 3,         /* generation service failure */
  FCG_ERR_INVALID_ARGUMENT = 4, /* NULL handle, bad enum value, ... */
  FCG_ERR_INTERNAL = 5
} fcg_status;

typedef enum fcg_span_convention {
  FCG_SPAN_ZERO_BASED_EXCLUSIVE = 0,
  FCG_SPAN_ONE_BASED_INCLUSIVE = 1
} fcg_span_convention;

typedef enum fcg_label {
  FCG_LABEL_CORRECT = 0,
  FCG_LABEL_INCORRECT = 1,
  FCG_LABEL_NO_COMMENT = 2
} fcg_label;

FCG_API const char* fcg_version(void);
FCG_API const char* fcg_last_error(void);
FCG_API void fcg_string_free(char* s);

/* Library logs go to stderr. Levels: trace, debug, info, warn, error,
   critical, off. */
FCG_API fcg_status fcg_set_log_level(const char* level);

/* ---- Run configuration -------------------------------------------------- */

typedef struct fcg_config fcg_config;

FCG_API fcg_status fcg_config_new(fcg_config** out);
FCG_API void fcg_config_free(fcg_config* config);
/* Merges a flat JSON object of settings from a file. */
FCG_API fcg_status fcg_config_load_file(fcg_config* config, const char* path);
/* Sets one key; an empty value clears optional settings. */
FCG_API fcg_status fcg_config_set(fcg_config* config, const char* key,
                                  const char* value);
/* Reads the endpoint from FCG_ENDPOINT when none is configured. */
FCG_API fcg_status fcg_config_apply_environment(fcg_config* config);
FCG_API fcg_status fcg_config_to_json(const fcg_config* config, char** out_json);

/* ---- Pipeline stages ----------------------------------------------------- */

/*
 * Runs one stage by name ("validate", "preprocess", "clip", "augment-plan",
 * "augment-run", "augment-import", "build-lexicon", "repair", "emit-train",
 * "eval-bleu", "eval-prf", "report-pairs"). Outputs go to the configured
 * output directory. `out_summary_json` (optional) receives a JSON summary,
 * also when the stage reports FCG_ERR_VALIDATION for invalid records.
 */
FCG_API fcg_status fcg_run_stage(const fcg_config* config, const char* stage,
                                 char** out_summary_json);

/* Clip prompt for a single corpus record (1-based line number). */
FCG_API fcg_status fcg_clip_sample(const fcg_config* config, uint64_t sample_id,
                                   char** out_prefix);

/* ---- Building blocks ----------------------------------------------------- */

FCG_API fcg_status fcg_normalize_comment(const char* comment, char** out);

/* Resolves a character span of a pre-tokenized sentence to tokens.
 * `forced` < 0 auto-detects the convention. */
FCG_API fcg_status fcg_resolve_span(const char* text, size_t start, size_t end,
                                    int forced, size_t* out_token_start,
                                    size_t* out_token_end,
                                    fcg_span_convention* out_convention);

/* Marked, lowercased sentence: "... << span >> ...". */
FCG_API fcg_status fcg_mark_span(const char* text, size_t token_start,
                                 size_t token_end, char** out);

typedef struct fcg_lexicon fcg_lexicon;

FCG_API fcg_status fcg_lexicon_load(const char* path, fcg_lexicon** out);
FCG_API fcg_status fcg_lexicon_from_comments(const char* const* comments,
                                             size_t count, fcg_lexicon** out);
FCG_API size_t fcg_lexicon_size(const fcg_lexicon* lexicon);
FCG_API void fcg_lexicon_free(fcg_lexicon* lexicon);

/* Restores missing opening brackets; `out_unresolved` (optional) receives
 * the number of closing brackets left unmatched. */
FCG_API fcg_status fcg_repair_comment(const fcg_lexicon* lexicon,
                                      const char* generated,
                                      const char* learner_sentence,
                                      char** out_text, size_t* out_unresolved);

FCG_API fcg_status fcg_corpus_bleu(const char* const* hypotheses,
                                   const char* const* references, size_t count,
                                   double* out_bleu);

typedef struct fcg_prf {
  double precision;
  double recall;
  double f1;
  size_t correct;
  size_t incorrect;
  size_t no_comment;
} fcg_prf;

FCG_API fcg_status fcg_prf_scores(const fcg_label* labels, size_t count,
                                  fcg_prf* out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* FCGEN_FCGEN_H_ */
