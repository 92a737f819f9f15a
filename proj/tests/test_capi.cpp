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


// Exercises the shared library through its C header only.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "doctest.h"
#include "fcgen/fcgen.h"

namespace {

std::string data(const char* rel) { return std::string(FCGEN_TEST_DATA) + "/" + rel; }

std::string take(char* s) {
  std::string out = s ? s : "";
  fcg_string_free(s);
  return out;
}

std::string tmpdir(const char* tag) {
  char buf[] = "/tmp/fcgen-capi-XXXXXX";
  std::string d = mkdtemp(buf);
  return d + "/" + tag;
}

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::string(fcg_version()) == "0.3.0");
  fcg_config* cfg = nullptr;
  REQUIRE(fcg_config_new(&cfg) == FCG_OK);
  CHECK(fcg_config_set(cfg, "no_such_key", "1") == FCG_ERR_VALIDATION);
  CHECK(std::string(fcg_last_error()).find("no_such_key") != std::string::npos);
  CHECK(fcg_config_set(nullptr, "train", "x") == FCG_ERR_INVALID_ARGUMENT);
  CHECK(fcg_config_new(nullptr) == FCG_ERR_INVALID_ARGUMENT);
  fcg_config_free(cfg);
  fcg_config_free(nullptr);
  fcg_string_free(nullptr);
}

TEST_CASE("log level") {
  CHECK(fcg_set_log_level("error") == FCG_OK);
  CHECK(fcg_set_log_level("off") == FCG_OK);
  CHECK(fcg_set_log_level("loud") == FCG_ERR_INVALID_ARGUMENT);
  CHECK(std::string(fcg_last_error()).find("loud") != std::string::npos);
  CHECK(fcg_set_log_level(nullptr) == FCG_ERR_INVALID_ARGUMENT);
  CHECK(fcg_set_log_level("warn") == FCG_OK);
}

TEST_CASE("last error is per thread") {
  fcg_config* cfg = nullptr;
  REQUIRE(fcg_config_new(&cfg) == FCG_OK);
  CHECK(fcg_config_set(cfg, "bogus_a", "1") == FCG_ERR_VALIDATION);
  std::thread([&] {
    CHECK(fcg_config_set(cfg, "bogus_b", "1") == FCG_ERR_VALIDATION);
    CHECK(std::string(fcg_last_error()).find("bogus_b") != std::string::npos);
  }).join();
  CHECK(std::string(fcg_last_error()).find("bogus_a") != std::string::npos);
  fcg_config_free(cfg);
}

TEST_CASE("building blocks") {
  char* out = nullptr;
  REQUIRE(fcg_normalize_comment("<<About>> is a <preposition>.", &out) == FCG_OK);
  CHECK(take(out) == "<< about >> is a < preposition > .");

  size_t a = 0, b = 0;
  fcg_span_convention conv;
  REQUIRE(fcg_resolve_span("I agree it .", 3, 10, -1, &a, &b, &conv) == FCG_OK);
  CHECK(a == 1);
  CHECK(b == 3);
  CHECK(conv == FCG_SPAN_ONE_BASED_INCLUSIVE);
  CHECK(fcg_resolve_span("I agree it .", 4, 10, -1, &a, &b, &conv) == FCG_ERR_VALIDATION);
  CHECK(fcg_resolve_span("I agree it .", 3, 10, 7, &a, &b, &conv) == FCG_ERR_INVALID_ARGUMENT);
  CHECK(fcg_resolve_span("I agree it .", 3, 10, FCG_SPAN_ZERO_BASED_EXCLUSIVE, &a, &b, &conv) ==
        FCG_ERR_VALIDATION);

  REQUIRE(fcg_mark_span("I agree it .", 1, 3, &out) == FCG_OK);
  CHECK(take(out) == "i << agree it >> .");
  CHECK(fcg_mark_span("I agree it .", 3, 9, &out) == FCG_ERR_VALIDATION);
}

TEST_CASE("lexicon and repair") {
  const char* comments[] = {"Use the <auxiliary verb> and a <noun>.", "<verbs> here"};
  fcg_lexicon* lex = nullptr;
  REQUIRE(fcg_lexicon_from_comments(comments, 2, &lex) == FCG_OK);
  CHECK(fcg_lexicon_size(lex) == 3);
  char* out = nullptr;
  size_t unresolved = 99;
  REQUIRE(fcg_repair_comment(lex, "verbs > that follow an auxiliary verb > x >>",
                             "They can help .", &out, &unresolved) == FCG_OK);
  CHECK(take(out) == "< verbs > that follow an < auxiliary verb > x >>");
  CHECK(unresolved == 1);
  CHECK(fcg_repair_comment(nullptr, "x", "y", &out, nullptr) == FCG_ERR_INVALID_ARGUMENT);
  fcg_lexicon_free(lex);

  fcg_lexicon* missing = nullptr;
  CHECK(fcg_lexicon_load("/no/such/lexicon.txt", &missing) == FCG_ERR_IO);
  CHECK(missing == nullptr);
}

TEST_CASE("metrics") {
  const char* hyp[] = {"a b c d x"};
  const char* ref[] = {"a b c d e f"};
  double bleu = 0;
  REQUIRE(fcg_corpus_bleu(hyp, ref, 1, &bleu) == FCG_OK);
  double expect = std::exp(1.0 - 6.0 / 5.0) * std::pow(0.8 * 0.75 * (2.0 / 3.0) * 0.5, 0.25);
  CHECK(std::fabs(bleu - expect) < 1e-12);
  CHECK(fcg_corpus_bleu(hyp, ref, 0, &bleu) == FCG_ERR_VALIDATION);

  fcg_label labels[10];
  for (int i = 0; i < 5; ++i) labels[i] = FCG_LABEL_CORRECT;
  for (int i = 5; i < 8; ++i) labels[i] = FCG_LABEL_INCORRECT;
  labels[8] = labels[9] = FCG_LABEL_NO_COMMENT;
  fcg_prf prf;
  REQUIRE(fcg_prf_scores(labels, 10, &prf) == FCG_OK);
  CHECK(prf.precision == 0.625);
  CHECK(prf.recall == 0.5);
  CHECK(std::fabs(prf.f1 - 5.0 / 9.0) < 1e-12);
  CHECK(prf.no_comment == 2);
  labels[0] = static_cast<fcg_label>(42);
  CHECK(fcg_prf_scores(labels, 10, &prf) == FCG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("stages through the C API") {
  fcg_config* cfg = nullptr;
  REQUIRE(fcg_config_new(&cfg) == FCG_OK);
  auto out_dir = tmpdir("out");
  REQUIRE(fcg_config_set(cfg, "train", data("example.tsv").c_str()) == FCG_OK);
  REQUIRE(fcg_config_set(cfg, "conllu", data("example.conllu").c_str()) == FCG_OK);
  REQUIRE(fcg_config_set(cfg, "out_dir", out_dir.c_str()) == FCG_OK);

  char* prefix = nullptr;
  REQUIRE(fcg_clip_sample(cfg, 1, &prefix) == FCG_OK);
  CHECK(take(prefix) == "they can help their father or mother about money");
  CHECK(fcg_clip_sample(cfg, 5, &prefix) == FCG_ERR_VALIDATION);

  char* summary = nullptr;
  REQUIRE(fcg_run_stage(cfg, "validate", &summary) == FCG_OK);
  CHECK(take(summary).find("\"lines\": 2") != std::string::npos);
  CHECK(fcg_run_stage(cfg, "no-such-stage", nullptr) == FCG_ERR_VALIDATION);

  REQUIRE(fcg_config_set(cfg, "stub_generator", "true") == FCG_OK);
  REQUIRE(fcg_run_stage(cfg, "augment-run", &summary) == FCG_OK);
  CHECK(take(summary).find("\"augmented_total\": 20") != std::string::npos);

  // A stage that finds malformed input still hands back its summary.
  auto bad = out_dir + "/bad.tsv";
  if (FILE* f = std::fopen(bad.c_str(), "w")) {
    std::fputs("fine .\t1:4\tc\nbroken\n", f);
    std::fclose(f);
  }
  REQUIRE(fcg_config_set(cfg, "train", bad.c_str()) == FCG_OK);
  CHECK(fcg_run_stage(cfg, "validate", &summary) == FCG_ERR_VALIDATION);
  CHECK(take(summary).find("\"malformed\": 1") != std::string::npos);

  // Unreachable endpoint.
  REQUIRE(fcg_config_set(cfg, "train", data("example.tsv").c_str()) == FCG_OK);
  REQUIRE(fcg_config_set(cfg, "stub_generator", "false") == FCG_OK);
  REQUIRE(fcg_config_set(cfg, "endpoint", "http://127.0.0.1:1") == FCG_OK);
  REQUIRE(fcg_config_set(cfg, "retries", "0") == FCG_OK);
  CHECK(fcg_run_stage(cfg, "augment-run", nullptr) == FCG_ERR_ENDPOINT);

  char* js = nullptr;
  REQUIRE(fcg_config_to_json(cfg, &js) == FCG_OK);
  CHECK(take(js).find("\"retries\": 0") != std::string::npos);
  fcg_config_free(cfg);
}
