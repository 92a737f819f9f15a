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


#include <atomic>
#include <mutex>
#include <random>
#include <set>

#include "doctest.h"
#include "fcgen/augment.hpp"
#include "fcgen/preprocess.hpp"
#include "fcgen/text.hpp"

using namespace fcgen;
using namespace fcgen::augment;

namespace {

SampleTask about_task() {
  SampleTask t;
  t.id = 1;
  t.span = {7, 8, corpus::SpanConvention::kOneBasedInclusive};
  t.comment = preprocess::normalize_comment("<<About>> is not the appropriate <preposition>.");
  t.clip.prefix_tokens = text::split_whitespace("they can help their father or mother about money");
  t.clip.cut_index = 8;
  return t;
}

// Replays scripted batches and records the requests it saw.
class ScriptedGenerator : public gen::Generator {
 public:
  explicit ScriptedGenerator(std::vector<std::vector<std::string>> batches)
      : batches_(std::move(batches)) {}
  gen::GenerationResponse generate(const gen::GenerationRequest& r) override {
    std::lock_guard lock(mu_);
    requests.push_back(r);
    gen::GenerationResponse resp;
    resp.model_id = "scripted";
    if (calls_ < batches_.size()) resp.continuations = batches_[calls_];
    ++calls_;
    return resp;
  }
  std::vector<gen::GenerationRequest> requests;

 private:
  std::mutex mu_;
  std::vector<std::vector<std::string>> batches_;
  std::size_t calls_ = 0;
};

}  // namespace

TEST_CASE("signatures collapse citations only") {
  CHECK(signature("<<About>> is wrong here.").key == "<< * >> is wrong here.");
  CHECK(signature("<<for>> is wrong here.") == signature("<<About>> is wrong here."));
  CHECK(signature("<<About>> is <wrong> here.").key == "<< * >> is < wrong > here.");
  CHECK(signature("<<About>> is <wrong> here.") != signature("<<About>> is <bad> here."));
  // An unclosed citation is kept verbatim.
  CHECK(signature("<<about is").key == "<< about is");
}

TEST_CASE("selection partitions the corpus") {
  std::vector<std::string> comments;
  for (int i = 0; i < 10; ++i) comments.push_back("<<w" + std::to_string(i) + ">> common.");
  for (int i = 0; i < 9; ++i) comments.push_back("Nine of <<x>> these.");
  comments.push_back("unique");
  auto s = select_for_augmentation(comments);
  CHECK(s.skip.size() == 10);
  CHECK(s.augment.size() == 10);
  CHECK(s.augment.front() == 10);
  auto h = group_size_histogram(s);
  CHECK(h == std::map<std::size_t, std::size_t>{{1, 1}, {9, 1}, {10, 1}});
  auto strict = select_for_augmentation(comments, 9);
  CHECK(strict.skip.size() == 19);
}

TEST_CASE("property: selection never loses or duplicates a sample") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<std::string> comments;
    std::size_t n = rng() % 200;
    for (std::size_t i = 0; i < n; ++i) comments.push_back("c" + std::to_string(rng() % 25));
    std::size_t skip_at = 1 + rng() % 15;
    auto s = select_for_augmentation(comments, skip_at);
    std::vector<int> seen(n, 0);
    for (auto i : s.augment) ++seen[i];
    for (auto i : s.skip) ++seen[i];
    REQUIRE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    for (auto i : s.skip) REQUIRE(s.group_sizes.at(comments[i]) >= skip_at);
    for (auto i : s.augment) REQUIRE(s.group_sizes.at(comments[i]) < skip_at);
  }
}

TEST_CASE("accepting continuations") {
  const std::string p = "they can help their father";
  CHECK(accept_continuation(p, " with the rent. Then more") == "with the rent.");
  CHECK(accept_continuation(p, p + " with the rent. Then more") == "with the rent.");
  CHECK(accept_continuation(p, "with the rent every month") == "with the rent every month.");
  CHECK(accept_continuation(p, "with it") == std::nullopt);
  CHECK(accept_continuation(p, "   ") == std::nullopt);
  CHECK(accept_continuation(p, "...") == std::nullopt);
  CHECK(accept_continuation(p, "with <b> tags.") == std::nullopt);
  CHECK(accept_continuation(p, "with the rent.\" he said") == "with the rent.\"");
  CHECK(accept_continuation(p, "Is it 3.5 or more? Yes") == "Is it 3.5 or more?");
  CHECK(accept_continuation(p, "wow!! really") == "wow!!");
  // Only the first max_new_tokens tokens are considered.
  CHECK(accept_continuation(p, "a b c d e. f", 3) == "a b c.");
  CHECK(accept_continuation(p, "a  b\n c.") == "a b c.");
}

TEST_CASE("continuation tokenization splits edge punctuation") {
  CHECK(tokenize_continuation("with the rent, \"too\" (really).") ==
        std::vector<std::string>{"with", "the", "rent", ",", "\"", "too", "\"", "(",
                                 "really", ")", "."});
  CHECK(tokenize_continuation("don't x-ray 3.5") ==
        std::vector<std::string>{"don't", "x-ray", "3.5"});
}

TEST_CASE("assemble: dedup, cap, deterministic order, span copied") {
  auto t = about_task();
  std::vector<std::string> acc = {"with the rent.", "with  the rent.", "b c d.", "e f g.",
                                  "h i j."};
  auto out = assemble(t, acc, 3);
  REQUIRE(out.size() == 3);
  std::set<std::string> tails;
  for (const auto& s : out) {
    CHECK(s.base_id == 1);
    CHECK(s.span.token_start == 7);
    CHECK(s.span.token_end == 8);
    CHECK(s.span.convention == corpus::SpanConvention::kZeroBasedExclusive);
    CHECK(std::vector<std::string>(s.tokens.begin(), s.tokens.begin() + 9) ==
          t.clip.prefix_tokens);
    tails.insert(text::join(std::vector<std::string>(s.tokens.begin() + 9, s.tokens.end())));
  }
  // First three distinct in arrival order were kept.
  CHECK(tails == std::set<std::string>{"with the rent .", "b c d .", "e f g ."});
  // Order does not depend on arrival order.
  std::vector<std::string> rev = {"e f g.", "b c d.", "with the rent."};
  auto again = assemble(t, rev, 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(again[i].tokens == out[i].tokens);

  auto sample = out[0].to_sample();
  auto span = corpus::resolve_span(sample, corpus::SpanConvention::kZeroBasedExclusive);
  CHECK(span.token_start == 7);
  auto toks = text::split_whitespace(sample.text);
  CHECK(toks[7] == "about");
  CHECK(*sample.comment == t.comment);
}

TEST_CASE("augment_sample tops up until the minimum is met") {
  auto t = about_task();
  std::vector<std::string> five = {"a b c.", "d e f.", "g h i.", "j k l.", "m n o."};
  std::vector<std::string> more = {"a b c.", "p q r.", "s t u.", "<x> y z.", "v w x."};
  ScriptedGenerator gen({five, more, {"late one."}});
  GenerationParams gp;
  gp.seed = 100;
  auto out = augment_sample(t, gen, gp, AssembleParams{});
  CHECK(out.requests == 2);
  CHECK(out.samples.size() == 8);
  CHECK(out.rejected == 1);
  CHECK(out.raw_continuations == 10);
  CHECK_FALSE(out.underfilled);
  REQUIRE(gen.requests.size() == 2);
  CHECK(gen.requests[0].n == 10);
  CHECK(gen.requests[0].prompt == t.clip.prefix());
  CHECK(gen.requests[0].seed == 100);
  CHECK(gen.requests[1].seed == 101);
}

TEST_CASE("augment_sample gives up after the round budget") {
  auto t = about_task();
  ScriptedGenerator gen({{"a b c."}, {"a b c."}, {}, {"d e f."}, {"never asked."}});
  auto out = augment_sample(t, gen, {}, AssembleParams{8, 10, 3});
  CHECK(out.requests == 4);
  CHECK(out.samples.size() == 2);
  CHECK(out.underfilled);
  CHECK_FALSE(gen.requests[0].seed);
}

TEST_CASE("nine distinct stub endings give nine samples") {
  auto t = about_task();
  gen::StubGenerator stub(gen::StubOptions{9});
  auto out = augment_sample(t, stub, {}, AssembleParams{});
  CHECK(out.requests == 1);
  CHECK(out.samples.size() == 9);
}

TEST_CASE("offline continuations go through the same filter") {
  auto t = about_task();
  std::vector<std::string> raw = {"a b c.", "<bad>.", "d e f.", "x"};
  auto out = augment_from_continuations(t, raw, 40, AssembleParams{2, 10, 0});
  CHECK(out.samples.size() == 2);
  CHECK(out.rejected == 2);
  CHECK_FALSE(out.underfilled);
}

TEST_CASE("augment_all keeps task order and surfaces errors") {
  std::vector<SampleTask> tasks;
  for (int i = 0; i < 40; ++i) {
    auto t = about_task();
    t.id = static_cast<std::uint64_t>(i + 1);
    t.clip.prefix_tokens.push_back("w" + std::to_string(i));
    tasks.push_back(t);
  }
  gen::StubGenerator stub(gen::StubOptions{9});
  auto serial = augment_all(tasks, stub, {}, AssembleParams{}, 1);
  auto parallel = augment_all(tasks, stub, {}, AssembleParams{}, 8);
  REQUIRE(parallel.size() == tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    CHECK(parallel[i].id == tasks[i].id);
    REQUIRE(parallel[i].samples.size() == serial[i].samples.size());
    for (std::size_t k = 0; k < serial[i].samples.size(); ++k) {
      CHECK(parallel[i].samples[k].tokens == serial[i].samples[k].tokens);
    }
  }

  class Failing : public gen::Generator {
   public:
    gen::GenerationResponse generate(const gen::GenerationRequest&) override {
      throw gen::ConnectionError("down");
    }
  } failing;
  CHECK_THROWS_AS(augment_all(tasks, failing, {}, AssembleParams{}, 4), gen::ConnectionError);
  CHECK_THROWS_AS(augment_all(tasks, stub, {}, AssembleParams{9, 8, 1}, 4), ValidationError);
}
