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


#include <random>

#include "doctest.h"
#include "fcgen/preprocess.hpp"
#include "fcgen/repair.hpp"
#include "fcgen/text.hpp"
#include "oracles/repair_oracle.hpp"
#include "test_util.hpp"

using namespace fcgen;
using namespace fcgen::repair;

namespace {

TermLexicon lexicon() {
  return TermLexicon({"verbs", "auxiliary verb", "verb", "infinitive form", "to infinitive",
                      "preposition", "noun", "help + someone", "intransitive verb"});
}

std::vector<std::string> strip_openers(const std::vector<std::string>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) {
    if (t != "<" && t != "<<") out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("restores the documented example") {
  auto r = repair_comment(
      "verbs > that follow an auxiliary verb > are used in their infinitive form > "
      "instead of a to infinitive > .",
      {}, lexicon());
  CHECK(r.text ==
        "< verbs > that follow an < auxiliary verb > are used in their < infinitive form > "
        "instead of a < to infinitive > .");
  CHECK(r.fixes.size() == 4);
  CHECK(r.unresolved.empty());
  CHECK(r.fixes[1] == Fix{6, FixKind::kTerm, "<"});
}

TEST_CASE("citations come from the learner sentence") {
  auto learner = text::split_whitespace("They can help their father about money .");
  auto r = repair_comment("about >> is not the appropriate < preposition > after help >> .",
                          learner, lexicon());
  CHECK(r.text == "<< about >> is not the appropriate < preposition > after << help >> .");
  REQUIRE(r.fixes.size() == 2);
  CHECK(r.fixes[0].kind == FixKind::kCitation);
  CHECK(r.fixes[0].position == 0);
}

TEST_CASE("longest candidates win") {
  auto learner = text::split_whitespace("most of restaurants separate areas");
  auto r = repair_comment("follows most of >> .", learner, lexicon());
  CHECK(r.text == "follows << most of >> .");
  auto t = repair_comment("a to infinitive >", {}, lexicon());
  CHECK(t.text == "a < to infinitive >");
}

TEST_CASE("unfixable closers are reported, balanced input is untouched") {
  auto r = repair_comment("the advantage >> of it", text::split_whitespace("benefits to have"),
                          lexicon());
  CHECK(r.text == "the advantage >> of it");
  CHECK(r.unresolved == std::vector<std::size_t>{2});
  CHECK(r.fixes.empty());

  const std::string ok = "<< about >> is a < preposition > .";
  auto same = repair_comment(ok, text::split_whitespace("about"), lexicon());
  CHECK(same.text == ok);
  CHECK(same.fixes.empty());
  CHECK(same.unresolved.empty());
}

TEST_CASE("candidates never span an existing bracket") {
  // "noun" is a term, but "< verb > noun" must not become "< < verb > noun >".
  auto r = repair_comment("< verb > noun >", {}, lexicon());
  CHECK(r.text == "< verb > < noun >");
  auto s = repair_comment("< verb > >", {}, lexicon());
  CHECK(s.text == "< verb > >");
  CHECK(s.unresolved == std::vector<std::size_t>{3});
}

TEST_CASE("citation window") {
  auto learner = text::split_whitespace("a b c d e f g h");
  auto r = repair_comment("a b c d e f g h >>", learner, lexicon(), 3);
  CHECK(r.text == "a b c d e << f g h >>");
}

TEST_CASE("report line") {
  auto r = repair_comment("verb > x >", {}, lexicon());
  CHECK(report_line(4, r) ==
        R"({"id":4,"fixes":[{"position":0,"kind":"term","inserted":"<"}],"unresolved":[4]})");
}

TEST_CASE("lexicon harvesting") {
  std::vector<std::string> warnings;
  std::vector<std::string> comments = {
      "<<About>> is not the appropriate <preposition> after <help + someone>.",
      "A <Noun> and <<a <quoted> citation>> here.", "stray > here", "<unclosed term"};
  auto lex = TermLexicon::build(comments, &warnings);
  CHECK(lex.terms() == std::set<std::string>{"preposition", "help + someone", "noun"});
  CHECK(lex.max_term_tokens() == 3);
  CHECK(warnings.size() == 2);
  testutil::TempDir dir("lex");
  text::write_file(dir / "lex.txt", lex.serialize());
  CHECK(TermLexicon::read(dir / "lex.txt").terms() == lex.terms());
  CHECK(lex.serialize() == "help + someone\nnoun\npreposition\n");
}

TEST_CASE("longest_term_suffix") {
  auto lex = lexicon();
  auto toks = text::split_whitespace("follow an auxiliary verb");
  CHECK(longest_term_suffix(toks, lex) == "auxiliary verb");
  CHECK_FALSE(longest_term_suffix(text::split_whitespace("nothing here"), lex));
  CHECK_FALSE(longest_term_suffix({}, lex));
}

TEST_CASE("property: agrees with the exhaustive oracle on short comments") {
  std::mt19937_64 rng(2024);
  auto lex = lexicon();
  const std::vector<std::string> vocab = {"verb", "auxiliary", "noun", "help", "+",
                                          "someone", "about", "the", "to", "infinitive",
                                          "form", "<", ">", "<<", ">>"};
  const auto learner = text::split_whitespace("they can help someone about the noun");
  for (int iter = 0; iter < 3000; ++iter) {
    std::size_t n = 1 + rng() % 15;
    std::vector<std::string> toks;
    for (std::size_t i = 0; i < n; ++i) toks.push_back(vocab[rng() % vocab.size()]);
    if (rng() % 2) toks = strip_openers(toks);
    if (toks.empty()) continue;
    auto got = repair_comment(text::join(toks), learner, lex);
    auto want = oracle::repair(toks, learner, lex.terms(), kCitationWindow);
    INFO("input: ", text::join(toks));
    REQUIRE(got.text == text::join(want.tokens));
    std::vector<std::size_t> positions;
    for (const auto& f : got.fixes) positions.push_back(f.position);
    REQUIRE(positions == want.fix_positions);
    REQUIRE(got.unresolved == want.unresolved);
  }
}
