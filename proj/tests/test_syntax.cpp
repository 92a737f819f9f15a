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
#include "fcgen/syntax.hpp"
#include "fcgen/text.hpp"
#include "oracles/neighbor_oracle.hpp"
#include "test_util.hpp"

using namespace fcgen;
using namespace fcgen::syntax;

namespace {

DepGraph example_graph() {
  auto blocks = split_conllu_blocks(text::read_file(testutil::data("example.conllu")));
  REQUIRE(blocks.size() == 2);
  return parse_conllu(blocks[0]);
}

const corpus::ResolvedSpan kAbout{7, 8, corpus::SpanConvention::kOneBasedInclusive};

}  // namespace

TEST_CASE("golden clip on the worked example") {
  auto g = example_graph();
  auto sentence = text::split_whitespace(*g.text);
  check_alignment(sentence, g);
  CHECK(neighbor_set(g, kAbout) == std::vector<std::size_t>{2, 7, 8});
  auto c = clip(sentence, g, kAbout);
  CHECK(c.prefix() == "they can help their father or mother about money");
  CHECK(c.cut_index == 8);
  CHECK(c.reason == ClipReason::kLastConnectedWord);
}

TEST_CASE("clip falls back to the span end") {
  // "I agree it ." with span "agree it": every neighbour is inside the span
  // or before it.
  auto blocks = split_conllu_blocks(text::read_file(testutil::data("example.conllu")));
  auto g = parse_conllu(blocks[1]);
  std::vector<std::string> s = {"I", "agree", "it", "."};
  auto c = clip(s, g, {1, 3, {}});
  // "." hangs off "agree", so it is connected.
  CHECK(c.prefix() == "i agree it .");
  CHECK(c.reason == ClipReason::kLastConnectedWord);
  auto only_it = clip(s, g, {2, 3, {}});
  CHECK(only_it.prefix() == "i agree it");
  CHECK(only_it.reason == ClipReason::kSpanEndFallback);
  CHECK(to_string(ClipReason::kSpanEndFallback) == "span-end-fallback");
}

TEST_CASE("conllu parsing") {
  auto g = example_graph();
  CHECK(g.size() == 18);
  CHECK(g.heads[2] == kRoot);
  CHECK(g.heads[7] == 2);
  CHECK(g.rels[8] == "pobj");
  // Serialisation round trip.
  auto again = parse_conllu(to_conllu(g));
  CHECK(again.forms == g.forms);
  CHECK(again.heads == g.heads);
  CHECK(again.rels == g.rels);
  CHECK(again.text == g.text);
}

TEST_CASE("conllu multiword and empty nodes are skipped") {
  auto g = parse_conllu(
      "1-2\tcannot\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tcan\t_\t_\t_\t_\t0\tROOT\t_\t_\n"
      "2\tnot\t_\t_\t_\t_\t1\tneg\t_\t_\n"
      "2.1\tx\t_\t_\t_\t_\t_\t_\t_\t_\n");
  CHECK(g.forms == std::vector<std::string>{"can", "not"});
}

TEST_CASE("conllu errors") {
  CHECK_THROWS_AS(parse_conllu("1\ta\t_\t_\t_\t_\t0\tROOT\t_\n"), ValidationError);
  CHECK_THROWS_AS(parse_conllu("1\ta\t_\t_\t_\t_\tx\tROOT\t_\t_\n"), ValidationError);
  CHECK_THROWS_AS(parse_conllu("2\ta\t_\t_\t_\t_\t0\tROOT\t_\t_\n"), ValidationError);
  CHECK_THROWS_AS(parse_conllu("1\ta\t_\t_\t_\t_\t1\tdep\t_\t_\n"), ValidationError);
  CHECK_THROWS_AS(parse_conllu("1\ta\t_\t_\t_\t_\t5\tdep\t_\t_\n"), ValidationError);
  CHECK_THROWS_AS(parse_conllu("1\ta\t_\t_\t_\t_\t2\tdep\t_\t_\n"
                               "2\tb\t_\t_\t_\t_\t1\tdep\t_\t_\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_conllu("# only a comment\n"), ValidationError);
}

TEST_CASE("alignment checks") {
  auto g = example_graph();
  std::vector<std::string> short_s = {"They", "can"};
  CHECK_THROWS_AS(check_alignment(short_s, g), AlignmentError);
  auto s = text::split_whitespace(*g.text);
  s[0] = "Them";
  CHECK_THROWS_AS(check_alignment(s, g), AlignmentError);
}

TEST_CASE("synthetic training parses line up with the corpus") {
  auto blocks = split_conllu_blocks(text::read_file(testutil::data("synth/train.conllu")));
  auto lines = text::read_lines(testutil::data("synth/train.tsv"));
  REQUIRE(blocks.size() == lines.size());
  for (std::size_t i = 0; i < lines.size(); i += 97) {
    auto s = corpus::parse_line(lines[i]);
    check_alignment(text::split_whitespace(s.text), parse_conllu(blocks[i]));
  }
}

TEST_CASE("property: neighbour set and clip agree with the edge-scan oracle") {
  std::mt19937_64 rng(1234);
  for (int iter = 0; iter < 1000; ++iter) {
    std::size_t n = 1 + rng() % 12;
    auto g = testutil::random_tree(n, rng);
    std::size_t a = rng() % n, b = a + 1 + rng() % std::min<std::size_t>(3, n - a);
    corpus::ResolvedSpan span{a, b, {}};
    auto expect = oracle::neighbors(g.heads, a, b);
    auto got = neighbor_set(g, span);
    REQUIRE(std::vector<std::size_t>(expect.begin(), expect.end()) == got);

    auto c = clip(g.forms, g, span);
    REQUIRE(c.prefix_tokens.size() == oracle::clip_length(g.heads, a, b));
    // The span is always inside the prefix.
    REQUIRE(c.prefix_tokens.size() >= b);
    for (std::size_t i = 0; i < c.prefix_tokens.size(); ++i) {
      REQUIRE(c.prefix_tokens[i] == g.forms[i]);
    }
  }
}
