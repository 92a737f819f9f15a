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


#include "doctest.h"
#include "fcgen/text.hpp"
#include "test_util.hpp"

using namespace fcgen::text;

TEST_CASE("whitespace splitting and joining") {
  auto t = split_whitespace("  I agree\tit .\n");
  REQUIRE(t.size() == 4);
  CHECK(t[3] == ".");
  CHECK(join(t) == "I agree it .");
  CHECK(join(t, "|") == "I|agree|it|.");
  CHECK(split_whitespace("").empty());
  CHECK(collapse_whitespace("  a \t b\n\nc  ") == "a b c");
}

TEST_CASE("split keeps empty fields") {
  auto f = split("a\t\tb\t", '\t');
  REQUIRE(f.size() == 4);
  CHECK(f[1].empty());
  CHECK(f[3].empty());
}

TEST_CASE("lowercase folds ascii only") {
  CHECK(lowercase("About <NOUN>") == "about <noun>");
  CHECK(lowercase("\xc3\x89t\xc3\xa9") == "\xc3\x89t\xc3\xa9");
}

TEST_CASE("split_lines strips carriage returns and the final newline") {
  auto l = split_lines("a\r\nb\n\nc\n");
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "a");
  CHECK(l[2].empty());
  CHECK(split_lines("").empty());
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("fnv1a64 known vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("file round trip creates parent directories") {
  testutil::TempDir dir("text");
  auto p = dir / "x/y/z.txt";
  write_file(p, "one\ntwo\n");
  CHECK(read_file(p) == "one\ntwo\n");
  CHECK(read_lines(p) == std::vector<std::string>{"one", "two"});
  CHECK_THROWS_AS(read_file(dir / "missing"), fcgen::IoError);
}
