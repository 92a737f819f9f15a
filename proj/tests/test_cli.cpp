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


#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + FCGEN_CLI + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& rel) { return std::string(FCGEN_TEST_DATA) + "/" + rel; }

struct Dir {
  fs::path path;
  Dir() {
    char buf[] = "/tmp/fcgen-cli-XXXXXX";
    path = mkdtemp(buf);
  }
  ~Dir() { fs::remove_all(path); }
  std::string str(const std::string& rel = "") const { return (path / rel).string(); }
};

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("clip prints the prefix") {
  Dir d;
  auto r = run("clip --train " + data("example.tsv") + " --conllu " + data("example.conllu") +
               " --sample-id 1 --out-dir " + d.str());
  CHECK(r.code == 0);
  CHECK(r.out == "they can help their father or mother about money\n");
}

TEST_CASE("exit codes") {
  Dir d;
  CHECK(run("validate --train " + data("example.tsv") + " --out-dir " + d.str()).code == 0);
  write(d.path / "bad.tsv", "fine .\t1:4\tc\nbroken\n");
  auto bad = run("validate --train " + d.str("bad.tsv") + " --out-dir " + d.str("o"));
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out)["train"]["malformed"] == 1);
  CHECK(run("validate --train /no/such/file.tsv --out-dir " + d.str()).code == 1);
  CHECK(run("no-such-command").code == 1);
  CHECK(run("validate --no-such-flag 1").code == 1);
  CHECK(run("validate --log-level loud --out-dir " + d.str()).code == 1);
  CHECK(run("augment-run --train " + data("example.tsv") + " --conllu " +
            data("example.conllu") + " --out-dir " + d.str("h") +
            " --endpoint http://127.0.0.1:1 --retries 0")
            .code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("config file, flags and environment") {
  Dir d;
  write(d.path / "cfg.json", json({{"train", data("example.tsv")},
                                   {"conllu", data("example.conllu")},
                                   {"out_dir", d.str("from-file")},
                                   {"group_skip", 1}})
                                 .dump());
  // group_skip 1 from the file puts everything in the skip set.
  auto plan = run("augment-plan --config " + d.str("cfg.json"));
  REQUIRE(plan.code == 0);
  CHECK(json::parse(plan.out)["augment"] == 0);
  CHECK(fs::exists(d.path / "from-file/selection.json"));
  // A flag wins over the file.
  auto flag = run("augment-plan --config " + d.str("cfg.json") + " --group-skip 10 --out-dir " +
                  d.str("from-flag"));
  CHECK(json::parse(flag.out)["augment"] == 2);
  CHECK(fs::exists(d.path / "from-flag/selection.json"));
  // The environment only fills an unset endpoint.
  auto env = run("augment-run --config " + d.str("cfg.json") + " --group-skip 10",
                 "FCG_ENDPOINT=http://127.0.0.1:1 ");
  CHECK(env.code == 2);
  auto stub = run("augment-run --config " + d.str("cfg.json") +
                      " --group-skip 10 --stub-generator",
                  "FCG_ENDPOINT=http://127.0.0.1:1 ");
  CHECK(stub.code == 0);
  CHECK(json::parse(stub.out)["augmentation"]["augmented_total"] == 20);
}

TEST_CASE("stages chain through files") {
  Dir d;
  std::string common = " --out-dir " + d.str() + " ";
  REQUIRE(run("augment-run --stub-generator --train " + data("synth/train.tsv") + " --conllu " +
              data("synth/train.conllu") + common)
              .code == 0);
  auto emit = run("emit-train --train " + data("synth/train.tsv") + " --dev " +
                  data("synth/dev.tsv") + " --epochs 5 --eval-every-steps 250" + common);
  REQUIRE(emit.code == 0);
  auto m = json::parse(read(d.path / "train/stage3.manifest.json"));
  CHECK(m["hyperparameters"]["learning_rate"] == 1e-6);
  CHECK(m["hyperparameters"]["epochs"] == 5);
  // Leaving out epochs is an error, not a silent default.
  CHECK(run("emit-train --train " + data("synth/train.tsv") + common).code == 1);

  REQUIRE(run("build-lexicon --train " + data("synth/train.tsv") + common).code == 0);
  write(d.path / "gen.tsv", "1\tabout >> is not the appropriate preposition > .\n");
  auto rep = run("repair --generated " + d.str("gen.tsv") + " --test " + data("example.tsv") +
                 common);
  REQUIRE(rep.code == 0);
  CHECK(read(d.path / "repaired.tsv") ==
        "1\t<< about >> is not the appropriate < preposition > .\n");
}
