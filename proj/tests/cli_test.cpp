// Copyright 2026 The gtt-kernel Authors
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtt/cli.hpp"

namespace gtt {
namespace {

const std::string kSamples = GTT_SAMPLES_DIR;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome gtt(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return kSamples + "/" + name; }

bool has(const std::string& s, const std::string& needle) {
  return s.find(needle) != std::string::npos;
}

TEST(Cli, CheckPrintsType) {
  Outcome r = gtt({"check", "-e", "\\x:Nat. x"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Nat -> Nat\n");
}

TEST(Cli, ProveErrBottom) {
  Outcome r = gtt({"prove", sample("err_bot.gttd")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "RESULT derivation 0 accepted"));
}

TEST(Cli, SemanticCompareFindsCounterexample) {
  Outcome r = gtt({"compare", "--semantic", "-e", "0", "-e", "err[Nat]"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(has(r.out, "COUNTEREXAMPLE 0 <= err[Nat]"));
  EXPECT_TRUE(has(r.out, "right = err"));
  EXPECT_TRUE(has(r.out, "RESULT FAIL"));
  EXPECT_EQ(gtt({"compare", "--semantic", "-e", "err[Nat]", "-e", "0"}).code, 0);
}

TEST(Cli, SyntacticCompare) {
  EXPECT_EQ(gtt({"compare", "--syntactic", "-e", "(\\x:Nat. x) 0", "-e", "0"}).code, 0);
  EXPECT_EQ(gtt({"compare", "--syntactic", "-e", "0", "-e", "1"}).code, 1);
}

TEST(Cli, TypeErrorsAreNegativeWithLocation) {
  Outcome r = gtt({"check", "-e", "0 0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(has(r.err, "<input>:1:")) << r.err;
}

TEST(Cli, UsageAndParseErrors) {
  EXPECT_EQ(gtt({}).code, 2);
  EXPECT_EQ(gtt({"bogus"}).code, 2);
  EXPECT_EQ(gtt({"check"}).code, 2);
  EXPECT_EQ(gtt({"--retract", "maybe", "check", "-e", "0"}).code, 2);
  EXPECT_EQ(gtt({"--bound", "0", "test-model"}).code, 2);
  EXPECT_EQ(gtt({"check", "/nonexistent/file.gtt"}).code, 2);
  Outcome r = gtt({"prove", sample("dyn.txt")});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(has(r.err, "dyn.txt:1:")) << r.err;
  EXPECT_EQ(gtt({"check", "-e", "(0,"}).code, 2);
  EXPECT_EQ(gtt({"derive", "nope"}).code, 2);
}

TEST(Cli, DyncheckReportsEachLine) {
  Outcome r = gtt({"dyncheck", sample("dyn.txt")});
  EXPECT_EQ(r.code, 1);  // `? <= Nat` is not derivable
  EXPECT_TRUE(has(r.out, "RESULT Nat <= ?: derivable"));
  EXPECT_TRUE(has(r.out, "RESULT ? <= Nat: not derivable"));
  EXPECT_EQ(gtt({"dyncheck", "Nat * 1", "? * ?"}).code, 0);
  EXPECT_EQ(gtt({"dyncheck", "?", "Nat"}).code, 1);
}

TEST(Cli, ElaborateNormalizeEval) {
  EXPECT_EQ(gtt({"elaborate", "-e", "up[Nat -> Nat => ? -> ?] (\\x:Nat. x)"}).out,
            "\\x:?. up[Nat => ?] ((\\x':Nat. x') (dn[? => Nat] x))\n");
  EXPECT_EQ(gtt({"normalize", "-e", "dn[? => ?*?] up[Nat => ?] 0"}).out, "err[? * ?]\n");
  EXPECT_EQ(gtt({"--disjointness", "off", "normalize", "-e", "dn[? => ?*?] up[Nat => ?] 0"}).out,
            "(fst (dn[? => ? * ?] (up[Nat => ?] 0)), snd (dn[? => ? * ?] (up[Nat => ?] 0)))\n");
  EXPECT_EQ(gtt({"eval", "-e", "dn[? => ?*?] up[Nat => ?] 0"}).out, "(err, err) : ? * ?\n");
  EXPECT_EQ(gtt({"eval", "-e", "up[Nat => ?] 1"}).out, "1 : ?\n");
  EXPECT_EQ(gtt({"normalize", sample("terms.gtt")}).code, 0);
}

TEST(Cli, SignatureFiles) {
  Outcome r = gtt({"--sig", sample("bool.gttsig"), "check", "-e", "not(up[True => Bool] tt())"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "Bool\n");
  // Function symbols have no denotation in the model.
  EXPECT_EQ(gtt({"--sig", sample("bool.gttsig"), "eval", "-e", "tt()"}).code, 2);
}

TEST(Cli, DeriveWritesCheckableFile) {
  auto path = std::filesystem::temp_directory_path() / "gtt_cli_test_strict_dn.gttd";
  Outcome r = gtt({"derive", "strict_dn", "Nat", "?", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "RESULT strict_dn Nat, ?: 2 derivations accepted"));
  EXPECT_EQ(gtt({"prove", path.string()}).code, 0);
  Outcome off = gtt({"--retract", "off", "prove", path.string()});
  EXPECT_EQ(off.code, 1);
  EXPECT_TRUE(has(off.out, "rejected"));
  EXPECT_EQ(gtt({"--retract", "off", "derive", "strict_dn", "Nat", "?"}).code, 1);
  EXPECT_EQ(gtt({"derive", "decompose_up", "?", "Nat", "?"}).code, 1);  // hypothesis fails
  std::filesystem::remove(path);
}

TEST(Cli, TestTheorems) {
  Outcome r = gtt({"test-theorems", "--size", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "RESULT PASS instances="));
  Outcome off = gtt({"--retract", "off", "test-theorems", "--size", "2"});
  EXPECT_EQ(off.code, 0);
  EXPECT_TRUE(has(off.out, "SKIPPED(flag) strict_dn"));
}

TEST(Cli, TestModel) {
  Outcome r = gtt({"test-model"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "RESULT tree-order PASS trees=147"));
  EXPECT_TRUE(has(r.out, "RESULT equipment PASS"));
}

// Property: identical inputs and flags give byte-identical reports.
TEST(Cli, Deterministic) {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"compare", "--semantic", sample("compare.gtt")},
        {"test-theorems", "--size", "2"},
        {"derive", "cast_l", "Nat", "Nat", "?"}}) {
    Outcome a = gtt(args), b = gtt(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

// The installed binary follows the same exit-status contract as the library
// entry point on every sample fixture.
TEST(CliBinary, ExitStatusOnFixtures) {
  struct Case {
    std::string args;
    int code;
  };
  std::vector<Case> cases{
      {"check " + sample("terms.gtt"), 0},
      {"dyncheck " + sample("dyn.txt"), 1},
      {"prove " + sample("err_bot.gttd"), 0},
      {"normalize " + sample("terms.gtt"), 0},
      {"compare --semantic " + sample("compare.gtt"), 1},
      {"--sig " + sample("bool.gttsig") + " test-theorems --size 1", 0},
      {"prove " + sample("terms.gtt"), 2},
      {"frobnicate", 2},
  };
  for (const Case& c : cases) {
    std::string cmd = std::string(GTT_CLI) + " " + c.args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    ASSERT_TRUE(WIFEXITED(status)) << cmd;
    EXPECT_EQ(WEXITSTATUS(status), c.code) << cmd;
  }
}

}  // namespace
}  // namespace gtt
