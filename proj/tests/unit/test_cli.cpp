/*
 * Copyright 2026 The negsolve Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "negsolve/negsolve.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"

using negsolve::testing::fixture_path;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = negsolve::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "negsolve_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("check reports classification and soundness") {
  const Result r = run({"check", fixture_path("fig1_left_modified.ng")});
  CHECK(r.code == 0);
  CHECK(r.out.find("sound: no") != std::string::npos);
  CHECK(r.out.find("witness: (n0,st)(n1,yes)") != std::string::npos);

  const Result j = run({"check", fixture_path("fig3_middle.ng"), "--format", "json"});
  REQUIRE(j.code == 0);
  const json v = json::parse(j.out);
  CHECK(v["classification"]["weakly_deterministic"] == true);
  CHECK(v["classification"]["deterministic"] == false);
  CHECK(v["soundness"]["sound"] == true);
  CHECK(v["witness"].is_null());
}

TEST_CASE("solve picks a solver and reports the winner") {
  const Result fast = run({"solve", fixture_path("fig1_right.ng"), "--coalition", "D,M",
                           "--format", "json"});
  REQUIRE(fast.code == 0);
  const json f = json::parse(fast.out);
  CHECK(f["solver"] == "fast");
  CHECK(f["solver_reason"] == "wd2 and sound");
  CHECK(f["winner"] == 1);
  CHECK(f["attractor"].contains("nf"));

  const Result general = run({"solve", fixture_path("fig1_left_modified.ng"), "--coalition",
                              "D,F", "--format", "json"});
  REQUIRE(general.code == 0);
  const json g = json::parse(general.out);
  CHECK(g["solver"] == "general");
  CHECK(g["winner"] == 1);

  const Result text = run({"solve", fixture_path("fig2.ng"), "--coalition", "D1"});
  CHECK(text.code == 0);
  CHECK(text.out.find("solver: fast (auto: wd2 and sound)") != std::string::npos);
  CHECK(text.out.find("winner: 2") != std::string::npos);
}

TEST_CASE("concluding outcome from the command line") {
  const Result r = run({"solve", fixture_path("fig4.ng"), "--game", "outcome", "--coalition",
                        "F,D1", "--goals", "D1: n2.yes n3.yes n4.yes n5.yes; D2: n2.no n3.no n6.no n7.no",
                        "--format", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["winner"] == 2);
  CHECK(j["attractor"].contains("good_D1"));
}

TEST_CASE("the fast solver refuses unsound arenas") {
  const Result r = run({"solve", fixture_path("fig1_left_modified.ng"), "--solver", "fast"});
  CHECK(r.code == 3);
  CHECK(r.err.find("fast solver refused") != std::string::npos);
}

TEST_CASE("usage, parse and budget errors map to exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"solve", fixture_path("fig2.ng"), "--solver", "quick"}).code == 1);
  CHECK(run({"solve", fixture_path("fig2.ng"), "--goals", "D1: n2.yes"}).code == 1);
  CHECK(run({"check", scratch("missing.ng").string()}).code == 1);

  const auto bad = scratch("bad.ng");
  negsolve::write_file(bad, "negotiation x\nagents a\natom n0 [a\n");
  const Result p = run({"check", bad.string()});
  CHECK(p.code == 2);
  CHECK(p.err.find("bad.ng:3:") != std::string::npos);
  CHECK(p.err.find("[SyntaxError]") != std::string::npos);

  const auto invalid = scratch("invalid.ng");
  negsolve::write_file(invalid,
                       "negotiation x\nagents a\natom n0 [a]\natom nf [a]\ninitial n0\nfinal nf\n"
                       "n0.st : a -> {}\nnf.end : a -> {}\n");
  CHECK(run({"check", invalid.string()}).code == 3);

  CHECK(run({"check", fixture_path("fig4.ng"), "--budget", "3"}).code == 4);
  setenv("NEGSOLVE_STATE_BUDGET", "3", 1);
  CHECK(run({"check", fixture_path("fig4.ng")}).code == 4);
  CHECK(run({"check", fixture_path("fig4.ng"), "--budget", "100000"}).code == 0);
  unsetenv("NEGSOLVE_STATE_BUDGET");
}

TEST_CASE("reduce writes an arena whose winner matches acceptance") {
  const auto out = scratch("accept2_sound.ng");
  const Result r = run({"reduce", fixture_path("accept2.atm"), "--variant", "sound", "-o",
                        out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("expected winner: 1") != std::string::npos);
  const Result s = run({"solve", out.string(), "--use-owners", "--format", "json"});
  REQUIRE(s.code == 0);
  CHECK(json::parse(s.out)["winner"] == 1);

  const Result stdout_only = run({"reduce", fixture_path("reject2.atm"), "--variant", "basic"});
  CHECK(stdout_only.code == 0);
  CHECK(stdout_only.out.rfind("negotiation", 0) == 0);
  CHECK(stdout_only.err.find("expected winner: 2") != std::string::npos);
}

TEST_CASE("gen is reproducible") {
  const Result a = run({"gen", "--seed", "5", "--agents", "3"});
  const Result b = run({"gen", "--seed", "5", "--agents", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_NOTHROW(negsolve::load_arena(a.out));
}

TEST_CASE("dot export") {
  const Result r = run({"dot", fixture_path("minimal.ng")});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("digraph", 0) == 0);
  const Result g = run({"dot", fixture_path("fig1_left_modified.ng"), "--reachability"});
  CHECK(g.code == 0);
  CHECK(g.out.find("fillcolor=red") != std::string::npos);
}
