// Copyright 2026 The parrep-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "parrep/cli.hpp"
#include "parrep/io.hpp"
#include "parrep/replab.hpp"

namespace parrep {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Invocation r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Scratch directory with a few input files, removed on destruction.
class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / "parrep_cli_unit") {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(path("feige.txt")) << game_text(feige_game());
    const auto id = ProjectionConstraint::identity(2);
    std::ofstream(path("perfect.txt"))
        << game_text(ProjectionGame(1, 2, 2, {{0, 0, 1.0, id}, {0, 1, 1.0, id}}));
  }
  ~Workspace() { fs::remove_all(dir_); }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  static std::string game_text(const ProjectionGame& g) {
    std::ostringstream s;
    write_game(s, g);
    return s.str();
  }
  fs::path dir_;
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("report layout for the two-question suite") {
  const Invocation r = invoke({"rep", "feige-suite"});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema_version"] == cli::kSchemaVersion);
  CHECK(doc["command"] == "rep feige-suite");
  CHECK(doc["passed"] == true);
  CHECK(doc["results"]["value"].get<double>() == doctest::Approx(0.5));
  CHECK(doc["results"]["tensor_collision_sq"].get<double>() == doctest::Approx(0.25));
  CHECK(doc["config"]["format"] == "json");
  CHECK(doc.contains("timestamp"));
  CHECK_FALSE(nlohmann::json::parse(cli::strip_timestamp(r.out)).contains("timestamp"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"game"}).code == cli::kExitUsage);
  CHECK(invoke({"rep", "feige-suite", "--bogus"}).code == cli::kExitUsage);
  CHECK(invoke({"--format", "xml", "rep", "feige-suite"}).code == cli::kExitUsage);
  CHECK(invoke({"reduce", "plan", "--eps", "2", "--alpha", "1", "--c", "1"}).code ==
        cli::kExitUsage);
  const Invocation missing = invoke({"game", "val", "/nonexistent/game.txt"});
  CHECK(missing.code == cli::kExitUsage);
  CHECK_FALSE(missing.err.empty());
}

TEST_CASE("enumeration cap from the flag and the environment") {
  Workspace ws;
  const std::string g = ws.path("feige.txt");
  CHECK(invoke({"--cap", "1", "game", "val", g}).code == cli::kExitCap);
  ::setenv("PARREP_CAP", "1", 1);
  CHECK(invoke({"game", "val", g}).code == cli::kExitCap);
  CHECK(invoke({"--cap", "100", "game", "val", g}).code == cli::kExitOk);
  ::unsetenv("PARREP_CAP");
  CHECK(invoke({"game", "val", g}).code == cli::kExitOk);
}

TEST_CASE("csv output flattens the report") {
  const Invocation r = invoke({"--format", "csv", "rep", "feige-suite"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.rfind("key,value\n", 0) == 0);
  CHECK(r.out.find("\nresults.value,0.5\n") != std::string::npos);
  CHECK(r.out.find("\npassed,true\n") != std::string::npos);
  CHECK(cli::strip_timestamp(r.out).find("timestamp.") == std::string::npos);
}

TEST_CASE("output file and game output") {
  Workspace ws;
  const std::string report = ws.path("report.json");
  const Invocation r = invoke({"-o", report, "game", "tensor", ws.path("feige.txt"),
                               "--power", "2", "--game-out", ws.path("sq.txt")});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(report);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["passed"] == true);
  const ProjectionGame sq = load_game(ws.path("sq.txt"));
  CHECK(sq.bob_count() == 4);
  CHECK(sq.alphabet_size() == 16);
}

TEST_CASE("lambda+ of a satisfiable game") {
  Workspace ws;
  const Invocation r = invoke({"relax", "lambda-plus", ws.path("perfect.txt")});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(r.out)["results"]["lambda_plus"].get<double>() ==
        doctest::Approx(1.0));
}

TEST_CASE("repeated runs agree once timestamps are removed") {
  Workspace ws;
  const std::vector<std::vector<std::string>> cases = {
      {"relax", "valplus", ws.path("feige.txt"), "--seed", "5"},
      {"round", "extract", ws.path("feige.txt"), "--seed", "5", "--trials", "200"},
      {"rep", "sweep", "--pairs", "2", "--seed", "3"},
      {"--format", "csv", "reduce", "gadget", "--m", "8", "--L", "2", "--k", "2",
       "--seed", "1"},
  };
  for (const auto& args : cases) {
    const Invocation a = invoke(args);
    const Invocation b = invoke(args);
    CHECK(a.code == b.code);
    CHECK(cli::strip_timestamp(a.out) == cli::strip_timestamp(b.out));
  }
}

}  // TEST_SUITE

}  // namespace parrep
