// Runs the biharm executable and checks its exit codes and outputs.
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(BIHARM_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("biharm_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("bad invocations exit with code 2") {
  const fs::path dir = scratch("bad");
  CHECK(run("") == 2);
  CHECK(run("nonsense") == 2);
  CHECK(run("solve --panels -3") == 2);
  CHECK(run("solve --config " + (dir / "missing.json").string()) == 2);

  std::ofstream(dir / "typo.json") << R"({"pannels": [32]})";
  CHECK(run("solve --config " + (dir / "typo.json").string()) == 2);
  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK(run("solve --config " + (dir / "broken.json").string()) == 2);
  std::ofstream(dir / "other.json") << R"({"experiment": "greens"})";
  CHECK(run("solve --config " + (dir / "other.json").string()) == 2);
  std::ofstream(dir / "overlap.json") << R"({"holes": true, "hole_centers": [[0.5, 0.25], [0.52, 0.25]]})";
  CHECK(run("solve --config " + (dir / "overlap.json").string()) == 2);
  fs::remove_all(dir);
}

TEST_CASE("a small solve writes its summary") {
  const fs::path dir = scratch("solve");
  std::ofstream(dir / "cfg.json") << R"({"panels": [32], "seed": 3})";
  CHECK(run("solve --config " + (dir / "cfg.json").string() + " --out " + (dir / "out").string()) == 0);
  std::ifstream in(dir / "out" / "solve.json");
  REQUIRE(in);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["config"]["seed"] == 3);
  CHECK(j["config"]["panels"] == nlohmann::json::array({32}));
  CHECK(j["result"]["eps"].get<double>() < 1e-4);
  fs::remove_all(dir);
}
