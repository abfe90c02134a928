// Command-line front end: biharm <experiment> [--config PATH] [--out DIR]
// [--seed U64] [--panels INT] [--grid NX,NY]. Prints a one-line JSON
// summary. Exit codes: 0 ok, 2 bad configuration, 3 numerical failure.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "biharm/driver.hpp"
#include "biharm/linalg.hpp"

namespace {

constexpr int kBadConfig = 2;
constexpr int kNumerical = 3;

biharm::RunConfig load_config(const std::string& experiment, const std::string& path) {
  biharm::RunConfig cfg = biharm::RunConfig::defaults(experiment);
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw biharm::ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw biharm::ConfigError("config file '" + path + "': " + e.what());
  }
  if (j.contains("experiment") && j["experiment"] != experiment)
    throw biharm::ConfigError("config is for experiment " + j["experiment"].dump() + ", not '" + experiment + "'");
  return biharm::RunConfig::from_json(j, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clamped-plate (biharmonic Dirichlet) boundary integral solver"};
  app.require_subcommand(1, 1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  int panels = 0;
  std::vector<int> grid;
  for (const std::string& name : biharm::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "RNG seed (default 12345)");
    sub->add_option("--panels", panels, "total panel count (single resolution)")->check(CLI::PositiveNumber);
    sub->add_option("--grid", grid, "grid size NX,NY")->delimiter(',')->expected(2);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadConfig;
  }

  const std::string experiment = app.get_subcommands().front()->get_name();
  try {
    biharm::RunConfig cfg = load_config(experiment, config_path);
    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--out")) cfg.out_dir = out_dir;
    if (sub->count("--seed")) cfg.seed = seed;
    if (sub->count("--panels")) cfg.panels = {panels};
    if (sub->count("--grid")) {
      cfg.grid_nx = grid[0];
      cfg.grid_ny = grid[1];
    }
    std::cout << biharm::run_experiment(cfg).dump() << std::endl;
  } catch (const biharm::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const biharm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const biharm::SingularMatrixError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
