#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "biharm/driver.hpp"
#include "biharm/kernels.hpp"
#include "doctest.h"

using namespace biharm;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// drops timing fields, which are the only run-to-run differences allowed
json strip_seconds(json j) {
  if (j.is_object()) {
    j.erase("seconds");
    for (auto& [k, v] : j.items()) v = strip_seconds(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_seconds(v);
  }
  return j;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("biharm_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("SplitMix64 reference sequence") {
  SplitMix64 a(1234567);
  CHECK(a.next() == 6457827717110365317ULL);
  CHECK(a.next() == 3203168211198807973ULL);
  CHECK(a.next() == 9817491932198370423ULL);

  SplitMix64 b(12345), c(12345);
  for (int i = 0; i < 1000; ++i) {
    const double u = b.uniform();
    CHECK(u == static_cast<double>(c.next() >> 11) * 0x1.0p-53);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("manufactured solution and its gradient") {
  ManufacturedSolution ms{{Vec2(1.2, 0.3), Vec2(-0.2, 0.25)}, {0.4, 0.9}};
  const Vec2 x(0.3, 0.2);
  CHECK(ms.w(x) == doctest::Approx(0.4 * biharmonic_green(x, Vec2(1.2, 0.3)) + 0.9 * biharmonic_green(x, Vec2(-0.2, 0.25))));
  const double h = 1e-5;
  const Vec2 fd((ms.w(x + Vec2(h, 0)) - ms.w(x - Vec2(h, 0))) / (2 * h), (ms.w(x + Vec2(0, h)) - ms.w(x - Vec2(0, h))) / (2 * h));
  CHECK((ms.grad(x) - fd).norm() < 1e-8);
}

TEST_CASE("instances follow the documented draw order") {
  SUBCASE("simply connected") {
    RunConfig cfg = RunConfig::defaults("convergence-simply");
    Instance in = make_instance(cfg);
    REQUIRE(in.solution.sources.size() == 4);
    REQUIRE(in.targets.size() == 4);
    SplitMix64 rng(cfg.seed);
    std::vector<double> d;
    for (int i = 0; i < 16; ++i) d.push_back(rng.uniform(-0.05, 0.05));
    CHECK(in.solution.sources[0].x() == cfg.a + 0.2 + d[0]);
    CHECK(in.solution.sources[0].y() == cfg.b / 2 + d[1]);
    CHECK(in.targets[0].x() == cfg.a / 4 + d[8]);
    CHECK(in.targets[3].y() == 3 * cfg.b / 4 + d[15]);
    for (int j = 0; j < 4; ++j) CHECK(in.solution.strengths[j] == rng.uniform());
  }
  SUBCASE("ten obstacles") {
    RunConfig cfg = RunConfig::defaults("convergence-multi");
    REQUIRE(cfg.hole_centers.size() == 10);
    Instance in = make_instance(cfg);
    REQUIRE(in.solution.sources.size() == 10);
    REQUIRE(in.targets.size() == 12);
    for (std::size_t i = 0; i < 10; ++i)
      CHECK((in.solution.sources[i] - cfg.hole_centers[i]).norm() < cfg.hole_radius);
    for (double q : in.solution.strengths) {
      CHECK(q >= 0.0);
      CHECK(q < 1.0);
    }
  }
  SUBCASE("same seed, same instance; new seed, new instance") {
    RunConfig cfg = RunConfig::defaults("solve");
    Instance a = make_instance(cfg), b = make_instance(cfg);
    CHECK(a.solution.sources[2] == b.solution.sources[2]);
    cfg.seed = 99;
    CHECK(make_instance(cfg).solution.sources[2] != a.solution.sources[2]);
  }
}

TEST_CASE("panel layout splits by arclength") {
  RunConfig cfg = RunConfig::defaults("convergence-multi");
  PanelLayout l = panel_layout(cfg, 88, 88);
  CHECK(l.outer_panels == 48);
  CHECK(l.hole_panels == 4);
  l = panel_layout(cfg, 176, 88);
  CHECK(l.outer_panels == 96);
  CHECK(l.hole_panels == 8);
  CHECK_THROWS_AS(panel_layout(cfg, 45, 45), ConfigError);

  RunConfig simple = RunConfig::defaults("convergence-simply");
  REQUIRE(simple.grading == CornerGrading::graded);
  CHECK(panel_layout(simple, 48, 48).corner_levels == 0);
  CHECK(panel_layout(simple, 96, 48).corner_levels == 1);
  CHECK(panel_layout(simple, 192, 48).corner_levels == 2);
  CHECK(panel_layout(simple, 144, 48).outer_panels == 144);
}

TEST_CASE("config parsing") {
  RunConfig base = RunConfig::defaults("solve");
  RunConfig c = RunConfig::from_json(json::parse(R"({"a": 2.0, "panels": [32, 64], "seed": 7, "grid": [10, 5],
                                                     "corner_grading": "graded"})"),
                                     base);
  CHECK(c.a == 2.0);
  CHECK(c.panels == std::vector<int>{32, 64});
  CHECK(c.seed == 7);
  CHECK(c.grid_nx == 10);
  CHECK(c.grid_ny == 5);
  CHECK(c.grading == CornerGrading::graded);

  // round trip
  RunConfig r = RunConfig::from_json(c.to_json(), RunConfig::defaults("solve"));
  CHECK(r.to_json() == c.to_json());

  // switching experiment picks up its defaults before the overrides
  RunConfig m = RunConfig::from_json(json::parse(R"({"experiment": "greens"})"), base);
  CHECK(m.holes);
  CHECK(m.hole_centers.size() == 10);

  CHECK_THROWS_AS(RunConfig::from_json(json::parse(R"({"pannels": [1]})"), base), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(json::parse(R"({"a": "wide"})"), base), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(json::parse(R"({"corner_grading": "steep"})"), base), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json(json::parse("[1, 2]"), base), ConfigError);
  CHECK_THROWS_AS(RunConfig::defaults("nonsense"), ConfigError);
}

TEST_CASE("config validation") {
  for (const std::string& name : experiment_names()) CHECK_NOTHROW(RunConfig::defaults(name).validate());

  auto bad = [](RunConfig c) { CHECK_THROWS_AS(c.validate(), ConfigError); };
  RunConfig c = RunConfig::defaults("solve");
  c.panels = {};
  bad(c);
  c.panels = {64, 32};
  bad(c);
  c.panels = {4};
  bad(c);
  c = RunConfig::defaults("solve");
  c.a = -1.0;
  bad(c);
  c = RunConfig::defaults("solve");
  c.grid_nx = 1;
  bad(c);

  RunConfig m = RunConfig::defaults("convergence-multi");
  m.holes = false;
  bad(m);
  m = RunConfig::defaults("convergence-multi");
  m.hole_centers[1] = m.hole_centers[0] + Vec2(0.05, 0.0);
  bad(m);
  m = RunConfig::defaults("convergence-multi");
  m.hole_centers[0] = Vec2(0.02, 0.25);
  bad(m);
  m = RunConfig::defaults("convergence-multi");
  m.hole_radius = 0.0;
  bad(m);

  RunConfig k = RunConfig::defaults("condition-study");
  k.condition_h = {};
  bad(k);
  k = RunConfig::defaults("condition-study");
  k.condition_panels = 8;
  bad(k);
}

TEST_CASE("relative error and fitted order") {
  CHECK(relative_error({1.0, 2.0}, {1.0, 2.0}) == 0.0);
  CHECK(relative_error({1.1, 2.0}, {1.0, 2.0}) == doctest::Approx(0.1 / std::sqrt(5.0)));
  std::vector<ConvergenceRow> rows;
  for (int n : {100, 200, 400}) {
    ConvergenceRow r;
    r.system_size = n;
    r.eps = std::pow(n, -4.0);
    rows.push_back(r);
  }
  CHECK(fitted_order(rows) == doctest::Approx(4.0));
}

TEST_CASE("CSV writers use the fixed columns") {
  const auto dir = scratch_dir("csv");
  std::filesystem::create_directories(dir);
  ConvergenceRow r;
  r.n_panels = 48;
  r.n_d = 768;
  r.system_size = 1537;
  r.eps = 3.25e-6;
  write_convergence_csv((dir / "c.csv").string(), {r});
  CHECK(slurp(dir / "c.csv") == "n_panels,n_d,system_size,eps\n48,768,1537,3.250000e-06\n");
  write_condition_csv((dir / "k.csv").string(), {{0.05, 66.0, 1.5e6}});
  CHECK(slurp(dir / "k.csv") == "h,kappa_ours,kappa_farkas\n0.05,6.600000e+01,1.500000e+06\n");
  CHECK_THROWS(write_json((dir / "missing" / "x.json").string(), json::object()));
  std::filesystem::remove_all(dir);
}

TEST_CASE("a run is reproducible") {
  RunConfig cfg = RunConfig::defaults("eval-grid");
  cfg.holes = true;
  cfg.panels = {88};
  cfg.grid_nx = 40;
  cfg.grid_ny = 20;
  const auto d1 = scratch_dir("run");
  cfg.out_dir = d1.string();
  json s1 = run_experiment(cfg);
  const std::string csv = slurp(d1 / "grid.csv");
  const json meta = strip_seconds(json::parse(slurp(d1 / "grid.json")));
  json s2 = run_experiment(cfg);
  CHECK(csv == slurp(d1 / "grid.csv"));
  CHECK(meta == strip_seconds(json::parse(slurp(d1 / "grid.json"))));
  CHECK(s1["eps"] == s2["eps"]);
  CHECK(s1["eps"].get<double>() < 1e-6);

  // header plus one row per grid point, NaN outside
  std::ifstream in(d1 / "grid.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,inside,w,w_ref,abs_err");
  int rows = 0, outside = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.find(",0,nan,nan,nan") != std::string::npos) ++outside;
  }
  CHECK(rows == 40 * 20);
  CHECK(outside > 0);
  std::filesystem::remove_all(d1);
}
