#include "biharm/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "biharm/kernels.hpp"
#include "biharm/linalg.hpp"

namespace biharm {

using nlohmann::json;

// ---------------------------------------------------------------- rng

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

// ---------------------------------------------------------------- config

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"solve",           "convergence-simply", "condition-study",
                                              "convergence-multi", "greens",             "eval-grid"};
  return names;
}

std::vector<Vec2> default_hole_centers() {
  std::vector<Vec2> c;
  for (int i = 0; i < 5; ++i) c.emplace_back(0.12 + 0.2 * i, 0.15);
  for (int i = 0; i < 5; ++i) c.emplace_back(0.08 + 0.2 * i, 0.35);
  return c;
}

RunConfig RunConfig::defaults(const std::string& experiment) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), experiment) == names.end())
    throw ConfigError("unknown experiment '" + experiment + "'");
  RunConfig c;
  c.experiment = experiment;
  c.hole_centers = default_hole_centers();
  if (experiment == "convergence-simply") {
    c.panels = {48, 72, 96, 144};
    c.grading = CornerGrading::graded;
  } else if (experiment == "convergence-multi") {
    c.holes = true;
    c.panels = {88, 132, 176};
  } else if (experiment == "greens") {
    c.holes = true;
    c.panels = {176};
  } else {
    c.panels = {96};
  }
  return c;
}

namespace {

template <class T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

const char* grading_name(CornerGrading g) { return g == CornerGrading::graded ? "graded" : "resolve"; }

}  // namespace

RunConfig RunConfig::from_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known{"experiment", "a",     "b",    "h",       "holes",
                                              "hole_radius", "hole_centers", "panels",  "condition_h",
                                              "condition_panels", "corner_grading", "seed", "grid", "out"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key '" + key + "'");

  if (j.contains("experiment")) {
    const std::string e = get<std::string>(j, "experiment");
    if (e != c.experiment) c = defaults(e);  // experiment first, then overrides
  }
  if (j.contains("a")) c.a = get<double>(j, "a");
  if (j.contains("b")) c.b = get<double>(j, "b");
  if (j.contains("h")) c.h = get<double>(j, "h");
  if (j.contains("holes")) c.holes = get<bool>(j, "holes");
  if (j.contains("hole_radius")) c.hole_radius = get<double>(j, "hole_radius");
  if (j.contains("hole_centers")) {
    c.hole_centers.clear();
    for (const auto& p : get<std::vector<std::array<double, 2>>>(j, "hole_centers")) c.hole_centers.emplace_back(p[0], p[1]);
  }
  if (j.contains("panels")) c.panels = get<std::vector<int>>(j, "panels");
  if (j.contains("condition_h")) c.condition_h = get<std::vector<double>>(j, "condition_h");
  if (j.contains("condition_panels")) c.condition_panels = get<int>(j, "condition_panels");
  if (j.contains("corner_grading")) {
    const std::string g = get<std::string>(j, "corner_grading");
    if (g == "graded")
      c.grading = CornerGrading::graded;
    else if (g == "resolve")
      c.grading = CornerGrading::resolve;
    else
      throw ConfigError("corner_grading must be 'graded' or 'resolve'");
  }
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("grid")) {
    const auto g = get<std::array<int, 2>>(j, "grid");
    c.grid_nx = g[0];
    c.grid_ny = g[1];
  }
  if (j.contains("out")) c.out_dir = get<std::string>(j, "out");
  return c;
}

json RunConfig::to_json() const {
  json centers = json::array();
  for (const Vec2& p : hole_centers) centers.push_back({p.x(), p.y()});
  return {{"experiment", experiment},
          {"a", a},
          {"b", b},
          {"h", h},
          {"holes", holes},
          {"hole_radius", hole_radius},
          {"hole_centers", centers},
          {"panels", panels},
          {"condition_h", condition_h},
          {"condition_panels", condition_panels},
          {"corner_grading", grading_name(grading)},
          {"seed", seed},
          {"grid", {grid_nx, grid_ny}},
          {"out", out_dir}};
}

namespace {

// Gaussian rounding must stay well inside each side.
void check_rounding(double a, double b, double h) {
  if (!(h > 0.0)) throw ConfigError("h must be positive");
  if (6.0 * h * h >= 0.5 * std::min(a, b)) throw ConfigError("h too large: rounded corners overlap");
}

}  // namespace

void RunConfig::validate() const {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), experiment) == names.end())
    throw ConfigError("unknown experiment '" + experiment + "'");
  if (!(a > 0.0 && b > 0.0)) throw ConfigError("a and b must be positive");
  check_rounding(a, b, h);
  if (experiment == "condition-study") {
    if (condition_h.empty()) throw ConfigError("condition_h is empty");
    for (double hc : condition_h) check_rounding(a, b, hc);
    if (condition_panels < 16) throw ConfigError("condition_panels must be at least 16");
  } else {
    if (panels.empty()) throw ConfigError("panels is empty");
    if (!std::is_sorted(panels.begin(), panels.end())) throw ConfigError("panels must be increasing");
    const int min_panels = holes ? 8 + 4 * static_cast<int>(hole_centers.size()) : 8;
    for (int p : panels)
      if (p < min_panels) throw ConfigError("panels: at least " + std::to_string(min_panels) + " needed");
  }
  if (holes || experiment == "convergence-multi" || experiment == "greens") {
    if (!holes) throw ConfigError(experiment + " needs holes = true");
    if (hole_centers.empty()) throw ConfigError("hole_centers is empty");
    if (!(hole_radius > 0.0)) throw ConfigError("hole_radius must be positive");
    for (std::size_t i = 0; i < hole_centers.size(); ++i) {
      const Vec2& c = hole_centers[i];
      const double margin = 2.0 * h * h + hole_radius;
      if (c.x() - margin <= 0.0 || c.x() + margin >= a || c.y() - margin <= 0.0 || c.y() + margin >= b)
        throw ConfigError("obstacle " + std::to_string(i) + " is not inside the bar");
      for (std::size_t k = 0; k < i; ++k)
        if ((c - hole_centers[k]).norm() <= 2.0 * hole_radius) throw ConfigError("obstacles overlap");
    }
  }
  if (grid_nx < 2 || grid_ny < 2) throw ConfigError("grid needs at least 2 x 2 points");
}

// ---------------------------------------------------------------- instances

double ManufacturedSolution::w(const Vec2& x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < sources.size(); ++j) s += strengths[j] * biharmonic_green(x, sources[j]);
  return s;
}

Vec2 ManufacturedSolution::grad(const Vec2& x) const {
  Vec2 g = Vec2::Zero();
  for (std::size_t j = 0; j < sources.size(); ++j) g += strengths[j] * biharmonic_green_gradient(x, sources[j]);
  return g;
}

Instance make_instance(const RunConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  Instance in;
  const double a = cfg.a, b = cfg.b;
  if (!cfg.holes) {
    const double d = 0.05;
    auto off = [&] {
      const double dx = rng.uniform(-d, d);
      return Vec2(dx, rng.uniform(-d, d));
    };
    for (const Vec2& s : {Vec2(a + 0.2, b / 2), Vec2(a / 2, b + 0.2), Vec2(-0.2, b / 2), Vec2(a / 2, -0.2)})
      in.solution.sources.push_back(s + off());
    for (const Vec2& t : {Vec2(a / 4, b / 4), Vec2(a / 4, 3 * b / 4), Vec2(3 * a / 4, b / 4), Vec2(3 * a / 4, 3 * b / 4)})
      in.targets.push_back(t + off());
  } else {
    const double d = 0.5 * cfg.hole_radius;
    auto off = [&] {
      const double dx = rng.uniform(-d, d);
      return Vec2(dx, rng.uniform(-d, d));
    };
    for (const Vec2& c : cfg.hole_centers) in.solution.sources.push_back(c + off());
    for (int i = 0; i < 4; ++i) in.targets.push_back(Vec2(0.22 + 0.2 * i, 0.05) + off());
    for (int i = 0; i < 4; ++i) in.targets.push_back(Vec2(0.22 + 0.2 * i, 0.25) + off());
    for (int i = 0; i < 4; ++i) in.targets.push_back(Vec2(0.18 + 0.2 * i, 0.45) + off());
    for (std::size_t i = 0; i < cfg.hole_centers.size(); ++i)
      if ((in.solution.sources[i] - cfg.hole_centers[i]).norm() >= cfg.hole_radius)
        throw ConfigError("source " + std::to_string(i) + " lies outside its obstacle");
  }
  for (std::size_t j = 0; j < in.solution.sources.size(); ++j) in.solution.strengths.push_back(rng.uniform());
  return in;
}

// ---------------------------------------------------------------- layout

PanelLayout panel_layout(const RunConfig& cfg, int total, int coarsest_total) {
  PanelLayout l;
  const int nh = cfg.holes ? static_cast<int>(cfg.hole_centers.size()) : 0;
  if (nh > 0) {
    const double outer_len = 2.0 * (cfg.a + cfg.b), circ = 2.0 * pi * cfg.hole_radius;
    auto per_hole = [&](int t) {
      return std::max(4, static_cast<int>(std::lround(t * circ / (outer_len + nh * circ))));
    };
    l.hole_panels = per_hole(total);
    l.outer_panels = total - nh * l.hole_panels;
    if (l.outer_panels < 8) throw ConfigError("too few panels for the outer boundary");
    coarsest_total -= nh * per_hole(coarsest_total);
  } else {
    l.outer_panels = total;
  }
  if (cfg.grading == CornerGrading::graded) {
    l.corner_levels = coarsest_total > 0 && l.outer_panels > coarsest_total
                          ? static_cast<int>(std::floor(std::log2(static_cast<double>(l.outer_panels) / coarsest_total)))
                          : 0;
  } else {
    l.corner_levels = rounded_rectangle_corner_levels(cfg.a, cfg.b, cfg.h * cfg.h, l.outer_panels);
  }
  return l;
}

Domain build_domain(const RunConfig& cfg, const PanelLayout& layout) {
  BoundaryComponent outer = make_rounded_rectangle(cfg.a, cfg.b, cfg.h * cfg.h, layout.outer_panels, layout.corner_levels);
  std::vector<BoundaryComponent> holes;
  if (cfg.holes)
    for (const Vec2& c : cfg.hole_centers) holes.push_back(make_circle(c, cfg.hole_radius, layout.hole_panels));
  return Domain(std::move(outer), std::move(holes));
}

double relative_error(const std::vector<double>& computed, const std::vector<double>& exact) {
  if (computed.size() != exact.size() || exact.empty()) throw std::invalid_argument("relative_error: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    num += (computed[i] - exact[i]) * (computed[i] - exact[i]);
    den += exact[i] * exact[i];
  }
  return std::sqrt(num / den);
}

// ---------------------------------------------------------------- experiments

namespace {

// Runs f, re-throwing numerical failures tagged with the stage name.
template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericalError(std::string(name) + ": " + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SolveReport run_solve(const RunConfig& cfg, int total, int coarsest_total) {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance in = make_instance(cfg);
  SolveReport r;
  r.layout = panel_layout(cfg, total, coarsest_total);
  Domain dom = stage("geometry", [&] { return build_domain(cfg, r.layout); });
  for (const Vec2& t : in.targets)
    if (!dom.contains(t)) throw ConfigError("target outside the domain");
  if (!cfg.holes)
    for (const Vec2& s : in.solution.sources)
      if (dom.contains(s)) throw ConfigError("source inside the domain");

  const ManufacturedSolution& ms = in.solution;
  ConjugateSystem conj = stage("conjugate", [&] { return ConjugateSystem(dom); });
  DirichletData data = dirichlet_data_from_field(
      dom, [&](const Vec2& x) { return ms.w(x); }, [&](const Vec2& x) { return ms.grad(x); });
  BlockSystem sys = stage("assemble", [&] { return assemble_block_system(dom, conj, data); });
  Solution sol = stage("solve", [&] { return solve_block_system(dom, conj, sys); });

  std::vector<double> wc, we;
  stage("evaluate", [&] {
    for (const Vec2& t : in.targets) {
      wc.push_back(eval_w_total(sol.rep, field_target(t)));
      we.push_back(ms.w(t));
    }
    return 0;
  });
  r.n_d = dom.num_nodes();
  r.system_size = sys.size();
  r.eps = relative_error(wc, we);
  r.relative_residual = sol.relative_residual;
  r.max_flux = boundary_flux(sol.rep).cwiseAbs().maxCoeff();
  r.seconds = seconds_since(t0);
  if (!std::isfinite(r.eps)) throw NumericalError("evaluate: non-finite error");
  return r;
}

namespace {

std::vector<ConvergenceRow> run_ladder(const RunConfig& cfg) {
  std::vector<ConvergenceRow> rows;
  for (int p : cfg.panels) {
    ConvergenceRow row;
    row.report = run_solve(cfg, p, cfg.panels.front());
    row.n_panels = p;
    row.n_d = row.report.n_d;
    row.system_size = row.report.system_size;
    row.eps = row.report.eps;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<ConvergenceRow> run_convergence_simply_connected(const RunConfig& cfg) {
  if (cfg.holes) throw ConfigError("convergence-simply: holes must be false");
  return run_ladder(cfg);
}

std::vector<ConvergenceRow> run_convergence_multiply_connected(const RunConfig& cfg) {
  if (!cfg.holes) throw ConfigError("convergence-multi: holes must be true");
  return run_ladder(cfg);
}

double fitted_order(const std::vector<ConvergenceRow>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("fitted_order: need two rows");
  double mx = 0, my = 0;
  for (const auto& r : rows) {
    mx += std::log(r.system_size);
    my += std::log(r.eps);
  }
  mx /= rows.size();
  my /= rows.size();
  double sxy = 0, sxx = 0;
  for (const auto& r : rows) {
    const double dx = std::log(r.system_size) - mx;
    sxy += dx * (std::log(r.eps) - my);
    sxx += dx * dx;
  }
  return -sxy / sxx;
}

std::vector<ConditionRow> run_condition_study(const RunConfig& cfg) {
  std::vector<ConditionRow> rows;
  for (double h : cfg.condition_h) {
    const double width = h * h;
    const int levels = rounded_rectangle_corner_levels(cfg.a, cfg.b, width, cfg.condition_panels);
    Domain dom = stage("geometry", [&] {
      return Domain(make_rounded_rectangle(cfg.a, cfg.b, width, cfg.condition_panels, levels));
    });
    ConditionRow row;
    row.h = h;
    row.kappa_ours = stage("condition (ours)", [&] {
      ConjugateSystem conj(dom);
      return condition_number(assemble_block_system(dom, conj, DirichletData{}, true).matrix);
    });
    row.kappa_farkas = stage("condition (Farkas)", [&] { return condition_number(assemble_farkas(dom, nullptr, true).matrix); });
    rows.push_back(row);
  }
  return rows;
}

GreensResult run_greens_function(const RunConfig& cfg) {
  if (!cfg.holes) throw ConfigError("greens: holes must be true");
  const Instance in = make_instance(cfg);
  GreensResult r;
  r.loads = in.targets;
  const PanelLayout layout = panel_layout(cfg, cfg.panels.back(), cfg.panels.front());
  Domain dom = stage("geometry", [&] { return build_domain(cfg, layout); });
  for (const Vec2& t : r.loads)
    if (!dom.contains(t)) throw ConfigError("load point outside the domain");

  // -Delta^2 w = delta: particular solution -(1/8 pi) r^2 log r
  auto wp_of = [](const std::vector<Vec2>& loads) {
    ManufacturedSolution m;
    m.sources = loads;
    m.strengths.assign(loads.size(), -1.0 / (8.0 * pi));
    return m;
  };
  ConjugateSystem conj = stage("conjugate", [&] { return ConjugateSystem(dom); });
  BlockSolver solver = stage("assemble", [&] {
    return BlockSolver(dom, conj, assemble_block_system(dom, conj, DirichletData{}, true));
  });
  auto homogeneous = [&](const ManufacturedSolution& wp) {
    DirichletData data = dirichlet_data_from_field(
        dom, [&](const Vec2& x) { return -wp.w(x); }, [&](const Vec2& x) { return Vec2(-wp.grad(x)); });
    return stage("solve", [&] { return solver.solve(data); });
  };

  const ManufacturedSolution wp = wp_of(r.loads);
  const Solution sol = homogeneous(wp);
  for (int i = 0; i < dom.num_nodes(); ++i) {
    r.max_wp = std::max(r.max_wp, std::abs(wp.w(dom.nodes()[i])));
    r.max_grad_wp = std::max(r.max_grad_wp, wp.grad(dom.nodes()[i]).norm());
  }
  // |w| = |w_h + w_p| and |dw/dn| at off-node boundary points
  r.residual = stage("residual", [&] {
    return boundary_residual(
        sol.rep, [&](const Vec2& x) { return -wp.w(x); }, [&](const Vec2& x) { return Vec2(-wp.grad(x)); });
  });

  // symmetry of the domain Green's function from two single-load solves
  r.pair_a = 0;
  r.pair_b = 1;
  const Vec2 ta = r.loads[r.pair_a], tb = r.loads[r.pair_b];
  const ManufacturedSolution pa = wp_of({ta}), pb = wp_of({tb});
  const Solution sa = homogeneous(pa), sb = homogeneous(pb);
  r.g_ab = pb.w(ta) + eval_w_total(sb.rep, field_target(ta));
  r.g_ba = pa.w(tb) + eval_w_total(sa.rep, field_target(tb));
  r.symmetry = std::abs(r.g_ab - r.g_ba) / std::max(std::abs(r.g_ab), std::abs(r.g_ba));
  for (const Solution* s : {&sol, &sa, &sb}) r.max_flux = std::max(r.max_flux, boundary_flux(s->rep).cwiseAbs().maxCoeff());

  r.grid = stage("grid", [&] {
    FieldGrid g = make_grid(dom, Vec2(0.0, 0.0), Vec2(cfg.a, cfg.b), cfg.grid_nx, cfg.grid_ny);
    eval_field(sol.rep, g);
    for (int i = 0; i < g.size(); ++i)
      if (g.inside[i]) g.w[i] += wp.w(g.points[i]);
    return g;
  });
  return r;
}

GridResult run_eval_grid(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance in = make_instance(cfg);
  const ManufacturedSolution& ms = in.solution;
  GridResult r;
  r.report.layout = panel_layout(cfg, cfg.panels.back(), cfg.panels.front());
  Domain dom = stage("geometry", [&] { return build_domain(cfg, r.report.layout); });
  ConjugateSystem conj = stage("conjugate", [&] { return ConjugateSystem(dom); });
  DirichletData data = dirichlet_data_from_field(
      dom, [&](const Vec2& x) { return ms.w(x); }, [&](const Vec2& x) { return ms.grad(x); });
  BlockSystem sys = stage("assemble", [&] { return assemble_block_system(dom, conj, data); });
  Solution sol = stage("solve", [&] { return solve_block_system(dom, conj, sys); });
  r.grid = stage("grid", [&] {
    FieldGrid g = make_grid(dom, Vec2(0.0, 0.0), Vec2(cfg.a, cfg.b), cfg.grid_nx, cfg.grid_ny);
    eval_field(sol.rep, g);
    attach_reference(g, [&](const Vec2& x) { return ms.w(x); });
    return g;
  });
  std::vector<double> wc, we;
  for (const Vec2& t : in.targets) {
    wc.push_back(eval_w_total(sol.rep, field_target(t)));
    we.push_back(ms.w(t));
  }
  r.report.n_d = dom.num_nodes();
  r.report.system_size = sys.size();
  r.report.eps = relative_error(wc, we);
  r.report.relative_residual = sol.relative_residual;
  r.report.max_flux = boundary_flux(sol.rep).cwiseAbs().maxCoeff();
  r.report.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------- output

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

json layout_json(const PanelLayout& l) {
  return {{"outer_panels", l.outer_panels}, {"hole_panels", l.hole_panels}, {"corner_levels", l.corner_levels}};
}

json report_json(const SolveReport& r) {
  return {{"layout", layout_json(r.layout)},   {"n_d", r.n_d},
          {"system_size", r.system_size},      {"eps", r.eps},
          {"relative_residual", r.relative_residual}, {"max_flux", r.max_flux},
          {"seconds", r.seconds}};
}

}  // namespace

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows) {
  auto f = open_out(path);
  f << "n_panels,n_d,system_size,eps\n";
  for (const auto& r : rows) f << r.n_panels << ',' << r.n_d << ',' << r.system_size << ',' << fmt("%.6e", r.eps) << '\n';
}

void write_condition_csv(const std::string& path, const std::vector<ConditionRow>& rows) {
  auto f = open_out(path);
  f << "h,kappa_ours,kappa_farkas\n";
  for (const auto& r : rows)
    f << fmt("%g", r.h) << ',' << fmt("%.6e", r.kappa_ours) << ',' << fmt("%.6e", r.kappa_farkas) << '\n';
}

void write_grid_csv(const std::string& path, const FieldGrid& g) {
  auto f = open_out(path);
  const bool ref = g.w_ref.size() == g.size();
  f << "x,y,inside,w" << (ref ? ",w_ref,abs_err" : "") << '\n';
  for (int i = 0; i < g.size(); ++i) {
    f << fmt("%.17g", g.points[i].x()) << ',' << fmt("%.17g", g.points[i].y()) << ',' << int(g.inside[i]) << ',';
    if (!g.inside[i]) {
      f << "nan" << (ref ? ",nan,nan" : "") << '\n';
      continue;
    }
    f << fmt("%.17g", g.w[i]);
    if (ref) f << ',' << fmt("%.17g", g.w_ref[i]) << ',' << fmt("%.6e", g.abs_err[i]);
    f << '\n';
  }
}

void write_json(const std::string& path, const json& j) {
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

json run_experiment(const RunConfig& cfg) {
  cfg.validate();
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path out(cfg.out_dir);
  json summary{{"experiment", cfg.experiment}, {"seed", cfg.seed}};

  if (cfg.experiment == "solve") {
    const SolveReport r = run_solve(cfg, cfg.panels.back(), cfg.panels.front());
    write_json((out / "solve.json").string(), {{"config", cfg.to_json()}, {"result", report_json(r)}});
    summary["eps"] = r.eps;
    summary["system_size"] = r.system_size;
    summary["relative_residual"] = r.relative_residual;
  } else if (cfg.experiment == "convergence-simply" || cfg.experiment == "convergence-multi") {
    const auto rows = cfg.experiment == "convergence-simply" ? run_convergence_simply_connected(cfg)
                                                             : run_convergence_multiply_connected(cfg);
    write_convergence_csv((out / "convergence.csv").string(), rows);
    json runs = json::array();
    for (const auto& r : rows) runs.push_back(report_json(r.report));
    const double order = rows.size() > 1 ? fitted_order(rows) : 0.0;
    write_json((out / "convergence.json").string(), {{"config", cfg.to_json()}, {"runs", runs}, {"fitted_order", order}});
    json eps = json::array();
    for (const auto& r : rows) eps.push_back(r.eps);
    summary["eps"] = eps;
    summary["fitted_order"] = order;
  } else if (cfg.experiment == "condition-study") {
    const auto rows = run_condition_study(cfg);
    write_condition_csv((out / "condition.csv").string(), rows);
    write_json((out / "condition.json").string(), {{"config", cfg.to_json()}});
    json ko = json::array(), kf = json::array();
    for (const auto& r : rows) {
      ko.push_back(r.kappa_ours);
      kf.push_back(r.kappa_farkas);
    }
    summary["kappa_ours"] = ko;
    summary["kappa_farkas"] = kf;
  } else if (cfg.experiment == "greens") {
    const GreensResult r = run_greens_function(cfg);
    write_grid_csv((out / "greens.csv").string(), r.grid);
    json loads = json::array();
    for (const Vec2& p : r.loads) loads.push_back({p.x(), p.y()});
    const json res{{"checkpoints", r.residual.checkpoints}, {"max_abs_w", r.residual.w},
                   {"max_abs_dwdn", r.residual.dwdn},       {"max_abs_wp", r.max_wp},
                   {"max_grad_wp", r.max_grad_wp},          {"g_ab", r.g_ab},
                   {"g_ba", r.g_ba},                        {"symmetry", r.symmetry},
                   {"max_flux", r.max_flux}};
    write_json((out / "greens.json").string(),
               {{"config", cfg.to_json()},
                {"grid", {{"lo", {r.grid.lo.x(), r.grid.lo.y()}}, {"hi", {r.grid.hi.x(), r.grid.hi.y()}}, {"nx", r.grid.nx}, {"ny", r.grid.ny}}},
                {"loads", loads},
                {"result", res}});
    summary["boundary_w"] = r.residual.w / r.max_wp;
    summary["boundary_dwdn"] = r.residual.dwdn / r.max_grad_wp;
    summary["symmetry"] = r.symmetry;
  } else if (cfg.experiment == "eval-grid") {
    const GridResult r = run_eval_grid(cfg);
    write_grid_csv((out / "grid.csv").string(), r.grid);
    double max_err = 0.0;
    for (int i = 0; i < r.grid.size(); ++i)
      if (r.grid.inside[i]) max_err = std::max(max_err, r.grid.abs_err[i]);
    write_json((out / "grid.json").string(),
               {{"config", cfg.to_json()},
                {"grid", {{"lo", {r.grid.lo.x(), r.grid.lo.y()}}, {"hi", {r.grid.hi.x(), r.grid.hi.y()}}, {"nx", r.grid.nx}, {"ny", r.grid.ny}}},
                {"result", report_json(r.report)},
                {"max_abs_err", max_err}});
    summary["eps"] = r.report.eps;
    summary["max_abs_err"] = max_err;
  }
  summary["out"] = cfg.out_dir;
  return summary;
}

}  // namespace biharm
