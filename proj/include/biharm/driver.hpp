#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "biharm/field_eval.hpp"

namespace biharm {

/// Bad or inconsistent run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stage of an experiment failed numerically (CLI exit code 3). The
/// message is prefixed with the stage name.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// SplitMix64 (Steele, Lea & Flood). uniform() uses the top 53 bits, so every
/// language with 64-bit integers reproduces the same draws.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

enum class CornerGrading {
  resolve,  // refine toward the corners until the rounding is resolved
  graded,   // one dyadic corner level per doubling of the panel count
            // relative to the coarsest resolution of the run
};

struct RunConfig {
  std::string experiment = "solve";
  // rounded rectangle [0,a] x [0,b]; corners smoothed by a Gaussian of
  // standard deviation h^2
  double a = 1.0, b = 0.5, h = 0.05;
  bool holes = false;
  double hole_radius = 0.04;
  std::vector<Vec2> hole_centers;
  std::vector<int> panels;  // total panels per resolution; n_d = 16 * panels
  std::vector<double> condition_h{0.2, 0.1, 0.05, 0.025};
  int condition_panels = 64;
  CornerGrading grading = CornerGrading::resolve;
  std::uint64_t seed = 12345;
  int grid_nx = 120, grid_ny = 60;
  std::string out_dir = ".";

  /// Defaults for one of: solve, convergence-simply, condition-study,
  /// convergence-multi, greens, eval-grid.
  static RunConfig defaults(const std::string& experiment);
  /// Overrides fields of `base` with the keys present in j; unknown keys
  /// are an error.
  static RunConfig from_json(const nlohmann::json& j, RunConfig base);
  nlohmann::json to_json() const;
  /// Throws ConfigError.
  void validate() const;
};

const std::vector<std::string>& experiment_names();
std::vector<Vec2> default_hole_centers();

/// w = sum_j q_j |x - s_j|^2 log |x - s_j|.
struct ManufacturedSolution {
  std::vector<Vec2> sources;
  std::vector<double> strengths;
  double w(const Vec2& x) const;
  Vec2 grad(const Vec2& x) const;
};

struct Instance {
  ManufacturedSolution solution;
  std::vector<Vec2> targets;
};

/// Draw order: source offsets, target offsets (each as x, y pairs), then
/// the strengths. Simply connected: 4 sources around the bar and 4 targets,
/// offsets in [-0.05, 0.05]. With holes: one source per obstacle and 12
/// targets, offsets in [-r0/2, r0/2]. Strengths in [0, 1].
Instance make_instance(const RunConfig& cfg);

struct PanelLayout {
  int outer_panels = 0;
  int hole_panels = 0;  // per obstacle
  int corner_levels = 0;
};

/// Splits `total` panels between the outer boundary and the obstacles in
/// proportion to arclength (at least 4 per obstacle); `coarsest_total` is
/// the reference for graded corner refinement.
PanelLayout panel_layout(const RunConfig& cfg, int total, int coarsest_total);
Domain build_domain(const RunConfig& cfg, const PanelLayout& layout);

/// relative l2 error over the targets.
double relative_error(const std::vector<double>& computed, const std::vector<double>& exact);

struct SolveReport {
  PanelLayout layout;
  int n_d = 0;
  int system_size = 0;
  double eps = 0.0;
  double relative_residual = 0.0;
  double max_flux = 0.0;  // max_k |int_{Gamma_k} u . n ds|
  double seconds = 0.0;
};

/// Manufactured-solution solve at `total` panels.
SolveReport run_solve(const RunConfig& cfg, int total, int coarsest_total);

struct ConvergenceRow {
  int n_panels = 0, n_d = 0, system_size = 0;
  double eps = 0.0;
  SolveReport report;
};
std::vector<ConvergenceRow> run_convergence_simply_connected(const RunConfig& cfg);
std::vector<ConvergenceRow> run_convergence_multiply_connected(const RunConfig& cfg);

/// Least-squares slope of -log(eps) against log(system size).
double fitted_order(const std::vector<ConvergenceRow>& rows);

struct ConditionRow {
  double h = 0.0, kappa_ours = 0.0, kappa_farkas = 0.0;
};
std::vector<ConditionRow> run_condition_study(const RunConfig& cfg);

struct GreensResult {
  std::vector<Vec2> loads;
  FieldGrid grid;
  BoundaryResidual residual;
  double max_wp = 0.0;       // max |w_p| on the boundary nodes
  double max_grad_wp = 0.0;  // max |grad w_p| on the boundary nodes
  int pair_a = 0, pair_b = 0;
  double g_ab = 0.0, g_ba = 0.0;
  double symmetry = 0.0;  // |G(a,b) - G(b,a)| / max(|G(a,b)|, |G(b,a)|)
  double max_flux = 0.0;  // over the three solves
};
/// Clamped plate under unit point loads at the 12 targets: w = w_p + w_h
/// with w_p = -(1/8 pi) sum r_j^2 log r_j.
GreensResult run_greens_function(const RunConfig& cfg);

struct GridResult {
  FieldGrid grid;
  SolveReport report;
};
/// Manufactured solve followed by grid evaluation with reference values.
GridResult run_eval_grid(const RunConfig& cfg);

// Output files. CSV columns are fixed; the JSON sidecars carry the config.
void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows);
void write_condition_csv(const std::string& path, const std::vector<ConditionRow>& rows);
void write_grid_csv(const std::string& path, const FieldGrid& grid);
void write_json(const std::string& path, const nlohmann::json& j);

/// Runs cfg.experiment, writes its files into cfg.out_dir and returns a
/// one-line summary.
nlohmann::json run_experiment(const RunConfig& cfg);

}  // namespace biharm
