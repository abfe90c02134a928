#include "biharm/field_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "biharm/kernels.hpp"
#include "biharm/potentials.hpp"
#include "biharm/quadrature.hpp"

namespace biharm {

namespace {

bool parallel(Execution ex) { return ex == Execution::parallel; }

}  // namespace

int FieldGrid::count_inside() const {
  int c = 0;
  for (char v : inside) c += v ? 1 : 0;
  return c;
}

FieldGrid make_grid(const Domain& dom, const Vec2& lo, const Vec2& hi, int nx, int ny) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("make_grid: empty grid");
  if (!(hi.x() > lo.x() && hi.y() > lo.y())) throw std::invalid_argument("make_grid: empty box");
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      pts.emplace_back(lo.x() + (hi.x() - lo.x()) * (i + 0.5) / nx, lo.y() + (hi.y() - lo.y()) * (j + 0.5) / ny);
  FieldGrid g = make_target_list(dom, std::move(pts));
  g.lo = lo;
  g.hi = hi;
  g.nx = nx;
  g.ny = ny;
  return g;
}

FieldGrid make_target_list(const Domain& dom, std::vector<Vec2> points) {
  FieldGrid g;
  g.points = std::move(points);
  g.inside.resize(g.points.size());
  for (std::size_t i = 0; i < g.points.size(); ++i) g.inside[i] = dom.contains(g.points[i]) ? 1 : 0;
  g.w = Eigen::VectorXd::Constant(g.size(), std::numeric_limits<double>::quiet_NaN());
  return g;
}

void eval_field(const Representation& rep, FieldGrid& grid, Execution ex) {
  grid.w = Eigen::VectorXd::Constant(grid.size(), std::numeric_limits<double>::quiet_NaN());
#pragma omp parallel for schedule(dynamic, 8) if (parallel(ex))
  for (int i = 0; i < grid.size(); ++i)
    if (grid.inside[i]) grid.w[i] = eval_w_total(rep, field_target(grid.points[i]));
}

FieldGrid eval_field(const Representation& rep, const std::vector<Vec2>& points, Execution ex) {
  FieldGrid g = make_target_list(*rep.domain, points);
  eval_field(rep, g, ex);
  return g;
}

void attach_reference(FieldGrid& grid, const ScalarField& w_ref) {
  grid.w_ref = Eigen::VectorXd::Constant(grid.size(), std::numeric_limits<double>::quiet_NaN());
  grid.abs_err = grid.w_ref;
  for (int i = 0; i < grid.size(); ++i) {
    if (!grid.inside[i]) continue;
    grid.w_ref[i] = w_ref(grid.points[i]);
    grid.abs_err[i] = std::abs(grid.w[i] - grid.w_ref[i]);
  }
}

Vec2 eval_velocity(const Representation& rep, const Target& t) {
  const Domain& dom = *rep.domain;
  Vec2 u = stokes_slp(dom, t, rep.mu) + stokes_dlp(dom, t, rep.mu) + density_integral(dom, rep.mu);
  if (t.on_curve) u -= 0.5 * density_at(dom, *t.on_curve, rep.mu);
  for (int k = 1; k < rep.charges.size(); ++k) u += rep.charges[k] * charge_velocity(t.x, dom.charge_points()[k - 1]);
  return u;
}

Vec2 eval_gradient(const Representation& rep, const Vec2& x) {
  const Domain& dom = *rep.domain;
  GoursatEval g = goursat_slp(dom, x, rep.mu);
  g += goursat_dlp(dom, x, rep.mu);
  Vec2 grad = muskhelishvili_gradient(g, to_complex(x));
  // Re[conj(z) C] = x Re C + y Im C
  const cplx c = complex_density(density_integral(dom, rep.mu));
  grad += Vec2(c.real(), c.imag());
  for (int k = 1; k < rep.charges.size(); ++k)
    grad += rep.charges[k] * biharmonic_green_gradient(x, dom.charge_points()[k - 1]);
  return grad;
}

std::vector<Vec2> eval_gradient(const Representation& rep, const std::vector<Vec2>& points, Execution ex) {
  std::vector<Vec2> out(points.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel(ex))
  for (int i = 0; i < static_cast<int>(points.size()); ++i) out[i] = eval_gradient(rep, points[i]);
  return out;
}

double eval_laplacian(const Representation& rep, const Vec2& x) {
  const Domain& dom = *rep.domain;
  GoursatEval g = goursat_slp(dom, x, rep.mu);
  g += goursat_dlp(dom, x, rep.mu);
  double lap = goursat_laplacian(g);
  // Laplacian of r^2 log r is 4 log r + 4
  for (int k = 1; k < rep.charges.size(); ++k)
    lap += rep.charges[k] * (4.0 * std::log((x - dom.charge_points()[k - 1]).norm()) + 4.0);
  return lap;
}

Vec2 eval_laplacian_gradient(const Representation& rep, const Vec2& x) {
  const Domain& dom = *rep.domain;
  GoursatEval g = goursat_slp(dom, x, rep.mu);
  g += goursat_dlp(dom, x, rep.mu);
  Vec2 grad = goursat_laplacian_gradient(g);
  for (int k = 1; k < rep.charges.size(); ++k) {
    const Vec2 d = x - dom.charge_points()[k - 1];
    grad += rep.charges[k] * 4.0 * d / d.squaredNorm();
  }
  return grad;
}

double laplacian_circulation(const Representation& rep, const Vec2& center, double radius, int n_points) {
  if (n_points < 8) throw std::invalid_argument("laplacian_circulation: too few points");
  // periodic trapezoid rule; Delta u = grad-perp(Delta w)
  double circ = 0.0;
#pragma omp parallel for reduction(+ : circ)
  for (int j = 0; j < n_points; ++j) {
    const double th = 2.0 * pi * j / n_points;
    const Vec2 e(std::cos(th), std::sin(th));
    const Vec2 tau(e.y(), -e.x());
    const Vec2 gl = eval_laplacian_gradient(rep, center + radius * e);
    circ += perp(gl).dot(tau);
  }
  return circ * 2.0 * pi * radius / n_points;
}

Eigen::VectorXd boundary_flux(const Representation& rep) {
  const Domain& dom = *rep.domain;
  const int n = dom.num_nodes();
  Eigen::VectorXd un(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < n; ++i) un[i] = eval_velocity(rep, node_target(dom, i)).dot(dom.normals()[i]);
  Eigen::VectorXd flux = Eigen::VectorXd::Zero(dom.num_components());
  for (int i = 0; i < n; ++i) flux[dom.component_of_node(i)] += dom.weights()[i] * un[i];
  return flux;
}

BoundaryResidual boundary_residual(const Representation& rep, const ScalarField& f, const VectorField& grad_f, int per_panel,
                                   Execution ex) {
  if (per_panel < 1) throw std::invalid_argument("boundary_residual: per_panel must be positive");
  const Domain& dom = *rep.domain;
  const auto& gl = gauss_legendre(kPanelOrder);
  std::vector<Target> targets;
  for (int p = 0; p < dom.num_panels(); ++p)
    for (int q = 0; q < per_panel; ++q) {
      double u = -1.0 + (2.0 * q + 1.0) / per_panel;
      for (double node : gl.nodes)
        if (std::abs(u - node) < 1e-6) u += 1e-3;
      targets.push_back(boundary_target(dom, p, u));
    }
  std::vector<double> rw(targets.size()), rg(targets.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel(ex))
  for (int i = 0; i < static_cast<int>(targets.size()); ++i) {
    const Target& t = targets[i];
    rw[i] = std::abs(eval_w_total(rep, t) - f(t.x));
    // grad w = (-u_y, u_x), so dw/dn = u . rotate_cw(n) = -u . tau
    const Vec2 u = eval_velocity(rep, t);
    rg[i] = std::abs(-u.dot(t.tau) - grad_f(t.x).dot(t.n));
  }
  BoundaryResidual r;
  r.checkpoints = static_cast<int>(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    r.w = std::max(r.w, rw[i]);
    r.dwdn = std::max(r.dwdn, rg[i]);
  }
  return r;
}

double bilaplacian_probe(const Representation& rep, const Vec2& x, double step) {
  auto w = [&](int i, int j) { return eval_w_total(rep, field_target(x + step * Vec2(i, j))); };
  const double s = 20.0 * w(0, 0) - 8.0 * (w(1, 0) + w(-1, 0) + w(0, 1) + w(0, -1)) +
                   2.0 * (w(1, 1) + w(1, -1) + w(-1, 1) + w(-1, -1)) + (w(2, 0) + w(-2, 0) + w(0, 2) + w(0, -2));
  return s / std::pow(step, 4);
}

}  // namespace biharm
