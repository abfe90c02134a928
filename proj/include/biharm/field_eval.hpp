#pragma once

#include <vector>

#include <Eigen/Dense>

#include "biharm/assembly.hpp"

namespace biharm {

/// Targets (a tensor grid or an explicit list) with an inside mask and the
/// evaluated field. w is NaN outside D; w_ref/abs_err are empty unless a
/// reference was attached.
struct FieldGrid {
  Vec2 lo = Vec2::Zero(), hi = Vec2::Zero();
  int nx = 0, ny = 0;  // zero for explicit target lists
  std::vector<Vec2> points;
  std::vector<char> inside;
  Eigen::VectorXd w;
  Eigen::VectorXd w_ref, abs_err;

  int size() const { return static_cast<int>(points.size()); }
  int count_inside() const;
};

/// Cell centres of an nx x ny partition of [lo, hi] (x fastest), masked by
/// winding numbers. Cell centres keep the points off the sides of the box.
FieldGrid make_grid(const Domain& dom, const Vec2& lo, const Vec2& hi, int nx, int ny);
FieldGrid make_target_list(const Domain& dom, std::vector<Vec2> points);

/// Fills grid.w at the inside points. Throws std::domain_error (via the
/// mask) for points on the boundary.
void eval_field(const Representation& rep, FieldGrid& grid, Execution ex = Execution::parallel);
FieldGrid eval_field(const Representation& rep, const std::vector<Vec2>& points,
                     Execution ex = Execution::parallel);
void attach_reference(FieldGrid& grid, const ScalarField& w_ref);

/// u = grad-perp w. On-curve targets give the limit from inside D.
Vec2 eval_velocity(const Representation& rep, const Target& t);

/// grad w at an interior point from the Goursat functions of the layers,
/// the completion term and the charges.
Vec2 eval_gradient(const Representation& rep, const Vec2& x);
std::vector<Vec2> eval_gradient(const Representation& rep, const std::vector<Vec2>& points,
                                Execution ex = Execution::parallel);

double eval_laplacian(const Representation& rep, const Vec2& x);
Vec2 eval_laplacian_gradient(const Representation& rep, const Vec2& x);

/// Circulation of the Laplacian of the velocity, int (Delta u) . tau ds, around
/// the circle |x - center| = radius (inside D), traversed clockwise like the
/// hole boundaries. A charge c_k r_k^2 log r_k enclosed by the loop contributes
/// 8 pi c_k.
double laplacian_circulation(const Representation& rep, const Vec2& center, double radius, int n_points = 256);

/// int_{Gamma_k} u . n ds of the boundary velocity, per component.
Eigen::VectorXd boundary_flux(const Representation& rep);

struct BoundaryResidual {
  double w = 0.0;     // max |w - f|
  double dwdn = 0.0;  // max |dw/dn - g|
  int checkpoints = 0;
};

/// Residuals of w = f and dw/dn = grad f . n at off-node checkpoints
/// (`per_panel` points per panel, none of them quadrature nodes).
BoundaryResidual boundary_residual(const Representation& rep, const ScalarField& f, const VectorField& grad_f,
                                   int per_panel = 3, Execution ex = Execution::parallel);

/// 13-point bilaplacian of w with spacing `step` centred at x.
double bilaplacian_probe(const Representation& rep, const Vec2& x, double step = 1e-2);

}  // namespace biharm
