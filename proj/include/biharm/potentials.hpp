#pragma once

#include <Eigen/Dense>

#include "biharm/layer.hpp"

namespace biharm {

// Layer potentials of a boundary density. Vector densities are interleaved
// (mu1, mu2) per node, length 2 * num_nodes; scalar densities have one
// entry per node. Off-curve targets near the boundary are handled by
// adaptive panel refinement; on-curve targets use the singular/limit rules.

/// Goursat functions of a biharmonic w = Re(conj(z) phi + chi), psi = chi'.
struct GoursatEval {
  cplx phi{}, dphi{}, d2phi{}, psi{};
  GoursatEval& operator+=(const GoursatEval& o) {
    phi += o.phi, dphi += o.dphi, d2phi += o.d2phi, psi += o.psi;
    return *this;
  }
};

/// (dw/dx1, dw/dx2) from phi + z conj(phi') + conj(psi).
Vec2 muskhelishvili_gradient(const GoursatEval& g, cplx z);
/// Laplacian of w: 4 Re phi'.
inline double goursat_laplacian(const GoursatEval& g) { return 4.0 * g.dphi.real(); }
/// Gradient of the Laplacian: 4 (Re phi'', -Im phi'').
inline Vec2 goursat_laplacian_gradient(const GoursatEval& g) { return 4.0 * Vec2(g.d2phi.real(), -g.d2phi.imag()); }

GoursatEval goursat_slp(const Domain& dom, const Vec2& z, const Eigen::VectorXd& mu);
GoursatEval goursat_dlp(const Domain& dom, const Vec2& z, const Eigen::VectorXd& mu);

/// Stream function of the Stokes single layer (continuous across the boundary).
double stream_slp(const Domain& dom, const Target& t, const Eigen::VectorXd& mu);
/// Single-valued part of the double-layer stream function,
/// Re[(1/4 pi i) int (conj(xi - z) / (xi - z)) rho dxi]; bounded and continuous.
double stream_dlp_direct(const Domain& dom, const Target& t, const Eigen::VectorXd& mu);

/// Laplace single layer S^L sigma.
double laplace_slp_potential(const Domain& dom, const Target& t, const Eigen::VectorXd& sigma);

/// Stokes single layer velocity S mu.
Vec2 stokes_slp(const Domain& dom, const Target& t, const Eigen::VectorXd& mu);
/// Stokes double layer velocity D mu; principal value for on-curve targets.
Vec2 stokes_dlp(const Domain& dom, const Target& t, const Eigen::VectorXd& mu);
/// W mu = int mu ds.
Vec2 density_integral(const Domain& dom, const Eigen::VectorXd& mu);
/// Density interpolated to an on-curve target.
Vec2 density_at(const Domain& dom, const BoundaryLocation& loc, const Eigen::VectorXd& mu);

// Row builders for assembly: add the coefficients of the value at target t
// to `row` (length 2 n_d for vector densities, n_d for scalar ones).
void add_stokes_slp_row(const Domain& dom, const Target& t, double* row_x, double* row_y);
void add_stokes_dlp_row(const Domain& dom, const Target& t, double* row_x, double* row_y);
void add_stream_slp_row(const Domain& dom, const Target& t, double scale, double* row);
void add_stream_dlp_direct_row(const Domain& dom, const Target& t, double scale, double* row);
/// Coefficients of v2 = -S^L[mu . n] with respect to mu.
void add_v2_row(const Domain& dom, const Target& t, double scale, double* row);
void add_laplace_slp_row(const Domain& dom, const Target& t, double scale, double* row);
/// Adjoint double layer K' (principal value, on-curve targets only).
void add_laplace_dlp_adjoint_row(const Domain& dom, const Target& t, double scale, double* row);

}  // namespace biharm
