#pragma once

#include "biharm/types.hpp"

namespace biharm {

// Pointwise kernels. x is the target, y the source; all throw
// std::domain_error for coincident points (use the *_diagonal limits).

/// Biharmonic free-space Green's function r^2 log r.
double biharmonic_green(const Vec2& x, const Vec2& y);
Vec2 biharmonic_green_gradient(const Vec2& x, const Vec2& y);   // d/dx
/// Velocity grad-perp of r^2 log r about y.
Vec2 charge_velocity(const Vec2& x, const Vec2& y);

/// Stokeslet (1/4pi)[-log r I + d d^T / r^2], d = x - y.
Mat2 stokeslet(const Vec2& x, const Vec2& y);

/// Stresslet double layer: (D mu)(x) = int M(x,y) mu(y) ds_y with
/// M = (1/pi) d d^T (d . n_y) / |d|^4, d = x - y.
Mat2 stresslet(const Vec2& x, const Vec2& y, const Vec2& ny);
/// On-curve limit of stresslet(x, y, n_y) as y -> x.
Mat2 stresslet_diagonal(const Vec2& tau, double kappa);

/// Laplace single layer -(1/2pi) log r.
double laplace_slp(const Vec2& x, const Vec2& y);
/// Adjoint double layer -(1/2pi) (x - y) . n_x / r^2.
double laplace_dlp_adjoint(const Vec2& x, const Vec2& y, const Vec2& nx);
double laplace_dlp_adjoint_diagonal(double kappa);

/// Kernels of the classical second-kind formulation that represents the
/// stream function as a combination of two biharmonic layer potentials.
struct FarkasKernels {
  double k11, k12, k21, k22;
};
FarkasKernels farkas_kernels(const Vec2& x, const Vec2& nx, const Vec2& y, const Vec2& ny);
FarkasKernels farkas_diagonal(double kappa);

/// Complex density rho = i (mu1 + i mu2) used by the Goursat representation.
inline cplx complex_density(const Vec2& mu) { return {-mu.y(), mu.x()}; }

}  // namespace biharm
