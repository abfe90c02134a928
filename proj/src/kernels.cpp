#include "biharm/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace biharm {

namespace {
inline double checked_r2(const Vec2& d) {
  double r2 = d.squaredNorm();
  if (r2 == 0.0) throw std::domain_error("kernel evaluated at coincident points");
  return r2;
}
}  // namespace

double biharmonic_green(const Vec2& x, const Vec2& y) {
  double r2 = (x - y).squaredNorm();
  return r2 == 0.0 ? 0.0 : 0.5 * r2 * std::log(r2);
}

Vec2 biharmonic_green_gradient(const Vec2& x, const Vec2& y) {
  Vec2 d = x - y;
  double r2 = d.squaredNorm();
  return r2 == 0.0 ? Vec2::Zero() : Vec2((std::log(r2) + 1.0) * d);
}

Vec2 charge_velocity(const Vec2& x, const Vec2& y) { return perp(biharmonic_green_gradient(x, y)); }

Mat2 stokeslet(const Vec2& x, const Vec2& y) {
  Vec2 d = x - y;
  double r2 = checked_r2(d);
  Mat2 g = d * d.transpose() / r2;
  g.diagonal().array() -= 0.5 * std::log(r2);
  return g / (4.0 * pi);
}

Mat2 stresslet(const Vec2& x, const Vec2& y, const Vec2& ny) {
  Vec2 d = x - y;
  double r2 = checked_r2(d);
  return d * d.transpose() * (d.dot(ny) / (pi * r2 * r2));
}

Mat2 stresslet_diagonal(const Vec2& tau, double kappa) { return -kappa / (2.0 * pi) * tau * tau.transpose(); }

double laplace_slp(const Vec2& x, const Vec2& y) {
  return -std::log(checked_r2(x - y)) / (4.0 * pi);
}

double laplace_dlp_adjoint(const Vec2& x, const Vec2& y, const Vec2& nx) {
  Vec2 d = x - y;
  return -d.dot(nx) / (2.0 * pi * checked_r2(d));
}

double laplace_dlp_adjoint_diagonal(double kappa) { return -kappa / (4.0 * pi); }

FarkasKernels farkas_kernels(const Vec2& x, const Vec2& nx, const Vec2& y, const Vec2& ny) {
  Vec2 r = y - x;
  double r2 = checked_r2(r);
  double rny = r.dot(ny), rnx = r.dot(nx), nn = nx.dot(ny);
  FarkasKernels k;
  k.k11 = rny * rny * rny / (pi * r2 * r2);
  k.k12 = (0.5 - rny * rny / r2) / (2.0 * pi);
  k.k21 = (-3.0 * rny * rny * nn / (r2 * r2) + 4.0 * rny * rny * rny * rnx / (r2 * r2 * r2)) / pi;
  k.k22 = (rny * nn / r2 - rny * rny * rnx / (r2 * r2)) / pi;
  return k;
}

FarkasKernels farkas_diagonal(double kappa) {
  return {0.0, 1.0 / (4.0 * pi), -3.0 * kappa * kappa / (4.0 * pi), kappa / (2.0 * pi)};
}

}  // namespace biharm
