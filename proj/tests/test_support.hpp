#pragma once
// Shared fixtures for the unit tests.

#include <cmath>
#include <functional>
#include <memory>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "biharm/geometry.hpp"
#include "biharm/quadrature.hpp"

namespace biharm::test {

class EllipseCurve final : public Curve {
 public:
  EllipseCurve(Vec2 c, double a, double b) : c_(c), a_(a), b_(b) {}
  Vec2 position(double t) const override { return c_ + Vec2(a_ * std::cos(t), b_ * std::sin(t)); }
  Vec2 velocity(double t) const override { return {-a_ * std::sin(t), b_ * std::cos(t)}; }
  Vec2 acceleration(double t) const override { return {-a_ * std::cos(t), -b_ * std::sin(t)}; }
  double period() const override { return 2 * pi; }

 private:
  Vec2 c_;
  double a_, b_;
};

inline BoundaryComponent make_ellipse(Vec2 c, double a, double b, int n_panels) {
  std::vector<double> br;
  for (int p = 0; p < n_panels; ++p) br.push_back(2 * pi * p / n_panels);
  return BoundaryComponent(std::make_shared<EllipseCurve>(c, a, b), br);
}

/// Smooth vector density given as a function of the curve parameter.
using ParamDensity = std::function<Vec2(double)>;

inline ParamDensity smooth_density(double shift = 0.0) {
  return [shift](double t) { return Vec2(std::cos(t + shift) + 0.3 * std::sin(2 * t), 0.5 - std::sin(3 * t - shift)); };
}

/// Node samples of a parametric density over all components of a domain.
inline Eigen::VectorXd sample_density(const Domain& dom, const std::vector<ParamDensity>& per_component) {
  Eigen::VectorXd mu(2 * dom.num_nodes());
  const auto& gl = gauss_legendre(kPanelOrder).nodes;
  for (int k = 0; k < dom.num_components(); ++k) {
    const auto& c = dom.component(k);
    for (int p = 0; p < c.num_panels(); ++p)
      for (int j = 0; j < kPanelOrder; ++j) {
        Vec2 v = per_component[k](c.panel(p).param(gl[j]));
        int i = dom.node_offset(k) + p * kPanelOrder + j;
        mu[2 * i] = v.x(), mu[2 * i + 1] = v.y();
      }
  }
  return mu;
}

/// Adaptive integral over one period of the curve of f(t) |x'(t)| dt, split
/// at `split` (a parameter value where the integrand is not smooth).
template <class F>
Vec2 curve_integral(const Curve& c, F&& f, double split = 0.0) {
  boost::math::quadrature::tanh_sinh<double> ts(12);
  Vec2 out;
  for (int comp = 0; comp < 2; ++comp) {
    auto g = [&](double t) { return f(t)[comp] * c.velocity(t).norm(); };
    out[comp] = ts.integrate(g, split, split + c.period());
  }
  return out;
}

/// Offset trapezoid rule over one period: spectrally accurate for smooth
/// periodic integrands and never samples t = t0 itself.
template <class F>
Vec2 periodic_trapezoid(const Curve& c, F&& f, double t0, int n = 4000) {
  Vec2 s = Vec2::Zero();
  const double h = c.period() / n;
  for (int k = 0; k < n; ++k) {
    double t = t0 + (k + 0.5) * h;
    s += f(t) * c.velocity(t).norm() * h;
  }
  return s;
}

template <class F>
double curve_integral_scalar(const Curve& c, F&& f, double split = 0.0) {
  boost::math::quadrature::tanh_sinh<double> ts(12);
  auto g = [&](double t) { return f(t) * c.velocity(t).norm(); };
  return ts.integrate(g, split, split + c.period());
}

}  // namespace biharm::test
