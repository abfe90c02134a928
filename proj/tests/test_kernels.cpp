#include <cmath>
#include <random>

#include "biharm/kernels.hpp"
#include "biharm/potentials.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace biharm;
using namespace biharm::test;

namespace {

Domain ellipse_domain(int n_panels = 12) { return Domain(make_ellipse(Vec2(0.1, -0.2), 1.0, 0.6, n_panels)); }

// Stokes kernels straight from their definitions, for the oracle integrals.
Vec2 stokeslet_apply(const Vec2& x, const Vec2& y, const Vec2& m) {
  Vec2 d = x - y;
  if (d.squaredNorm() == 0.0) return Vec2::Zero();  // measure-zero point of the oracle
  return (-std::log(d.norm()) * m + d * d.dot(m) / d.squaredNorm()) / (4 * pi);
}
Vec2 stresslet_apply(const Vec2& x, const Vec2& y, const Vec2& ny, const Vec2& m) {
  Vec2 d = x - y;
  return d * d.dot(m) * d.dot(ny) / (pi * std::pow(d.squaredNorm(), 2));
}

// grad-perp by 4th-order central differences
template <class F>
Vec2 fd_perp(F&& w, const Vec2& x, double h = 1e-3) {
  auto d = [&](const Vec2& e) {
    return (-w(x + 2 * h * e) + 8 * w(x + h * e) - 8 * w(x - h * e) + w(x - 2 * h * e)) / (12 * h);
  };
  return perp(Vec2(d(Vec2(1, 0)), d(Vec2(0, 1))));
}

}  // namespace

TEST_CASE("pointwise kernel values") {
  Mat2 g = stokeslet(Vec2(1, 0), Vec2(0, 0));
  CHECK(g(0, 0) == doctest::Approx(1 / (4 * pi)));
  CHECK(g(1, 1) == doctest::Approx(0.0));
  g = stokeslet(Vec2(0.5, 2.5), Vec2(0.5, 0.5));
  CHECK(g(0, 0) == doctest::Approx(-std::log(2.0) / (4 * pi)));
  CHECK(g(1, 1) == doctest::Approx((1 - std::log(2.0)) / (4 * pi)));
  CHECK(g(0, 1) == doctest::Approx(0.0));

  CHECK(stresslet(Vec2(1, 0), Vec2(0, 0), Vec2(0, 1)).norm() == 0.0);
  Mat2 t = stresslet(Vec2(0, 1), Vec2(0, 0), Vec2(0, 1));
  CHECK(t(1, 1) == doctest::Approx(1 / pi));
  CHECK(t(0, 0) == 0.0);
  CHECK(stresslet_diagonal(Vec2(1, 0), 0.0).norm() == 0.0);

  CHECK(laplace_slp(Vec2(1, 0), Vec2(0, 0)) == 0.0);
  CHECK_THROWS_AS(laplace_slp(Vec2(1, 0), Vec2(1, 0)), std::domain_error);
  CHECK_THROWS_AS(stokeslet(Vec2(1, 0), Vec2(1, 0)), std::domain_error);

  // r perpendicular to n(y)
  FarkasKernels f = farkas_kernels(Vec2(0, 0), Vec2(0, 1), Vec2(1, 0), Vec2(0, 1));
  CHECK(f.k11 == 0.0);
  CHECK(f.k12 == doctest::Approx(1 / (4 * pi)));
  f = farkas_kernels(Vec2(0, 0), Vec2(1, 0), Vec2(2, 0), Vec2(1, 0));
  CHECK(f.k11 == doctest::Approx(1 / (2 * pi)));
  f = farkas_kernels(Vec2(0, 0), Vec2(1, 0), Vec2(1, 0), Vec2(1, 0));
  CHECK(f.k21 == doctest::Approx(1 / pi));

  CHECK((charge_velocity(Vec2(1, 0), Vec2(0, 0)) - Vec2(0, -1)).norm() < 1e-15);
  CHECK(biharmonic_green(Vec2(1, 0), Vec2(0, 0)) == 0.0);
}

TEST_CASE("kernels are symmetric and translation invariant") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int it = 0; it < 20; ++it) {
    Vec2 x(u(rng), u(rng)), y(u(rng), u(rng)), s(u(rng), u(rng)), n = Vec2(u(rng), u(rng)).normalized();
    Mat2 g = stokeslet(x, y);
    CHECK((g - g.transpose()).norm() < 1e-15);
    CHECK((g - stokeslet(y, x)).norm() < 1e-15);
    CHECK((g - stokeslet(x + s, y + s)).norm() < 1e-13);
    CHECK((stresslet(x, y, n) - stresslet(x + s, y + s, n)).norm() < 1e-13 * (1 + stresslet(x, y, n).norm()));
  }
}

TEST_CASE("stresslet diagonal limit along the curve, and its scaling") {
  for (double R : {1.0, 0.25}) {
    CircleCurve c(Vec2(0.3, 0.1), R);
    const double t0 = 0.7;
    CurvePoint p0 = evaluate(c, t0);
    Mat2 lim = stresslet_diagonal(p0.tau, p0.kappa);
    // symmetric average removes the first-order term of the approach
    const double dt = 1e-3;
    CurvePoint pp = evaluate(c, t0 + dt), pm = evaluate(c, t0 - dt);
    Mat2 avg = 0.5 * (stresslet(p0.x, pp.x, pp.n) + stresslet(p0.x, pm.x, pm.n));
    CHECK((avg - lim).norm() < 1e-5 / R);
    CHECK((stresslet_diagonal(p0.tau, 1.0 / R) - stresslet_diagonal(p0.tau, 1.0) / R).norm() < 1e-15);
  }
  // Laplace adjoint double layer and the Farkas kernels
  EllipseCurve e(Vec2(0, 0), 1.0, 0.5);
  CurvePoint p0 = evaluate(e, 1.1), p = evaluate(e, 1.1 + 1e-5);
  CHECK(laplace_dlp_adjoint(p0.x, p.x, p0.n) == doctest::Approx(laplace_dlp_adjoint_diagonal(p0.kappa)).epsilon(1e-4));
  FarkasKernels fk = farkas_kernels(p0.x, p0.n, p.x, p.n), fd = farkas_diagonal(p0.kappa);
  CHECK(fk.k11 == doctest::Approx(fd.k11).epsilon(1e-4));
  CHECK(fk.k12 == doctest::Approx(fd.k12).epsilon(1e-4));
  CHECK(fk.k21 == doctest::Approx(fd.k21).epsilon(1e-4));
  CHECK(fk.k22 == doctest::Approx(fd.k22).epsilon(1e-4));
}

TEST_CASE("double layer of a constant density: -mu inside, 0 outside") {
  Domain dom = ellipse_domain();
  Eigen::VectorXd mu(2 * dom.num_nodes());
  for (int i = 0; i < dom.num_nodes(); ++i) mu[2 * i] = 0.7, mu[2 * i + 1] = -1.3;
  for (Vec2 x : {Vec2(0.1, -0.2), Vec2(0.8, 0.1), Vec2(0.1, 0.399)}) {
    CHECK((stokes_dlp(dom, field_target(x), mu) - Vec2(-0.7, 1.3)).norm() < 1e-10);
  }
  for (Vec2 x : {Vec2(2.0, 0.0), Vec2(0.1, 0.401), Vec2(-3, 5)}) {
    CHECK(stokes_dlp(dom, field_target(x), mu).norm() < 1e-10);
  }
  // jump: interior limit = -mu/2 + principal value
  for (int node : {5, 77}) {
    Vec2 pv = stokes_dlp(dom, node_target(dom, node), mu);
    CHECK((pv - Vec2(-0.35, 0.65)).norm() < 1e-10);
  }
}

TEST_CASE("layer potentials match adaptive oracles on and off the curve") {
  Domain dom = ellipse_domain(10);
  const Curve& c = dom.component(0).curve();
  auto dens = smooth_density();
  Eigen::VectorXd mu = sample_density(dom, {dens});

  // targets: far interior, 1e-3 inside, exterior close
  const double tn = 2.0;
  CurvePoint pn = evaluate(c, tn);
  for (Vec2 x : {Vec2(0.2, 0.0), Vec2(pn.x - 1e-3 * pn.n), Vec2(pn.x + 2e-3 * pn.n)}) {
    Vec2 s_ref = curve_integral(c, [&](double t) { return stokeslet_apply(x, c.position(t), dens(t)); }, tn);
    Vec2 d_ref = curve_integral(c, [&](double t) {
      CurvePoint p = evaluate(c, t);
      return stresslet_apply(x, p.x, p.n, dens(t));
    }, tn);
    CHECK((stokes_slp(dom, field_target(x), mu) - s_ref).norm() < 1e-10);
    CHECK((stokes_dlp(dom, field_target(x), mu) - d_ref).norm() < 1e-9);
  }

  // on-curve targets at a node and between nodes
  const int panel = 3;
  for (double u : {gauss_legendre(kPanelOrder).nodes[6], 0.123}) {
    Target t = boundary_target(dom, panel, u);
    const double t0 = dom.component(0).panel(panel).param(u);
    const Vec2 x0 = c.position(t0);
    Vec2 s_ref = curve_integral(c, [&](double t) { return stokeslet_apply(x0, c.position(t), dens(t)); }, t0);
    Vec2 pv_ref = periodic_trapezoid(c, [&](double t) {
      CurvePoint p = evaluate(c, t);
      return stresslet_apply(x0, p.x, p.n, dens(t));
    }, t0);
    CHECK((stokes_slp(dom, t, mu) - s_ref).norm() < 1e-12);
    CHECK((stokes_dlp(dom, t, mu) - pv_ref).norm() < 1e-11);
    // jump relation from the inside
    Vec2 inner = stokes_dlp(dom, field_target(x0 - 1e-7 * t.n), mu);
    CHECK((inner - (-0.5 * dens(t0) + pv_ref)).norm() < 1e-6);
    CHECK((density_at(dom, *t.on_curve, mu) - dens(t0)).norm() < 1e-12);
  }
}

TEST_CASE("stream functions and Goursat functions reproduce the layer velocities") {
  Domain dom = ellipse_domain(10);
  Eigen::VectorXd mu = sample_density(dom, {smooth_density(0.4)});
  for (Vec2 x : {Vec2(0.3, 0.05), Vec2(-0.5, -0.3)}) {
    Target t = field_target(x);
    Vec2 s = stokes_slp(dom, t, mu);
    Vec2 d = stokes_dlp(dom, t, mu);
    // real-variable stream function of the single layer
    CHECK((fd_perp([&](const Vec2& p) { return stream_slp(dom, field_target(p), mu); }, x) - s).norm() < 1e-9);
    // Goursat single and double layers via Muskhelishvili's formula
    GoursatEval gs = goursat_slp(dom, x, mu), gd = goursat_dlp(dom, x, mu);
    CHECK((perp(muskhelishvili_gradient(gs, to_complex(x))) - s).norm() < 1e-12);
    CHECK((perp(muskhelishvili_gradient(gd, to_complex(x))) - d).norm() < 1e-12);
    // derivatives of phi by differences of phi'
    const double h = 1e-4;
    cplx dd = (goursat_dlp(dom, x + Vec2(h, 0), mu).dphi - goursat_dlp(dom, x - Vec2(h, 0), mu).dphi) / (2 * h);
    CHECK(std::abs(dd - gd.d2phi) < 1e-6 * (1 + std::abs(gd.d2phi)));
    cplx ds = (goursat_slp(dom, x + Vec2(h, 0), mu).dphi - goursat_slp(dom, x - Vec2(h, 0), mu).dphi) / (2 * h);
    CHECK(std::abs(ds - gs.d2phi) < 1e-6 * (1 + std::abs(gs.d2phi)));
  }
}

TEST_CASE("velocity fields are divergence free") {
  Domain dom = ellipse_domain(10);
  Eigen::VectorXd mu = sample_density(dom, {smooth_density(1.0)});
  const double h = 1e-4;
  for (Vec2 x : {Vec2(0.3, 0.05), Vec2(1.5, 0.5)}) {
    auto div = [&](auto&& u) {
      return (u(x + Vec2(h, 0)).x() - u(x - Vec2(h, 0)).x() + u(x + Vec2(0, h)).y() - u(x - Vec2(0, h)).y()) / (2 * h);
    };
    CHECK(std::abs(div([&](const Vec2& p) { return stokes_slp(dom, field_target(p), mu); })) < 1e-8);
    CHECK(std::abs(div([&](const Vec2& p) { return stokes_dlp(dom, field_target(p), mu); })) < 1e-8);
  }
}

TEST_CASE("Goursat double layer of a constant density vanishes outside") {
  Domain dom = ellipse_domain(8);
  Eigen::VectorXd mu = Eigen::VectorXd::Constant(2 * dom.num_nodes(), 0.3);
  GoursatEval g = goursat_dlp(dom, Vec2(3.0, 1.0), mu);
  CHECK(std::abs(g.phi) < 1e-14);
  CHECK(goursat_slp(dom, Vec2(3.0, 1.0), Eigen::VectorXd::Zero(2 * dom.num_nodes())).phi == cplx(0.0));
  // w = |z|^2 from phi = z
  GoursatEval q;
  q.phi = cplx(0.3, -0.4);
  q.dphi = 1.0;
  CHECK((muskhelishvili_gradient(q, cplx(0.3, -0.4)) - Vec2(0.6, -0.8)).norm() < 1e-15);
}

TEST_CASE("charge circulation of the Laplacian velocity is 8 pi") {
  // Delta(r^2 log r) = 4 log r + 4, circulation of grad-perp of it
  const Vec2 z(0.2, 0.1);
  auto circulation = [&](const Vec2& c, double R) {
    const QuadRule& gl = gauss_legendre(64);
    double s = 0.0;
    for (int q = 0; q < 64; ++q) {
      double t = pi * (gl.nodes[q] + 1);
      Vec2 x = c + R * Vec2(std::cos(t), std::sin(t)), tau(-std::sin(t), std::cos(t));
      Vec2 d = x - z;
      s += perp(4.0 * d / d.squaredNorm()).dot(tau) * R * pi * gl.weights[q];
    }
    return s;
  };
  CHECK(circulation(Vec2(0.25, 0.1), 0.3) == doctest::Approx(-8 * pi));
  CHECK(std::abs(circulation(Vec2(2, 2), 0.5)) < 1e-10);
}
