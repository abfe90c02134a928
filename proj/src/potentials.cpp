#include "biharm/potentials.hpp"

#include <cmath>
#include <stdexcept>

#include "biharm/kernels.hpp"
#include "biharm/quadrature.hpp"

namespace biharm {

namespace {

constexpr double inv4pi = 1.0 / (4.0 * pi);
constexpr double inv8pi = 1.0 / (8.0 * pi);
const cplx inv4pii = 1.0 / (4.0 * pi * cplx(0.0, 1.0));

int first_node(const Domain& dom, const SourceSample& s) { return dom.panel(s.panel).first_node; }

}  // namespace

Vec2 muskhelishvili_gradient(const GoursatEval& g, cplx z) {
  return to_vec(g.phi + z * std::conj(g.dphi) + std::conj(g.psi));
}

GoursatEval goursat_slp(const Domain& dom, const Vec2& z, const Eigen::VectorXd& mu) {
  GoursatEval g;
  const cplx zc = to_complex(z);
  for_each_source(dom, field_target(z), SelfRule::limit, [&](const SourceSample& s) {
    const cplx rho = complex_density(sample_vector(s, mu.data(), first_node(dom, s)));
    const cplx xi = to_complex(s.y), d = xi - zc, lg = std::log(d);
    g.phi += (-lg + 1.0) * rho * s.ds;
    g.dphi += rho / d * s.ds;
    g.d2phi += rho / (d * d) * s.ds;
    g.psi += (-std::conj(rho) * lg - std::conj(xi) * rho / d) * s.ds;
  });
  g.phi *= inv8pi, g.dphi *= inv8pi, g.d2phi *= inv8pi, g.psi *= inv8pi;
  return g;
}

GoursatEval goursat_dlp(const Domain& dom, const Vec2& z, const Eigen::VectorXd& mu) {
  GoursatEval g;
  const cplx zc = to_complex(z);
  for_each_source(dom, field_target(z), SelfRule::limit, [&](const SourceSample& s) {
    const cplx rho = complex_density(sample_vector(s, mu.data(), first_node(dom, s)));
    const cplx xi = to_complex(s.y), d = xi - zc;
    const cplx dxi = to_complex(s.tau) * s.ds;
    g.phi -= rho / d * dxi;
    g.dphi -= rho / (d * d) * dxi;
    g.d2phi -= 2.0 * rho / (d * d * d) * dxi;
    g.psi += -(std::conj(rho) * dxi + rho * std::conj(dxi)) / d + std::conj(xi) * rho * dxi / (d * d);
  });
  g.phi *= inv4pii, g.dphi *= inv4pii, g.d2phi *= inv4pii, g.psi *= inv4pii;
  return g;
}

double stream_slp(const Domain& dom, const Target& t, const Eigen::VectorXd& mu) {
  double w = 0.0;
  for_each_source(dom, t, SelfRule::log_singular, [&](const SourceSample& s) {
    const Vec2 m = sample_vector(s, mu.data(), first_node(dom, s));
    const Vec2 d = s.y - t.x;
    const double a = d.y() * m.x() - d.x() * m.y();
    w += inv4pi * a * s.log_ds + inv8pi * (t.x.y() * m.x() - t.x.x() * m.y() - a) * s.ds;
  });
  return w;
}

double stream_dlp_direct(const Domain& dom, const Target& t, const Eigen::VectorXd& mu) {
  double w = 0.0;
  for_each_source(dom, t, SelfRule::limit, [&](const SourceSample& s) {
    const Vec2 m = sample_vector(s, mu.data(), first_node(dom, s));
    if (s.coincident) {
      w += inv4pi * m.dot(s.tau) * s.ds;
      return;
    }
    const cplx d = to_complex(s.y - t.x);
    w += inv4pi * (std::conj(d) / d * to_complex(s.tau) * to_complex(m)).real() * s.ds;
  });
  return w;
}

double laplace_slp_potential(const Domain& dom, const Target& t, const Eigen::VectorXd& sigma) {
  double v = 0.0;
  for_each_source(dom, t, SelfRule::log_singular, [&](const SourceSample& s) {
    v += sample_value(s, sigma.data(), first_node(dom, s)) * s.log_ds;
  });
  return -v / (2.0 * pi);
}

Vec2 stokes_slp(const Domain& dom, const Target& t, const Eigen::VectorXd& mu) {
  Vec2 u = Vec2::Zero();
  for_each_source(dom, t, SelfRule::log_singular, [&](const SourceSample& s) {
    const Vec2 m = sample_vector(s, mu.data(), first_node(dom, s));
    const Vec2 d = t.x - s.y;
    u += inv4pi * (-m * s.log_ds + d * (d.dot(m) / d.squaredNorm()) * s.ds);
  });
  return u;
}

Vec2 stokes_dlp(const Domain& dom, const Target& t, const Eigen::VectorXd& mu) {
  Vec2 u = Vec2::Zero();
  for_each_source(dom, t, SelfRule::limit, [&](const SourceSample& s) {
    const Vec2 m = sample_vector(s, mu.data(), first_node(dom, s));
    const Mat2 k = s.coincident ? stresslet_diagonal(s.tau, s.kappa) : stresslet(t.x, s.y, s.n);
    u += k * m * s.ds;
  });
  return u;
}

Vec2 density_integral(const Domain& dom, const Eigen::VectorXd& mu) {
  Vec2 c = Vec2::Zero();
  for (int i = 0; i < dom.num_nodes(); ++i) c += dom.weights()[i] * Vec2(mu[2 * i], mu[2 * i + 1]);
  return c;
}

Vec2 density_at(const Domain& dom, const BoundaryLocation& loc, const Eigen::VectorXd& mu) {
  SourceSample s;
  s.direct = false;
  s.panel = loc.panel;
  s.interp = panel_interp_row(loc.u);
  return sample_vector(s, mu.data(), dom.panel(loc.panel).first_node);
}

// ---------------------------------------------------------------- rows

void add_stokes_slp_row(const Domain& dom, const Target& t, double* row_x, double* row_y) {
  for_each_source(dom, t, SelfRule::log_singular, [&](const SourceSample& s) {
    const Vec2 d = t.x - s.y;
    const double r2 = d.squaredNorm();
    const int f = first_node(dom, s);
    // row i of (1/4pi)[-log r I + d d^T / r^2]
    scatter_vector(s, f, inv4pi * (Vec2(-s.log_ds, 0.0) + d.x() * d / r2 * s.ds), row_x);
    scatter_vector(s, f, inv4pi * (Vec2(0.0, -s.log_ds) + d.y() * d / r2 * s.ds), row_y);
  });
}

void add_stokes_dlp_row(const Domain& dom, const Target& t, double* row_x, double* row_y) {
  for_each_source(dom, t, SelfRule::limit, [&](const SourceSample& s) {
    const Mat2 k = (s.coincident ? stresslet_diagonal(s.tau, s.kappa) : stresslet(t.x, s.y, s.n)) * s.ds;
    const int f = first_node(dom, s);
    scatter_vector(s, f, k.row(0).transpose(), row_x);
    scatter_vector(s, f, k.row(1).transpose(), row_y);
  });
}

void add_stream_slp_row(const Domain& dom, const Target& t, double scale, double* row) {
  for_each_source(dom, t, SelfRule::log_singular, [&](const SourceSample& s) {
    const Vec2 d = s.y - t.x;
    const Vec2 a(d.y(), -d.x());         // coefficient of the log-weighted part
    const Vec2 b(t.x.y(), -t.x.x());
    scatter_vector(s, first_node(dom, s), scale * (inv4pi * a * s.log_ds + inv8pi * (b - a) * s.ds), row);
  });
}

void add_stream_dlp_direct_row(const Domain& dom, const Target& t, double scale, double* row) {
  for_each_source(dom, t, SelfRule::limit, [&](const SourceSample& s) {
    cplx k;
    if (s.coincident) {
      k = std::conj(to_complex(s.tau));
    } else {
      const cplx d = to_complex(s.y - t.x);
      k = std::conj(d) / d * to_complex(s.tau);
    }
    // Re[k (mu1 + i mu2)] = Re k mu1 - Im k mu2
    scatter_vector(s, first_node(dom, s), scale * inv4pi * s.ds * Vec2(k.real(), -k.imag()), row);
  });
}

void add_v2_row(const Domain& dom, const Target& t, double scale, double* row) {
  for_each_source(dom, t, SelfRule::log_singular, [&](const SourceSample& s) {
    scatter_vector(s, first_node(dom, s), scale / (2.0 * pi) * s.log_ds * s.n, row);
  });
}

void add_laplace_slp_row(const Domain& dom, const Target& t, double scale, double* row) {
  for_each_source(dom, t, SelfRule::log_singular, [&](const SourceSample& s) {
    scatter(s, first_node(dom, s), -scale / (2.0 * pi) * s.log_ds, row);
  });
}

void add_laplace_dlp_adjoint_row(const Domain& dom, const Target& t, double scale, double* row) {
  if (!t.on_curve) throw std::invalid_argument("adjoint double layer needs an on-curve target");
  for_each_source(dom, t, SelfRule::limit, [&](const SourceSample& s) {
    const double k = s.coincident ? laplace_dlp_adjoint_diagonal(s.kappa) : laplace_dlp_adjoint(t.x, s.y, t.n);
    scatter(s, first_node(dom, s), scale * k * s.ds, row);
  });
}

}  // namespace biharm
