#include "biharm/layer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "biharm/quadrature.hpp"

namespace biharm {

Target node_target(const Domain& dom, int node) {
  if (node < 0 || node >= dom.num_nodes()) throw std::out_of_range("node_target: bad node index");
  Target t;
  t.x = dom.nodes()[node];
  t.n = dom.normals()[node];
  t.tau = dom.tangents()[node];
  t.kappa = dom.curvature()[node];
  t.on_curve = BoundaryLocation{node / kPanelOrder, gauss_legendre(kPanelOrder).nodes[node % kPanelOrder],
                                node % kPanelOrder};
  return t;
}

Target boundary_target(const Domain& dom, int panel, double u) {
  if (!(u > -1.0 && u < 1.0)) throw std::invalid_argument("boundary_target: u must lie inside (-1,1)");
  const PanelInfo& info = dom.panel(panel);
  CurvePoint cp = dom.component(info.component).point_at(info.local, u);
  Target t{cp.x, cp.n, cp.tau, cp.kappa, BoundaryLocation{panel, u, -1}};
  const auto& gl = gauss_legendre(kPanelOrder).nodes;
  for (int j = 0; j < kPanelOrder; ++j)
    if (gl[j] == u) t.on_curve->node = j;
  return t;
}

bool panel_is_far(const PanelInfo& p, const Vec2& x) { return (x - p.center).norm() - p.radius > p.length; }

void panel_samples(const Domain& dom, int panel, const Target& t, SelfRule rule, std::vector<SourceSample>& out) {
  const PanelInfo& info = dom.panel(panel);
  const BoundaryComponent& comp = dom.component(info.component);
  const bool own = t.on_curve && t.on_curve->panel == panel;

  auto push_direct = [&](int j, bool coincident) {
    const int i = info.first_node + j;
    SourceSample s;
    s.panel = panel;
    s.node = i;
    s.direct = true;
    s.coincident = coincident;
    s.y = dom.nodes()[i];
    s.n = dom.normals()[i];
    s.tau = dom.tangents()[i];
    s.kappa = dom.curvature()[i];
    s.ds = dom.weights()[i];
    s.log_ds = coincident ? 0.0 : 0.5 * s.ds * std::log((t.x - s.y).squaredNorm());
    out.push_back(s);
  };

  if (own && rule == SelfRule::limit) {
    for (int j = 0; j < kPanelOrder; ++j) push_direct(j, j == t.on_curve->node);
    return;
  }

  if (own) {
    const double u0 = t.on_curve->u;
    SingularRule local;
    const SingularRule* sr;
    if (t.on_curve->node >= 0) {
      sr = &log_singular_rule_at_node(t.on_curve->node);
    } else {
      local = log_singular_rule(u0);
      sr = &local;
    }
    for (int q = 0; q < static_cast<int>(sr->nodes.size()); ++q) {
      CurvePoint cp = comp.point_at(info.local, sr->nodes[q]);
      SourceSample s;
      s.panel = panel;
      s.direct = false;
      for (int j = 0; j < kPanelOrder; ++j) s.interp[j] = sr->interp(q, j);
      s.y = cp.x;
      s.n = cp.n;
      s.tau = cp.tau;
      s.kappa = cp.kappa;
      s.ds = cp.speed * sr->smooth_weights[q];
      // log|x - y| = log|u - u0| + log(|x - y| / |u - u0|), the latter smooth
      double r = (t.x - cp.x).norm();
      s.log_ds = cp.speed * (sr->log_weights[q] +
                             sr->smooth_weights[q] * (std::log(r) - std::log(std::abs(sr->nodes[q] - u0))));
      out.push_back(s);
    }
    return;
  }

  const Panel& pan = comp.panel(info.local);
  auto length_of = [&](double lo, double hi) {
    return comp.point_at(info.local, 0.5 * (lo + hi)).speed * (hi - lo);
  };
  auto distance_to = [&](double lo, double hi) {
    double d = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 8; ++k) d = std::min(d, (t.x - comp.curve().position(pan.param(lo + (hi - lo) * k / 8.0))).norm());
    return d;
  };
  auto pieces = adaptive_subdivision(length_of, distance_to);
  if (pieces.size() == 1) {
    for (int j = 0; j < kPanelOrder; ++j) push_direct(j, false);
    return;
  }
  const QuadRule& gl = gauss_legendre(kPanelOrder);
  for (const auto& [lo, hi] : pieces) {
    const double half = 0.5 * (hi - lo);
    for (int q = 0; q < kPanelOrder; ++q) {
      const double u = lo + (gl.nodes[q] + 1.0) * half;
      CurvePoint cp = comp.point_at(info.local, u);
      SourceSample s;
      s.panel = panel;
      s.direct = false;
      s.interp = panel_interp_row(u);
      s.y = cp.x;
      s.n = cp.n;
      s.tau = cp.tau;
      s.kappa = cp.kappa;
      s.ds = cp.speed * half * gl.weights[q];
      s.log_ds = 0.5 * s.ds * std::log((t.x - cp.x).squaredNorm());
      out.push_back(s);
    }
  }
}

}  // namespace biharm
