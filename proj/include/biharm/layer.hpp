#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "biharm/geometry.hpp"

namespace biharm {

/// Where a target sits on the boundary: global panel index and reference
/// coordinate u in (-1,1); `node` is the local node index when u is a node.
struct BoundaryLocation {
  int panel = -1;
  double u = 0.0;
  int node = -1;
};

struct Target {
  Vec2 x;
  Vec2 n = Vec2::Zero();     // outward normal, for on-curve targets
  Vec2 tau = Vec2::Zero();
  double kappa = 0.0;
  std::optional<BoundaryLocation> on_curve;
};

Target node_target(const Domain& dom, int node);
Target boundary_target(const Domain& dom, int panel, double u);
inline Target field_target(const Vec2& x) {
  Target t;
  t.x = x;
  return t;
}

/// How a layer kernel is treated on the panel that carries the target.
enum class SelfRule {
  log_singular,  // product integration against log|x - y|
  limit,         // plain panel nodes; the kernel's diagonal limit at coincidence
};

/// One quadrature point of a boundary integral as seen from a target.
/// The density at y is  direct ? sigma[node] : sum_j interp[j] sigma[first_node + j].
struct SourceSample {
  int panel = -1;
  int node = -1;  // global node index, for direct samples
  bool direct = true;
  bool coincident = false;
  std::array<double, kPanelOrder> interp{};
  Vec2 y, n, tau;
  double kappa = 0.0;
  double ds = 0.0;      // int f ds ~ sum f(y) ds
  double log_ds = 0.0;  // int f log|x - y| ds ~ sum f(y) log_ds
};

/// Samples of panel `panel` for the given target: the plain panel rule when
/// the target is well separated, otherwise adaptively refined (or product
/// integration on the target's own panel). Appends to `out`.
void panel_samples(const Domain& dom, int panel, const Target& t, SelfRule rule, std::vector<SourceSample>& out);

/// True when the plain panel rule is accurate for target x.
bool panel_is_far(const PanelInfo& p, const Vec2& x);

/// Calls f(const SourceSample&) for every quadrature point on the boundary.
template <class F>
void for_each_source(const Domain& dom, const Target& t, SelfRule rule, F&& f) {
  static thread_local std::vector<SourceSample> buf;
  const auto& x = dom.nodes();
  const auto& nrm = dom.normals();
  const auto& tan = dom.tangents();
  const auto& kap = dom.curvature();
  const auto& w = dom.weights();
  SourceSample s;
  for (int p = 0; p < dom.num_panels(); ++p) {
    const PanelInfo& info = dom.panel(p);
    const bool own = t.on_curve && t.on_curve->panel == p;
    if (!own && panel_is_far(info, t.x)) {
      s.panel = p;
      s.direct = true;
      s.coincident = false;
      for (int j = 0; j < kPanelOrder; ++j) {
        const int i = info.first_node + j;
        s.node = i;
        s.y = x[i];
        s.n = nrm[i];
        s.tau = tan[i];
        s.kappa = kap[i];
        s.ds = w[i];
        s.log_ds = 0.5 * w[i] * std::log((t.x - x[i]).squaredNorm());
        f(s);
      }
      continue;
    }
    buf.clear();
    panel_samples(dom, p, t, rule, buf);
    for (const SourceSample& smp : buf) f(smp);
  }
}

/// Density value at a sample.
inline double sample_value(const SourceSample& s, const double* sigma, int first_node) {
  if (s.direct) return sigma[s.node];
  double v = 0.0;
  for (int j = 0; j < kPanelOrder; ++j) v += s.interp[j] * sigma[first_node + j];
  return v;
}

/// Adds `value` times the sample's quadrature row to row[] (scalar unknowns).
inline void scatter(const SourceSample& s, int first_node, double value, double* row) {
  if (s.direct) {
    row[s.node] += value;
    return;
  }
  for (int j = 0; j < kPanelOrder; ++j) row[first_node + j] += value * s.interp[j];
}

/// Vector density (interleaved mu1, mu2 per node) at a sample.
inline Vec2 sample_vector(const SourceSample& s, const double* mu, int first_node) {
  if (s.direct) return {mu[2 * s.node], mu[2 * s.node + 1]};
  Vec2 v = Vec2::Zero();
  for (int j = 0; j < kPanelOrder; ++j) v += s.interp[j] * Vec2(mu[2 * (first_node + j)], mu[2 * (first_node + j) + 1]);
  return v;
}

/// Adds the 2-vector `value` to the (mu1, mu2) slots of row[].
inline void scatter_vector(const SourceSample& s, int first_node, const Vec2& value, double* row) {
  if (s.direct) {
    row[2 * s.node] += value.x();
    row[2 * s.node + 1] += value.y();
    return;
  }
  for (int j = 0; j < kPanelOrder; ++j) {
    row[2 * (first_node + j)] += value.x() * s.interp[j];
    row[2 * (first_node + j) + 1] += value.y() * s.interp[j];
  }
}

}  // namespace biharm
