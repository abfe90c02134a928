#include "biharm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "biharm/quadrature.hpp"

namespace biharm {

// ---------------------------------------------------------------- curves

CircleCurve::CircleCurve(Vec2 center, double radius) : center_(std::move(center)), radius_(radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle radius must be positive");
}
Vec2 CircleCurve::position(double t) const { return center_ + radius_ * Vec2(std::cos(t), std::sin(t)); }
Vec2 CircleCurve::velocity(double t) const { return radius_ * Vec2(-std::sin(t), std::cos(t)); }
Vec2 CircleCurve::acceleration(double t) const { return -radius_ * Vec2(std::cos(t), std::sin(t)); }

namespace {

constexpr std::array<std::array<double, 2>, 4> kEdgeDir{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

double gauss_pdf(double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * pi); }
double gauss_cdf(double u) { return 0.5 * std::erfc(-u / std::sqrt(2.0)); }
double gauss_sf(double u) { return 0.5 * std::erfc(u / std::sqrt(2.0)); }

// (ramp * Gaussian)(u) - ramp(u), written without cancellation.
double smoothed_ramp_excess(double u) {
  return u >= 0.0 ? gauss_pdf(u) - u * gauss_sf(u) : gauss_pdf(u) + u * gauss_cdf(u);
}
// (step * Gaussian)(u) - step(u), with step(0) = 1.
double smoothed_step_excess(double u) { return u >= 0.0 ? -gauss_sf(u) : gauss_cdf(u); }

}  // namespace

RoundedRectangleCurve::RoundedRectangleCurve(double a, double b, double width) : a_(a), b_(b), width_(width) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("rectangle sides must be positive");
  if (!(width > 0.0) || width > 0.1 * std::min(a, b))
    throw std::invalid_argument("corner width must be positive and small relative to the sides");
}

Vec2 RoundedRectangleCurve::position(double s) const {
  const double P = period();
  s -= P * std::floor(s / P);
  const auto sc = corner_parameters();
  const std::array<Vec2, 4> vert{Vec2(0, 0), Vec2(a_, 0), Vec2(a_, b_), Vec2(0, b_)};
  int e = s < a_ ? 0 : s < a_ + b_ ? 1 : s < 2 * a_ + b_ ? 2 : 3;
  Vec2 x = vert[e] + (s - sc[e]) * Vec2(kEdgeDir[e][0], kEdgeDir[e][1]);
  for (int c = 0; c < 4; ++c) {
    Vec2 jump(kEdgeDir[c][0] - kEdgeDir[(c + 3) % 4][0], kEdgeDir[c][1] - kEdgeDir[(c + 3) % 4][1]);
    for (int m = -1; m <= 1; ++m) x += jump * width_ * smoothed_ramp_excess((s - sc[c] - m * P) / width_);
  }
  return x;
}

Vec2 RoundedRectangleCurve::velocity(double s) const {
  const double P = period();
  s -= P * std::floor(s / P);
  const auto sc = corner_parameters();
  int e = s < a_ ? 0 : s < a_ + b_ ? 1 : s < 2 * a_ + b_ ? 2 : 3;
  Vec2 v(kEdgeDir[e][0], kEdgeDir[e][1]);
  for (int c = 0; c < 4; ++c) {
    Vec2 jump(kEdgeDir[c][0] - kEdgeDir[(c + 3) % 4][0], kEdgeDir[c][1] - kEdgeDir[(c + 3) % 4][1]);
    for (int m = -1; m <= 1; ++m) v += jump * smoothed_step_excess((s - sc[c] - m * P) / width_);
  }
  return v;
}

Vec2 RoundedRectangleCurve::acceleration(double s) const {
  const double P = period();
  s -= P * std::floor(s / P);
  const auto sc = corner_parameters();
  Vec2 acc = Vec2::Zero();
  for (int c = 0; c < 4; ++c) {
    Vec2 jump(kEdgeDir[c][0] - kEdgeDir[(c + 3) % 4][0], kEdgeDir[c][1] - kEdgeDir[(c + 3) % 4][1]);
    for (int m = -1; m <= 1; ++m) acc += jump * gauss_pdf((s - sc[c] - m * P) / width_) / width_;
  }
  return acc;
}

ReversedCurve::ReversedCurve(std::shared_ptr<const Curve> base) : base_(std::move(base)) {}
Vec2 ReversedCurve::position(double t) const { return base_->position(period() - t); }
Vec2 ReversedCurve::velocity(double t) const { return -base_->velocity(period() - t); }
Vec2 ReversedCurve::acceleration(double t) const { return base_->acceleration(period() - t); }

CurvePoint evaluate(const Curve& curve, double t) {
  CurvePoint p;
  p.x = curve.position(t);
  Vec2 v = curve.velocity(t);
  Vec2 a = curve.acceleration(t);
  p.speed = v.norm();
  if (!(p.speed > 0.0)) throw std::domain_error("degenerate curve parametrisation");
  p.tau = v / p.speed;
  p.n = rotate_cw(p.tau);
  p.kappa = (v.x() * a.y() - v.y() * a.x()) / (p.speed * p.speed * p.speed);
  return p;
}

// ---------------------------------------------------------------- panels

BoundaryComponent::BoundaryComponent(std::shared_ptr<const Curve> curve, std::vector<double> breakpoints)
    : curve_(std::move(curve)), breaks_(std::move(breakpoints)) {
  if (breaks_.empty()) throw std::invalid_argument("boundary component needs at least one panel");
  if (!std::is_sorted(breaks_.begin(), breaks_.end()) ||
      std::adjacent_find(breaks_.begin(), breaks_.end()) != breaks_.end())
    throw std::invalid_argument("panel breakpoints must be strictly increasing");
  const double P = curve_->period();
  if (breaks_.back() - breaks_.front() >= P) throw std::invalid_argument("panel breakpoints exceed one period");

  const int np = static_cast<int>(breaks_.size());
  for (int p = 0; p < np; ++p) {
    double hi = p + 1 < np ? breaks_[p + 1] : breaks_[0] + P;
    panels_.push_back({breaks_[p], hi});
  }

  const QuadRule& gl = gauss_legendre(kPanelOrder);
  double signed_area = 0.0;
  for (int p = 0; p < np; ++p) {
    for (int j = 0; j < kPanelOrder; ++j) {
      CurvePoint cp = point_at(p, gl.nodes[j]);
      x_.push_back(cp.x);
      tau_.push_back(cp.tau);
      n_.push_back(cp.n);
      kappa_.push_back(cp.kappa);
      jac_.push_back(cp.speed);
      w_.push_back(cp.speed * gl.weights[j]);
      length_ += w_.back();
      // area = 1/2 \oint x ^ dx
      signed_area += 0.5 * (cp.x.x() * cp.tau.y() - cp.x.y() * cp.tau.x()) * w_.back();
    }
  }
  orientation_ = signed_area >= 0.0 ? 1 : -1;
}

CurvePoint BoundaryComponent::point_at(int p, double u) const {
  const Panel& pan = panels_.at(p);
  CurvePoint cp = evaluate(*curve_, pan.param(u));
  cp.speed *= pan.half_dt();
  return cp;
}

double BoundaryComponent::panel_length(int p) const {
  double s = 0.0;
  for (int j = 0; j < kPanelOrder; ++j) s += w_[p * kPanelOrder + j];
  return s;
}

BoundaryComponent BoundaryComponent::reversed() const {
  auto rc = std::make_shared<ReversedCurve>(curve_);
  const double P = curve_->period();
  // t -> P - t maps breakpoints b_0 < ... < b_{n-1} to reversed order.
  std::vector<double> br;
  const double start = P - (breaks_[0] + P);
  br.push_back(start);
  for (int p = static_cast<int>(breaks_.size()) - 1; p >= 1; --p) br.push_back(P - breaks_[p]);
  return BoundaryComponent(rc, br);
}

BoundaryComponent make_circle(const Vec2& center, double radius, int n_panels) {
  if (n_panels < 1) throw std::invalid_argument("make_circle: need at least one panel");
  std::vector<double> br(n_panels);
  for (int p = 0; p < n_panels; ++p) br[p] = 2.0 * pi * p / n_panels;
  return BoundaryComponent(std::make_shared<CircleCurve>(center, radius), br);
}

int rounded_rectangle_corner_levels(double a, double b, double width, int n_panels) {
  // Refine until the panel at a corner is no longer than the corner width,
  // spending at most half of the panels on the grading.
  const double P = 2.0 * (a + b);
  int levels = 0;
  while (true) {
    const int base = n_panels - 8 * (levels + 1);
    if (base < 8 || 2 * base < n_panels) break;
    if (P / (n_panels - 8 * levels) / std::pow(2.0, levels) <= width) break;
    ++levels;
  }
  return levels;
}

BoundaryComponent make_rounded_rectangle(double a, double b, double width, int n_panels, int corner_levels) {
  auto curve = std::make_shared<RoundedRectangleCurve>(a, b, width);
  if (corner_levels < 0) corner_levels = rounded_rectangle_corner_levels(a, b, width, n_panels);
  const int base = n_panels - 8 * corner_levels;
  if (base < 4 || (corner_levels > 0 && base < 8))
    throw std::invalid_argument("make_rounded_rectangle: too few panels for the requested corner refinement");

  const std::array<double, 4> side{a, b, a, b};
  const double P = 2.0 * (a + b);
  std::array<int, 4> per_side{};
  int assigned = 0;
  for (int i = 0; i < 4; ++i) {
    per_side[i] = std::max(corner_levels > 0 ? 2 : 1, static_cast<int>(std::floor(base * side[i] / P)));
    assigned += per_side[i];
  }
  // hand out the remainder to the sides with the longest panels
  while (assigned < base) {
    int best = 0;
    for (int i = 1; i < 4; ++i)
      if (side[i] / per_side[i] > side[best] / per_side[best] + 1e-14) best = i;
    ++per_side[best];
    ++assigned;
  }
  if (assigned > base) throw std::invalid_argument("make_rounded_rectangle: too few panels");

  const auto sc = curve->corner_parameters();
  std::vector<double> br;
  for (int i = 0; i < 4; ++i) {
    const double h = side[i] / per_side[i];
    for (int k = 0; k < per_side[i]; ++k) br.push_back(sc[i] + k * h);
    for (int lev = 1; lev <= corner_levels; ++lev) {
      const double d = h / std::pow(2.0, lev);
      br.push_back(sc[i] + d);
      br.push_back(sc[i] + side[i] - d);
    }
  }
  std::sort(br.begin(), br.end());
  return BoundaryComponent(curve, br);
}

// ---------------------------------------------------------------- topology

int winding_number(const Vec2& p, const BoundaryComponent& comp) {
  const int samples_per_panel = 32;
  const int np = comp.num_panels();
  std::vector<Vec2> poly;
  std::vector<std::pair<int, double>> where;
  poly.reserve(np * samples_per_panel);
  for (int k = 0; k < np; ++k)
    for (int j = 0; j < samples_per_panel; ++j) {
      double u = -1.0 + 2.0 * j / samples_per_panel;
      poly.push_back(comp.curve().position(comp.panel(k).param(u)));
      where.emplace_back(k, u);
    }

  // closest sample, refined by Newton on |x(t) - p|^2
  int best = 0;
  double best_d = (poly[0] - p).norm();
  for (int i = 1; i < static_cast<int>(poly.size()); ++i) {
    double d = (poly[i] - p).norm();
    if (d < best_d) best_d = d, best = i;
  }
  const Panel& pan = comp.panel(where[best].first);
  const double dt = pan.half_dt() * 2.0 / samples_per_panel;
  double t = pan.param(where[best].second);
  for (int it = 0; it < 50; ++it) {
    Vec2 r = comp.curve().position(t) - p;
    Vec2 v = comp.curve().velocity(t);
    Vec2 acc = comp.curve().acceleration(t);
    double g = r.dot(v), gp = v.squaredNorm() + r.dot(acc);
    double step = gp > 0.0 ? -g / gp : -g / v.squaredNorm();
    step = std::clamp(step, -dt, dt);
    t += step;
    if (std::abs(step) < 1e-15 * comp.curve().period()) break;
  }
  CurvePoint cp = evaluate(comp.curve(), t);
  const double dist = (p - cp.x).norm();
  const double scale = comp.arclength();
  if (dist <= 1e-12 * scale) throw std::domain_error("winding_number: point lies on the boundary");

  // Near the curve trust the local normal, far away the polygon.
  if (dist < 4.0 * comp.arclength() / poly.size()) {
    bool inside_ccw_sense = (p - cp.x).dot(cp.n) * comp.orientation() < 0.0;
    return inside_ccw_sense ? comp.orientation() : 0;
  }
  double angle = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Vec2 a = poly[i] - p, b = poly[(i + 1) % poly.size()] - p;
    angle += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
  }
  return static_cast<int>(std::lround(angle / (2.0 * pi)));
}

// ---------------------------------------------------------------- domain

Domain::Domain(BoundaryComponent outer, std::vector<BoundaryComponent> holes, std::vector<Vec2> charge_points)
    : charges_(std::move(charge_points)) {
  if (outer.orientation() < 0) outer = outer.reversed();
  comps_.push_back(std::move(outer));
  for (auto& h : holes) comps_.push_back(h.orientation() > 0 ? h.reversed() : std::move(h));

  if (charges_.empty()) {
    for (int k = 1; k < num_components(); ++k) {
      const auto& c = comps_[k];
      // area centroid via the boundary integral of x^2/2 etc.
      double area = 0.0;
      Vec2 m = Vec2::Zero();
      for (int i = 0; i < c.num_nodes(); ++i) {
        const Vec2& x = c.nodes()[i];
        const Vec2& n = c.normals()[i];
        // the hole runs clockwise, so n points into the hole
        area -= x.x() * n.x() * c.weights()[i];
        m -= 0.5 * Vec2(x.x() * x.x() * n.x(), x.y() * x.y() * n.y()) * c.weights()[i];
      }
      charges_.push_back(m / area);
    }
  }
  if (static_cast<int>(charges_.size()) != num_holes())
    throw std::invalid_argument("Domain: need exactly one charge point per hole");
  for (int k = 1; k < num_components(); ++k)
    if (winding_number(charges_[k - 1], comps_[k]) == 0)
      throw std::invalid_argument("Domain: charge point is not inside its hole");

  int node_off = 0, panel_off = 0;
  for (int k = 0; k < num_components(); ++k) {
    const auto& c = comps_[k];
    node_offset_.push_back(node_off);
    panel_offset_.push_back(panel_off);
    const int np = c.num_panels();
    for (int p = 0; p < np; ++p) {
      PanelInfo info;
      info.component = k;
      info.local = p;
      info.first_node = node_off + p * kPanelOrder;
      info.prev = panel_off + (p + np - 1) % np;
      info.next = panel_off + (p + 1) % np;
      info.length = c.panel_length(p);
      Vec2 ctr = Vec2::Zero();
      for (int j = 0; j < kPanelOrder; ++j) ctr += c.nodes()[p * kPanelOrder + j];
      ctr /= kPanelOrder;
      double rad = std::max((c.curve().position(c.panel(p).t_lo) - ctr).norm(),
                            (c.curve().position(c.panel(p).t_hi) - ctr).norm());
      for (int j = 0; j < kPanelOrder; ++j) rad = std::max(rad, (c.nodes()[p * kPanelOrder + j] - ctr).norm());
      info.center = ctr;
      info.radius = rad;
      panels_.push_back(info);
    }
    for (int i = 0; i < c.num_nodes(); ++i) {
      x_.push_back(c.nodes()[i]);
      tau_.push_back(c.tangents()[i]);
      n_.push_back(c.normals()[i]);
      kappa_.push_back(c.curvature()[i]);
      w_.push_back(c.weights()[i]);
      jac_.push_back(c.jacobians()[i]);
      node_comp_.push_back(k);
    }
    node_off += c.num_nodes();
    panel_off += np;
  }
}

bool Domain::contains(const Vec2& p) const {
  if (winding_number(p, comps_[0]) == 0) return false;
  for (int k = 1; k < num_components(); ++k)
    if (winding_number(p, comps_[k]) != 0) return false;
  return true;
}

}  // namespace biharm
