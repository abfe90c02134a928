#pragma once

#include <array>
#include <memory>
#include <vector>

#include "biharm/types.hpp"

namespace biharm {

/// Smooth closed parametric curve x(t), t in [0, period()).
class Curve {
 public:
  virtual ~Curve() = default;
  virtual Vec2 position(double t) const = 0;
  virtual Vec2 velocity(double t) const = 0;
  virtual Vec2 acceleration(double t) const = 0;
  virtual double period() const = 0;
};

class CircleCurve final : public Curve {
 public:
  CircleCurve(Vec2 center, double radius);
  Vec2 position(double t) const override;
  Vec2 velocity(double t) const override;
  Vec2 acceleration(double t) const override;
  double period() const override { return 2.0 * pi; }

  const Vec2& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Vec2 center_;
  double radius_;
};

/// The rectangle [0,a]x[0,b] with its corners smoothed by convolving the
/// arclength parametrisation of the polygon with a Gaussian of std `width`.
/// The parameter is the polygon arclength, corners sit at 0, a, a+b, 2a+b.
class RoundedRectangleCurve final : public Curve {
 public:
  RoundedRectangleCurve(double a, double b, double width);
  Vec2 position(double s) const override;
  Vec2 velocity(double s) const override;
  Vec2 acceleration(double s) const override;
  double period() const override { return 2.0 * (a_ + b_); }

  double a() const { return a_; }
  double b() const { return b_; }
  double width() const { return width_; }
  std::array<double, 4> corner_parameters() const { return {0.0, a_, a_ + b_, 2.0 * a_ + b_}; }

 private:
  double a_, b_, width_;
};

/// Same curve traversed backwards: x_r(t) = x(P - t).
class ReversedCurve final : public Curve {
 public:
  explicit ReversedCurve(std::shared_ptr<const Curve> base);
  Vec2 position(double t) const override;
  Vec2 velocity(double t) const override;
  Vec2 acceleration(double t) const override;
  double period() const override { return base_->period(); }

 private:
  std::shared_ptr<const Curve> base_;
};

/// Geometry of the curve at one parameter value.
struct CurvePoint {
  Vec2 x;
  Vec2 tau;       // unit tangent along the parametrisation
  Vec2 n;         // rotate_cw(tau)
  double kappa;   // signed curvature, (x' ^ x'') / |x'|^3
  double speed;   // |x'(t)|
};

CurvePoint evaluate(const Curve& curve, double t);

struct Panel {
  double t_lo = 0.0, t_hi = 0.0;
  double half_dt() const { return 0.5 * (t_hi - t_lo); }
  double param(double u) const { return t_lo + (u + 1.0) * half_dt(); }
};

/// One closed boundary curve discretised into Gauss-Legendre panels.
class BoundaryComponent {
 public:
  /// `breakpoints` are increasing panel endpoints covering one period
  /// (the last panel wraps back to breakpoints[0] + period).
  BoundaryComponent(std::shared_ptr<const Curve> curve, std::vector<double> breakpoints);

  const Curve& curve() const { return *curve_; }
  std::shared_ptr<const Curve> curve_ptr() const { return curve_; }

  int num_panels() const { return static_cast<int>(panels_.size()); }
  int num_nodes() const { return num_panels() * kPanelOrder; }
  const Panel& panel(int p) const { return panels_[p]; }
  const std::vector<Panel>& panels() const { return panels_; }

  /// Geometry at reference coordinate u in [-1,1] of panel p. `speed` is ds/du.
  CurvePoint point_at(int p, double u) const;

  const std::vector<Vec2>& nodes() const { return x_; }
  const std::vector<Vec2>& tangents() const { return tau_; }
  const std::vector<Vec2>& normals() const { return n_; }
  const std::vector<double>& curvature() const { return kappa_; }
  /// Arclength quadrature weight of each node.
  const std::vector<double>& weights() const { return w_; }
  /// ds/du at each node.
  const std::vector<double>& jacobians() const { return jac_; }

  double arclength() const { return length_; }
  double panel_length(int p) const;
  /// +1 if the curve runs counterclockwise, -1 otherwise.
  int orientation() const { return orientation_; }

  /// Copy with reversed traversal (panels mirrored accordingly).
  BoundaryComponent reversed() const;

 private:
  std::shared_ptr<const Curve> curve_;
  std::vector<double> breaks_;
  std::vector<Panel> panels_;
  std::vector<Vec2> x_, tau_, n_;
  std::vector<double> kappa_, w_, jac_;
  double length_ = 0.0;
  int orientation_ = 1;
};

BoundaryComponent make_circle(const Vec2& center, double radius, int n_panels);

/// Number of dyadic refinement levels toward each corner chosen by
/// rounded_rectangle_corner_levels() when corner_levels < 0.
int rounded_rectangle_corner_levels(double a, double b, double width, int n_panels);

/// Rounded rectangle with `n_panels` panels in total: uniform panels on each
/// side (proportional to side length) followed by `corner_levels` dyadic
/// refinements toward every corner (8 extra panels per level).
BoundaryComponent make_rounded_rectangle(double a, double b, double width, int n_panels,
                                         int corner_levels = -1);

/// Winding number of the closed curve about p. Throws std::domain_error when
/// p lies on the curve.
int winding_number(const Vec2& p, const BoundaryComponent& comp);

/// Flattened view of every panel of a domain.
struct PanelInfo {
  int component;
  int local;        // panel index within the component
  int first_node;   // global index of its first node
  int prev, next;   // global indices of neighbouring panels on the same curve
  Vec2 center;
  double radius;    // bounding radius of the panel about center
  double length;
};

/// Bounded domain: an outer curve (counterclockwise) with holes (clockwise),
/// so that n = rotate_cw(tau) points out of the domain on every component.
class Domain {
 public:
  /// Holes given counterclockwise are reversed. `charge_points` (one per hole)
  /// default to the hole centroids.
  Domain(BoundaryComponent outer, std::vector<BoundaryComponent> holes = {},
         std::vector<Vec2> charge_points = {});

  int num_components() const { return static_cast<int>(comps_.size()); }
  int num_holes() const { return num_components() - 1; }
  const BoundaryComponent& component(int k) const { return comps_[k]; }
  const std::vector<BoundaryComponent>& components() const { return comps_; }
  const std::vector<Vec2>& charge_points() const { return charges_; }

  int num_nodes() const { return static_cast<int>(x_.size()); }
  int node_offset(int k) const { return node_offset_[k]; }
  int panel_offset(int k) const { return panel_offset_[k]; }
  int num_panels() const { return static_cast<int>(panels_.size()); }
  const PanelInfo& panel(int g) const { return panels_[g]; }
  int component_of_node(int i) const { return node_comp_[i]; }

  const std::vector<Vec2>& nodes() const { return x_; }
  const std::vector<Vec2>& tangents() const { return tau_; }
  const std::vector<Vec2>& normals() const { return n_; }
  const std::vector<double>& curvature() const { return kappa_; }
  const std::vector<double>& weights() const { return w_; }
  const std::vector<double>& jacobians() const { return jac_; }

  /// True if p is inside the outer curve and outside every hole.
  bool contains(const Vec2& p) const;

 private:
  std::vector<BoundaryComponent> comps_;
  std::vector<Vec2> charges_;
  std::vector<int> node_offset_, panel_offset_, node_comp_;
  std::vector<PanelInfo> panels_;
  std::vector<Vec2> x_, tau_, n_;
  std::vector<double> kappa_, w_, jac_;
};

}  // namespace biharm
