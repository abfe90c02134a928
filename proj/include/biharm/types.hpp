#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace biharm {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Gauss-Legendre nodes per boundary panel.
inline constexpr int kPanelOrder = 16;

inline cplx to_complex(const Vec2& v) { return {v.x(), v.y()}; }
inline Vec2 to_vec(cplx z) { return {z.real(), z.imag()}; }

/// Rotation by -pi/2: for a counterclockwise tangent this is the outward normal.
inline Vec2 rotate_cw(const Vec2& v) { return {v.y(), -v.x()}; }

/// grad-perp convention of the stream function: u = (d/dx2, -d/dx1).
inline Vec2 perp(const Vec2& grad) { return {grad.y(), -grad.x()}; }

}  // namespace biharm
