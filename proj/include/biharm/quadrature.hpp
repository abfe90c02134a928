#pragma once

#include <array>
#include <vector>

#include "biharm/types.hpp"

namespace biharm {

struct QuadRule {
  std::vector<double> nodes;    // ascending, in [-1,1]
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule on [-1,1], 1 <= n <= 64. Cached.
const QuadRule& gauss_legendre(int n);

/// P_0..P_{kmax}(t).
std::vector<double> legendre_values(int kmax, double t);

/// Interpolation weights from the kPanelOrder Gauss-Legendre nodes to u:
/// f(u) ~ sum_j row[j] f(u_j).
std::array<double, kPanelOrder> panel_interp_row(double u);

/// Spectral differentiation on the panel nodes (d/du).
const Eigen::Matrix<double, kPanelOrder, kPanelOrder>& panel_diff_matrix();

/// Moments M_k = int_{-1}^{1} P_k(t) log|t - t0| dt, k < n, for t0 in [-1,1].
std::vector<double> log_moments(int n, double t0);

/// Product-integration rule for a panel containing the singular point t0:
///   int g(t) dt              ~ sum smooth_weights[q] g(nodes[q])
///   int g(t) log|t - t0| dt  ~ sum log_weights[q]    g(nodes[q])
/// The density is carried on the panel nodes and reaches the auxiliary
/// nodes through `interp` (nodes.size() x kPanelOrder).
struct SingularRule {
  double t0 = 0.0;
  std::vector<double> nodes, smooth_weights, log_weights;
  Eigen::MatrixXd interp;
};

inline constexpr int kSingularRuleOrder = 32;

SingularRule log_singular_rule(double t0);

/// Cached rule for the case where t0 is panel node `node`.
const SingularRule& log_singular_rule_at_node(int node);

/// Sub-intervals of [-1,1] obtained by bisecting until every piece is no
/// longer (in arclength, via `length_of`) than its distance to the target
/// (via `distance_to`). Both callbacks take (lo, hi).
template <class LengthFn, class DistFn>
std::vector<std::array<double, 2>> adaptive_subdivision(LengthFn&& length_of, DistFn&& distance_to,
                                                        int max_depth = 48) {
  std::vector<std::array<double, 2>> out;
  std::vector<std::array<double, 3>> stack{{-1.0, 1.0, 0.0}};
  while (!stack.empty()) {
    auto [lo, hi, depth] = stack.back();
    stack.pop_back();
    if (depth < max_depth && length_of(lo, hi) > distance_to(lo, hi)) {
      double mid = 0.5 * (lo + hi);
      stack.push_back({mid, hi, depth + 1});
      stack.push_back({lo, mid, depth + 1});
    } else {
      out.push_back({lo, hi});
    }
  }
  return out;
}

}  // namespace biharm
