#include "biharm/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace biharm {

namespace {

QuadRule build_gauss_legendre(int n) {
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

struct PanelBary {
  std::array<double, kPanelOrder> x, lambda;
  Eigen::Matrix<double, kPanelOrder, kPanelOrder> diff;
  PanelBary() {
    const QuadRule& gl = gauss_legendre(kPanelOrder);
    for (int j = 0; j < kPanelOrder; ++j) {
      x[j] = gl.nodes[j];
      double prod = 1.0;
      for (int k = 0; k < kPanelOrder; ++k)
        if (k != j) prod *= (gl.nodes[j] - gl.nodes[k]);
      lambda[j] = 1.0 / prod;
    }
    for (int i = 0; i < kPanelOrder; ++i) {
      double diag = 0.0;
      for (int j = 0; j < kPanelOrder; ++j) {
        if (i == j) continue;
        diff(i, j) = (lambda[j] / lambda[i]) / (x[i] - x[j]);
        diag -= diff(i, j);
      }
      diff(i, i) = diag;
    }
  }
};

const PanelBary& panel_bary() {
  static const PanelBary bary;
  return bary;
}

}  // namespace

const QuadRule& gauss_legendre(int n) {
  static const std::vector<QuadRule> rules = [] {
    std::vector<QuadRule> r(65);
    for (int k = 1; k <= 64; ++k) r[k] = build_gauss_legendre(k);
    return r;
  }();
  if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre: order must be in [1,64]");
  return rules[n];
}

std::vector<double> legendre_values(int kmax, double t) {
  std::vector<double> p(kmax + 1);
  p[0] = 1.0;
  if (kmax >= 1) p[1] = t;
  for (int k = 1; k < kmax; ++k) p[k + 1] = ((2.0 * k + 1.0) * t * p[k] - k * p[k - 1]) / (k + 1.0);
  return p;
}

std::array<double, kPanelOrder> panel_interp_row(double u) {
  const PanelBary& b = panel_bary();
  std::array<double, kPanelOrder> row{};
  double denom = 0.0;
  for (int j = 0; j < kPanelOrder; ++j) {
    double d = u - b.x[j];
    if (d == 0.0) {
      row.fill(0.0);
      row[j] = 1.0;
      return row;
    }
    row[j] = b.lambda[j] / d;
    denom += row[j];
  }
  for (double& r : row) r /= denom;
  return row;
}

const Eigen::Matrix<double, kPanelOrder, kPanelOrder>& panel_diff_matrix() { return panel_bary().diff; }

std::vector<double> log_moments(int n, double t0) {
  if (t0 < -1.0 || t0 > 1.0) throw std::invalid_argument("log_moments: t0 outside [-1,1]");
  std::vector<double> m(n);
  if (std::abs(t0) == 1.0) {
    // int P_k(t) log(1 - t) dt = -2/(k(k+1)); reflect for t0 = -1.
    m[0] = 2.0 * std::log(2.0) - 2.0;
    for (int k = 1; k < n; ++k) {
      double v = -2.0 / (k * (k + 1.0));
      m[k] = (t0 < 0 && k % 2 == 1) ? -v : v;
    }
    return m;
  }
  // q[k] = PV int P_k(t) / (t - t0) dt
  std::vector<double> q(n + 1);
  q[0] = std::log((1.0 - t0) / (1.0 + t0));
  q[1] = 2.0 + t0 * q[0];
  for (int k = 1; k < n; ++k) q[k + 1] = ((2.0 * k + 1.0) * t0 * q[k] - k * q[k - 1]) / (k + 1.0);
  m[0] = (1.0 - t0) * std::log(1.0 - t0) + (1.0 + t0) * std::log(1.0 + t0) - 2.0;
  for (int k = 1; k < n; ++k) m[k] = -(q[k + 1] - q[k - 1]) / (2.0 * k + 1.0);
  return m;
}

SingularRule log_singular_rule(double t0) {
  const QuadRule& gl = gauss_legendre(kSingularRuleOrder);
  const int n = gl.size();
  SingularRule rule;
  rule.t0 = t0;
  rule.nodes = gl.nodes;
  rule.smooth_weights = gl.weights;
  rule.log_weights.assign(n, 0.0);
  std::vector<double> mom = log_moments(n, t0);
  for (int q = 0; q < n; ++q) {
    std::vector<double> p = legendre_values(n - 1, gl.nodes[q]);
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += 0.5 * (2.0 * k + 1.0) * p[k] * mom[k];
    rule.log_weights[q] = gl.weights[q] * s;
  }
  rule.interp.resize(n, kPanelOrder);
  for (int q = 0; q < n; ++q) {
    auto row = panel_interp_row(gl.nodes[q]);
    for (int j = 0; j < kPanelOrder; ++j) rule.interp(q, j) = row[j];
  }
  return rule;
}

const SingularRule& log_singular_rule_at_node(int node) {
  static const std::vector<SingularRule> rules = [] {
    std::vector<SingularRule> r;
    const QuadRule& gl = gauss_legendre(kPanelOrder);
    for (int j = 0; j < kPanelOrder; ++j) r.push_back(log_singular_rule(gl.nodes[j]));
    return r;
  }();
  return rules.at(node);
}

}  // namespace biharm
