#include "biharm/stream_eval.hpp"

#include <cmath>
#include <stdexcept>

#include "biharm/kernels.hpp"
#include "biharm/potentials.hpp"
#include "biharm/quadrature.hpp"

namespace biharm {

double eval_v2(const Domain& dom, const Target& t, const Eigen::VectorXd& mu) {
  double v = 0.0;
  for_each_source(dom, t, SelfRule::log_singular, [&](const SourceSample& s) {
    v += sample_vector(s, mu.data(), dom.panel(s.panel).first_node).dot(s.n) * s.log_ds;
  });
  return v / (2.0 * pi);
}

Eigen::VectorXd eval_v2(const Domain& dom, const std::vector<Target>& targets, const Eigen::VectorXd& mu) {
  Eigen::VectorXd v(targets.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < static_cast<int>(targets.size()); ++i) v[i] = eval_v2(dom, targets[i], mu);
  return v;
}

Eigen::VectorXd v2_on_nodes(const Domain& dom, const Eigen::VectorXd& mu) {
  Eigen::VectorXd v(dom.num_nodes());
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < dom.num_nodes(); ++i) v[i] = eval_v2(dom, node_target(dom, i), mu);
  return v;
}

Eigen::VectorXd tangential_derivative(const Domain& dom, const Eigen::VectorXd& f) {
  const auto& d = panel_diff_matrix();
  Eigen::VectorXd out(f.size());
  for (int p = 0; p < dom.num_panels(); ++p) {
    const int o = p * kPanelOrder;
    out.segment<kPanelOrder>(o) = d * f.segment<kPanelOrder>(o);
    for (int j = 0; j < kPanelOrder; ++j) out[o + j] /= dom.jacobians()[o + j];
  }
  return out;
}

Eigen::VectorXd tangential_derivative_transpose(const Domain& dom, const Eigen::VectorXd& g) {
  const auto& d = panel_diff_matrix();
  Eigen::VectorXd out(g.size());
  for (int p = 0; p < dom.num_panels(); ++p) {
    const int o = p * kPanelOrder;
    Eigen::Matrix<double, kPanelOrder, 1> scaled;
    for (int j = 0; j < kPanelOrder; ++j) scaled[j] = g[o + j] / dom.jacobians()[o + j];
    out.segment<kPanelOrder>(o) = d.transpose() * scaled;
  }
  return out;
}

ConjugateSystem::ConjugateSystem(const Domain& dom) : dom_(&dom) {
  const int n = dom.num_nodes();
  a_.setZero(n, n);
  slp_.setZero(n, n);
#pragma omp parallel
  {
    Eigen::VectorXd row_a(n), row_s(n);
#pragma omp for schedule(dynamic, 8)
    for (int i = 0; i < n; ++i) {
      row_a.setZero();
      row_s.setZero();
      const Target t = node_target(dom, i);
      add_laplace_dlp_adjoint_row(dom, t, 1.0, row_a.data());
      add_laplace_slp_row(dom, t, 1.0, row_s.data());
      row_a[i] += 0.5;
      for (int j = 0; j < n; ++j) row_a[j] += dom.weights()[j];
      a_.row(i) = row_a.transpose();
      slp_.row(i) = row_s.transpose();
    }
  }
  lu_ = std::make_unique<DenseFactorization>(a_);
}

Eigen::VectorXd ConjugateSystem::solve(const Eigen::VectorXd& mu) const {
  if (mu.size() != 2 * dom_->num_nodes()) throw std::invalid_argument("ConjugateSystem::solve: density size mismatch");
  return lu_->solve(Eigen::VectorXd(-tangential_derivative(*dom_, v2_on_nodes(*dom_, mu))));
}

double eval_v1(const Domain& dom, const Target& t, const Eigen::VectorXd& sigma) {
  return laplace_slp_potential(dom, t, sigma);
}

Representation make_representation(const Domain& dom, const ConjugateSystem& conj, Eigen::VectorXd mu,
                                   Eigen::VectorXd charges) {
  if (charges.size() != dom.num_holes() + 1)
    throw std::invalid_argument("make_representation: need c0 plus one charge per hole");
  Representation rep;
  rep.domain = &dom;
  rep.sigma = conj.solve(mu);
  rep.mu = std::move(mu);
  rep.charges = std::move(charges);
  return rep;
}

double eval_w_total(const Representation& rep, const Target& t) {
  const Domain& dom = *rep.domain;
  double w = stream_slp(dom, t, rep.mu) + stream_dlp_direct(dom, t, rep.mu) + eval_v1(dom, t, rep.sigma);
  // Re[conj(z) C], C = int rho ds
  const cplx c = complex_density(density_integral(dom, rep.mu));
  w += (std::conj(to_complex(t.x)) * c).real();
  w += rep.charges[0];
  for (int k = 1; k < rep.charges.size(); ++k) w += rep.charges[k] * biharmonic_green(t.x, dom.charge_points()[k - 1]);
  return w;
}

StreamField eval_w_total(const Representation& rep, const std::vector<Vec2>& targets) {
  StreamField f;
  f.targets = targets;
  f.w.resize(targets.size());
  f.inside.resize(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) f.inside[i] = rep.domain->contains(targets[i]);
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < static_cast<int>(targets.size()); ++i) f.w[i] = eval_w_total(rep, field_target(targets[i]));
  return f;
}

}  // namespace biharm
