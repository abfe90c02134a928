#include "biharm/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "biharm/kernels.hpp"
#include "biharm/potentials.hpp"

namespace biharm {

namespace {

bool parallel(Execution ex) { return ex == Execution::parallel; }

Eigen::VectorXd velocity_data(const Domain& dom, const Eigen::VectorXd& f_tau, const Eigen::VectorXd& g) {
  Eigen::VectorXd h(2 * dom.num_nodes());
  for (int i = 0; i < dom.num_nodes(); ++i) {
    const Vec2 grad = f_tau[i] * dom.tangents()[i] + g[i] * dom.normals()[i];
    const Vec2 u = perp(grad);
    h[2 * i] = u.x(), h[2 * i + 1] = u.y();
  }
  return h;
}

Eigen::VectorXd component_integrals(const Domain& dom, const Eigen::VectorXd& f) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(dom.num_components());
  for (int i = 0; i < dom.num_nodes(); ++i) b[dom.component_of_node(i)] += dom.weights()[i] * f[i];
  return b;
}

}  // namespace

// ---------------------------------------------------------------- data

DirichletData build_dirichlet_data(const Domain& dom, Eigen::VectorXd f, Eigen::VectorXd g) {
  if (f.size() != dom.num_nodes() || g.size() != dom.num_nodes())
    throw std::invalid_argument("build_dirichlet_data: one sample per node required");
  DirichletData d;
  d.f_tau = tangential_derivative(dom, f);
  d.f = std::move(f);
  d.g = std::move(g);
  d.b = component_integrals(dom, d.f);
  d.h = velocity_data(dom, d.f_tau, d.g);
  return d;
}

DirichletData build_dirichlet_data(const Domain& dom, const ScalarField& f, const ScalarField& g,
                                   const VectorField& grad_f) {
  const int n = dom.num_nodes();
  Eigen::VectorXd fv(n), gv(n);
  for (int i = 0; i < n; ++i) fv[i] = f(dom.nodes()[i]), gv[i] = g(dom.nodes()[i]);
  DirichletData d = build_dirichlet_data(dom, fv, gv);
  if (grad_f) {
    for (int i = 0; i < n; ++i) d.f_tau[i] = grad_f(dom.nodes()[i]).dot(dom.tangents()[i]);
    d.h = velocity_data(dom, d.f_tau, d.g);
  }
  return d;
}

DirichletData dirichlet_data_from_field(const Domain& dom, const ScalarField& w, const VectorField& grad_w) {
  const int n = dom.num_nodes();
  Eigen::VectorXd f(n), g(n), ft(n);
  for (int i = 0; i < n; ++i) {
    const Vec2 grad = grad_w(dom.nodes()[i]);
    f[i] = w(dom.nodes()[i]);
    g[i] = grad.dot(dom.normals()[i]);
    ft[i] = grad.dot(dom.tangents()[i]);
  }
  DirichletData d;
  d.b = component_integrals(dom, f);
  d.h = velocity_data(dom, ft, g);
  d.f = std::move(f), d.g = std::move(g), d.f_tau = std::move(ft);
  return d;
}

// ---------------------------------------------------------------- blocks

Eigen::MatrixXd assemble_velocity_block(const Domain& dom, Execution ex) {
  const int n = dom.num_nodes();
  Eigen::MatrixXd a(2 * n, 2 * n);
#pragma omp parallel if (parallel(ex))
  {
    Eigen::VectorXd rx(2 * n), ry(2 * n);
#pragma omp for schedule(dynamic, 4)
    for (int i = 0; i < n; ++i) {
      rx.setZero();
      ry.setZero();
      const Target t = node_target(dom, i);
      add_stokes_slp_row(dom, t, rx.data(), ry.data());
      add_stokes_dlp_row(dom, t, rx.data(), ry.data());
      // W completion plus the flux term n(x) int mu.n, which removes the
      // one-dimensional cokernel of the interior operator
      const Vec2 ni = dom.normals()[i];
      for (int j = 0; j < n; ++j) {
        const double wj = dom.weights()[j];
        const Vec2 nj = dom.normals()[j];
        rx[2 * j] += wj + ni.x() * nj.x() * wj;
        rx[2 * j + 1] += ni.x() * nj.y() * wj;
        ry[2 * j] += ni.y() * nj.x() * wj;
        ry[2 * j + 1] += wj + ni.y() * nj.y() * wj;
      }
      rx[2 * i] -= 0.5;
      ry[2 * i + 1] -= 0.5;
      a.row(2 * i) = rx.transpose();
      a.row(2 * i + 1) = ry.transpose();
    }
  }
  return a;
}

Eigen::MatrixXd assemble_charge_columns(const Domain& dom) {
  const int n = dom.num_nodes(), nh = dom.num_holes();
  Eigen::MatrixXd b(2 * n, nh);
  for (int l = 0; l < nh; ++l)
    for (int i = 0; i < n; ++i) {
      if ((dom.nodes()[i] - dom.charge_points()[l]).norm() == 0.0)
        throw std::invalid_argument("charge point lies on the boundary");
      Vec2 u = charge_velocity(dom.nodes()[i], dom.charge_points()[l]);
      b(2 * i, l) = u.x();
      b(2 * i + 1, l) = u.y();
    }
  return b;
}

Eigen::MatrixXd assemble_charge_constraints(const Domain& dom) {
  const int nc = dom.num_components();
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(nc, nc);
  for (int i = 0; i < dom.num_nodes(); ++i) {
    const int k = dom.component_of_node(i);
    f(k, 0) += dom.weights()[i];
    for (int l = 1; l < nc; ++l) f(k, l) += dom.weights()[i] * biharmonic_green(dom.nodes()[i], dom.charge_points()[l - 1]);
  }
  return f;
}

Eigen::MatrixXd assemble_constraint_rows(const Domain& dom, const ConjugateSystem& conj, Execution ex) {
  const int n = dom.num_nodes(), nc = dom.num_components();

  // Conjugate path: int_{Gamma_k} S^L A^{-1} (-D_tau) V2 mu ds = c_k^T V2 mu
  Eigen::MatrixXd c(n, nc);
  for (int k = 0; k < nc; ++k) {
    Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
      if (dom.component_of_node(i) == k) q[i] = dom.weights()[i];
    Eigen::VectorXd a = conj.slp_matrix().transpose() * q;
    c.col(k) = -tangential_derivative_transpose(dom, conj.factorization().solve_transpose(a));
  }

  // Fixed blocks of targets summed in order, so the result does not depend
  // on the thread count.
  constexpr int kBlock = 64;
  const int nblocks = (n + kBlock - 1) / kBlock;
  std::vector<Eigen::MatrixXd> partial(nblocks);
#pragma omp parallel if (parallel(ex))
  {
    Eigen::RowVectorXd wrow(2 * n), vrow(2 * n);
#pragma omp for schedule(dynamic, 1)
    for (int b = 0; b < nblocks; ++b) {
      Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nc, 2 * n);
      for (int i = b * kBlock; i < std::min(n, (b + 1) * kBlock); ++i) {
        wrow.setZero();
        vrow.setZero();
        const Target t = node_target(dom, i);
        add_stream_slp_row(dom, t, 1.0, wrow.data());
        add_stream_dlp_direct_row(dom, t, 1.0, wrow.data());
        add_v2_row(dom, t, 1.0, vrow.data());
        local.row(dom.component_of_node(i)) += dom.weights()[i] * wrow;
        for (int k = 0; k < nc; ++k) local.row(k) += c(i, k) * vrow;
      }
      partial[b] = std::move(local);
    }
  }
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(nc, 2 * n);
  for (const auto& p : partial) d += p;

  // completion Re[conj(z) int rho ds] = sum_j w_j (y mu1_j - x mu2_j)
  for (int k = 0; k < nc; ++k) {
    Vec2 m = Vec2::Zero();
    for (int i = 0; i < n; ++i)
      if (dom.component_of_node(i) == k) m += dom.weights()[i] * dom.nodes()[i];
    for (int j = 0; j < n; ++j) {
      d(k, 2 * j) += dom.weights()[j] * m.y();
      d(k, 2 * j + 1) -= dom.weights()[j] * m.x();
    }
  }
  return d;
}

void scale_system(BlockSystem& sys, const Domain& dom) {
  Eigen::VectorXd s = Eigen::VectorXd::Ones(sys.size());
  for (int i = 0; i < dom.num_nodes(); ++i) s[2 * i] = s[2 * i + 1] = std::sqrt(dom.weights()[i]);
  // A -> S A S^{-1}, b -> S b, with S = 1 on the charge/constraint part
  sys.matrix = s.asDiagonal() * sys.matrix * s.cwiseInverse().asDiagonal();
  sys.rhs = s.cwiseProduct(sys.rhs);
  sys.scaling = s.cwiseProduct(sys.scaling);
}

BlockSystem assemble_block_system(const Domain& dom, const ConjugateSystem& conj, const DirichletData& data,
                                  bool scaled, Execution ex) {
  const int n2 = 2 * dom.num_nodes(), nc = dom.num_components();
  BlockSystem sys;
  sys.n_density = n2;
  sys.n_charges = nc;
  sys.matrix.setZero(n2 + nc, n2 + nc);
  sys.matrix.topLeftCorner(n2, n2) = assemble_velocity_block(dom, ex);
  if (nc > 1) sys.matrix.block(0, n2 + 1, n2, nc - 1) = assemble_charge_columns(dom);
  sys.matrix.bottomLeftCorner(nc, n2) = assemble_constraint_rows(dom, conj, ex);
  sys.matrix.bottomRightCorner(nc, nc) = assemble_charge_constraints(dom);
  sys.rhs.resize(n2 + nc);
  sys.rhs << data.h, data.b;
  sys.scaling = Eigen::VectorXd::Ones(n2 + nc);
  if (scaled) scale_system(sys, dom);
  return sys;
}

FarkasSystem assemble_farkas(const Domain& dom, const DirichletData* data, bool scaled, Execution ex) {
  if (dom.num_holes() > 0) throw std::invalid_argument("assemble_farkas: only simply connected domains are supported");
  const int n = dom.num_nodes();
  FarkasSystem sys;
  sys.matrix.resize(2 * n, 2 * n);
  const auto& x = dom.nodes();
  const auto& nr = dom.normals();
  const auto& w = dom.weights();
#pragma omp parallel for schedule(static) if (parallel(ex))
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      FarkasKernels k = i == j ? farkas_diagonal(dom.curvature()[i]) : farkas_kernels(x[i], nr[i], x[j], nr[j]);
      sys.matrix(i, j) = k.k11 * w[j];
      sys.matrix(i, n + j) = k.k12 * w[j];
      sys.matrix(n + i, j) = k.k21 * w[j];
      sys.matrix(n + i, n + j) = k.k22 * w[j];
    }
    sys.matrix(i, i) += 0.5;
    sys.matrix(n + i, n + i) += 0.5;
    sys.matrix(n + i, i) -= dom.curvature()[i];
  }
  sys.rhs = Eigen::VectorXd::Zero(2 * n);
  if (data) sys.rhs << data->f, data->g;
  sys.scaling = Eigen::VectorXd::Ones(2 * n);
  if (scaled) {
    for (int i = 0; i < n; ++i) sys.scaling[i] = sys.scaling[n + i] = std::sqrt(w[i]);
    sys.matrix = sys.scaling.asDiagonal() * sys.matrix * sys.scaling.cwiseInverse().asDiagonal();
    sys.rhs = sys.scaling.cwiseProduct(sys.rhs);
  }
  return sys;
}

BlockSolver::BlockSolver(const Domain& dom, const ConjugateSystem& conj, BlockSystem sys)
    : dom_(&dom), conj_(&conj), sys_(std::move(sys)), lu_(sys_.matrix) {}

Eigen::VectorXd BlockSolver::rhs_for(const DirichletData& data) const {
  if (data.h.size() != sys_.n_density || data.b.size() != sys_.n_charges)
    throw std::invalid_argument("BlockSolver: boundary data does not match the system");
  Eigen::VectorXd rhs(sys_.size());
  rhs << data.h, data.b;
  return sys_.scaling.cwiseProduct(rhs);
}

Solution BlockSolver::solve_scaled(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd x = lu_.solve(rhs);
  const double bn = rhs.norm();
  Solution sol;
  sol.relative_residual = bn > 0 ? (sys_.matrix * x - rhs).norm() / bn : (sys_.matrix * x).norm();
  x = x.cwiseQuotient(sys_.scaling);
  sol.rep = make_representation(*dom_, *conj_, x.head(sys_.n_density), x.tail(sys_.n_charges));
  return sol;
}

Solution BlockSolver::solve(const DirichletData& data) const { return solve_scaled(rhs_for(data)); }

Solution solve_block_system(const Domain& dom, const ConjugateSystem& conj, const BlockSystem& sys) {
  BlockSolver solver(dom, conj, sys);
  return solver.solve_scaled(sys.rhs);
}

// ---------------------------------------------------------------- reference

Eigen::MatrixXd reference::assemble_velocity_block(const Domain& dom) {
  const int n = dom.num_nodes();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  std::vector<SourceSample> samples;
  for (int i = 0; i < n; ++i) {
    const Target t = node_target(dom, i);
    for (int p = 0; p < dom.num_panels(); ++p) {
      const int f = dom.panel(p).first_node;
      // single layer: log-singular rule on the target's own panel
      samples.clear();
      panel_samples(dom, p, t, SelfRule::log_singular, samples);
      for (const SourceSample& s : samples) {
        const Mat2 k = stokeslet(t.x, s.y) * s.ds +
                       (std::log((t.x - s.y).norm()) * s.ds - s.log_ds) / (4.0 * pi) * Mat2::Identity();
        for (int j = 0; j < kPanelOrder; ++j) {
          const double wt = s.direct ? (s.node == f + j ? 1.0 : 0.0) : s.interp[j];
          a.block<2, 2>(2 * i, 2 * (f + j)) += wt * k;
        }
      }
      // double layer with its diagonal limit
      samples.clear();
      panel_samples(dom, p, t, SelfRule::limit, samples);
      for (const SourceSample& s : samples) {
        const Mat2 k = (s.coincident ? stresslet_diagonal(s.tau, s.kappa) : stresslet(t.x, s.y, s.n)) * s.ds;
        for (int j = 0; j < kPanelOrder; ++j) {
          const double wt = s.direct ? (s.node == f + j ? 1.0 : 0.0) : s.interp[j];
          a.block<2, 2>(2 * i, 2 * (f + j)) += wt * k;
        }
      }
    }
    for (int j = 0; j < n; ++j)
      a.block<2, 2>(2 * i, 2 * j) += dom.weights()[j] * (Mat2::Identity() + dom.normals()[i] * dom.normals()[j].transpose());
    a.block<2, 2>(2 * i, 2 * i) -= 0.5 * Mat2::Identity();
  }
  return a;
}

}  // namespace biharm
