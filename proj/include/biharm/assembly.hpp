#pragma once

#include <functional>

#include <Eigen/Dense>

#include "biharm/geometry.hpp"
#include "biharm/linalg.hpp"
#include "biharm/stream_eval.hpp"

namespace biharm {

enum class Execution { serial, parallel };

using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

/// Clamped-plate data w = f, dw/dn = g on the boundary, turned into the
/// boundary velocity h = grad-perp w = (w_y, -w_x) of the Stokes problem.
struct DirichletData {
  Eigen::VectorXd f, g, f_tau;  // per node
  Eigen::VectorXd b;            // per component, int_{Gamma_k} f ds
  Eigen::VectorXd h;            // 2 n_d, interleaved
};

/// f_tau from grad_f when given, otherwise by spectral differentiation of f.
DirichletData build_dirichlet_data(const Domain& dom, const ScalarField& f, const ScalarField& g,
                                   const VectorField& grad_f = nullptr);
DirichletData build_dirichlet_data(const Domain& dom, Eigen::VectorXd f, Eigen::VectorXd g);
/// Data of a known biharmonic w: f = w, g = grad w . n, f_tau = grad w . tau.
DirichletData dirichlet_data_from_field(const Domain& dom, const ScalarField& w, const VectorField& grad_w);

/// -1/2 I + S + D + W at the boundary nodes (2 n_d x 2 n_d), plus the flux
/// completion n(x) int mu . n ds: every interior Stokes field has zero net
/// flux, so without it the operator has a one-dimensional cokernel. The term
/// vanishes for compatible data and does not enter the representation.
Eigen::MatrixXd assemble_velocity_block(const Domain& dom, Execution ex = Execution::parallel);

/// Velocities of the charges at the nodes (2 n_d x N).
Eigen::MatrixXd assemble_charge_columns(const Domain& dom);
/// Row k: [ |Gamma_k|, int_{Gamma_k} r_l^2 log r_l ds (l = 1..N) ].
Eigen::MatrixXd assemble_charge_constraints(const Domain& dom);
/// Row k maps mu to int_{Gamma_k} w ds of the layer part of the stream function.
Eigen::MatrixXd assemble_constraint_rows(const Domain& dom, const ConjugateSystem& conj,
                                         Execution ex = Execution::parallel);

/// Unknowns: (mu1, mu2) per node, then c0..cN. Equations: velocity per
/// node, then one mean-value constraint per boundary component.
struct BlockSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  /// unknown_j = x_j / scaling_j; all ones when unscaled.
  Eigen::VectorXd scaling;
  int n_density = 0;
  int n_charges = 0;
  int size() const { return static_cast<int>(matrix.rows()); }
};

BlockSystem assemble_block_system(const Domain& dom, const ConjugateSystem& conj, const DirichletData& data,
                                  bool scaled = true, Execution ex = Execution::parallel);

/// Similarity scaling by sqrt of the quadrature weights on the density block.
void scale_system(BlockSystem& sys, const Domain& dom);

/// Classical second-kind system for the simply connected problem
/// [[1/2 + K11, K12], [-kappa + K21, 1/2 + K22]]; unknowns in two blocks.
struct FarkasSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  Eigen::VectorXd scaling;
};
FarkasSystem assemble_farkas(const Domain& dom, const DirichletData* data = nullptr, bool scaled = true,
                             Execution ex = Execution::parallel);

struct Solution {
  Representation rep;
  double relative_residual = 0.0;
};

/// Solves the block system and returns the density/charge representation.
Solution solve_block_system(const Domain& dom, const ConjugateSystem& conj, const BlockSystem& sys);

/// LU of an assembled block system, reused for several boundary data sets.
class BlockSolver {
 public:
  BlockSolver(const Domain& dom, const ConjugateSystem& conj, BlockSystem sys);

  const BlockSystem& system() const { return sys_; }
  Solution solve(const DirichletData& data) const;
  /// rhs already in the scaled variables of system().
  Solution solve_scaled(const Eigen::VectorXd& rhs) const;

 private:
  Eigen::VectorXd rhs_for(const DirichletData& data) const;

  const Domain* dom_;
  const ConjugateSystem* conj_;
  BlockSystem sys_;
  DenseFactorization lu_;
};

namespace reference {
/// Serial entry-by-entry velocity block, kept as a check on the
/// parallel row assembly.
Eigen::MatrixXd assemble_velocity_block(const Domain& dom);
}  // namespace reference

}  // namespace biharm
