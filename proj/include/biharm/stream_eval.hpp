#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "biharm/layer.hpp"
#include "biharm/linalg.hpp"

namespace biharm {

/// v2 = (1/2 pi) int (mu . n) log|xi - z| ds, the harmonic function whose
/// conjugate is the multivalued log term of the double-layer stream function.
double eval_v2(const Domain& dom, const Target& t, const Eigen::VectorXd& mu);
Eigen::VectorXd eval_v2(const Domain& dom, const std::vector<Target>& targets, const Eigen::VectorXd& mu);
Eigen::VectorXd v2_on_nodes(const Domain& dom, const Eigen::VectorXd& mu);

/// Tangential derivative of node samples by spectral differentiation on
/// each panel, d/ds = (d/du) / (ds/du).
Eigen::VectorXd tangential_derivative(const Domain& dom, const Eigen::VectorXd& f);
/// Transpose of tangential_derivative as a linear map.
Eigen::VectorXd tangential_derivative_transpose(const Domain& dom, const Eigen::VectorXd& g);

/// Neumann problem for the conjugate v1 = S^L sigma:
///   (1/2 I + K' + W) sigma = -d v2 / d tau,
/// W sigma = int sigma ds removing the one-dimensional null space.
class ConjugateSystem {
 public:
  explicit ConjugateSystem(const Domain& dom);

  const Domain& domain() const { return *dom_; }
  const Eigen::MatrixXd& operator_matrix() const { return a_; }
  /// S^L evaluated at the boundary nodes (n_d x n_d).
  const Eigen::MatrixXd& slp_matrix() const { return slp_; }
  const DenseFactorization& factorization() const { return *lu_; }

  /// sigma for a Stokes density mu.
  Eigen::VectorXd solve(const Eigen::VectorXd& mu) const;
  /// sigma for a given Neumann right-hand side.
  Eigen::VectorXd solve_neumann(const Eigen::VectorXd& rhs) const { return lu_->solve(rhs); }

 private:
  const Domain* dom_;
  Eigen::MatrixXd a_, slp_;
  std::unique_ptr<DenseFactorization> lu_;
};

/// v1 = S^L sigma at a target.
double eval_v1(const Domain& dom, const Target& t, const Eigen::VectorXd& sigma);

/// Densities and charge strengths that define a biharmonic field:
/// w = w_S + w_D + Re[conj(z) int rho ds] + c0 + sum_k c_k r_k^2 log r_k.
struct Representation {
  const Domain* domain = nullptr;
  Eigen::VectorXd mu;      // 2 n_d, interleaved
  Eigen::VectorXd sigma;   // n_d, density of the conjugate term
  Eigen::VectorXd charges; // c0, c1..cN
};

/// Builds the representation (computing sigma) from mu and c.
Representation make_representation(const Domain& dom, const ConjugateSystem& conj, Eigen::VectorXd mu,
                                   Eigen::VectorXd charges);

struct StreamField {
  std::vector<Vec2> targets;
  Eigen::VectorXd w;
  std::vector<bool> inside;
};

double eval_w_total(const Representation& rep, const Target& t);
StreamField eval_w_total(const Representation& rep, const std::vector<Vec2>& targets);

}  // namespace biharm
