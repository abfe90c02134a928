#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace biharm {

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Partially pivoted LU of a square matrix (LAPACK getrf).
class DenseFactorization {
 public:
  explicit DenseFactorization(Eigen::MatrixXd a);

  int size() const { return static_cast<int>(lu_.rows()); }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  /// Solves A^T x = b.
  Eigen::VectorXd solve_transpose(const Eigen::VectorXd& b) const;
  /// Solves A X = B for several right-hand sides at once.
  Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;

  const Eigen::MatrixXd& packed_factors() const { return lu_; }
  const std::vector<int>& pivots() const { return ipiv_; }

 private:
  Eigen::MatrixXd lu_;
  std::vector<int> ipiv_;
};

Eigen::VectorXd lu_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

/// Singular values in decreasing order (LAPACK gesdd, values only).
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);

/// sigma_max / sigma_min in the 2-norm; +inf when sigma_min underflows.
double condition_number(const Eigen::MatrixXd& a);

}  // namespace biharm
