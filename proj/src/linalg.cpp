#include "biharm/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <lapacke.h>

namespace biharm {

DenseFactorization::DenseFactorization(Eigen::MatrixXd a) : lu_(std::move(a)) {
  if (lu_.rows() != lu_.cols()) throw std::invalid_argument("DenseFactorization: matrix is not square");
  const lapack_int n = static_cast<lapack_int>(lu_.rows());
  ipiv_.assign(n, 0);
  if (n == 0) return;
  const double scale = lu_.cwiseAbs().maxCoeff();
  if (!std::isfinite(scale)) throw std::invalid_argument("DenseFactorization: non-finite entries");
  lapack_int info = LAPACKE_dgetrf(LAPACK_COL_MAJOR, n, n, lu_.data(), n, ipiv_.data());
  if (info < 0) throw std::runtime_error("dgetrf: illegal argument " + std::to_string(-info));
  if (info > 0) throw SingularMatrixError("LU: exactly zero pivot at column " + std::to_string(info));
  // pivots this small mean the matrix is singular to working precision
  const double tiny = 1e-2 * std::numeric_limits<double>::epsilon() * scale * n;
  for (lapack_int i = 0; i < n; ++i)
    if (std::abs(lu_(i, i)) < tiny)
      throw SingularMatrixError("LU: numerically singular pivot at column " + std::to_string(i + 1));
}

Eigen::MatrixXd DenseFactorization::solve(const Eigen::MatrixXd& b) const {
  if (b.rows() != lu_.rows()) throw std::invalid_argument("DenseFactorization::solve: size mismatch");
  Eigen::MatrixXd x = b;
  const lapack_int n = static_cast<lapack_int>(lu_.rows());
  if (n == 0) return x;
  lapack_int info = LAPACKE_dgetrs(LAPACK_COL_MAJOR, 'N', n, static_cast<lapack_int>(x.cols()), lu_.data(), n,
                                   ipiv_.data(), x.data(), n);
  if (info != 0) throw std::runtime_error("dgetrs failed");
  return x;
}

Eigen::VectorXd DenseFactorization::solve(const Eigen::VectorXd& b) const {
  return solve(Eigen::MatrixXd(b)).col(0);
}

Eigen::VectorXd DenseFactorization::solve_transpose(const Eigen::VectorXd& b) const {
  if (b.size() != lu_.rows()) throw std::invalid_argument("DenseFactorization::solve_transpose: size mismatch");
  Eigen::VectorXd x = b;
  const lapack_int n = static_cast<lapack_int>(lu_.rows());
  if (n == 0) return x;
  lapack_int info = LAPACKE_dgetrs(LAPACK_COL_MAJOR, 'T', n, 1, lu_.data(), n, ipiv_.data(), x.data(), n);
  if (info != 0) throw std::runtime_error("dgetrs failed");
  return x;
}

Eigen::VectorXd lu_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) { return DenseFactorization(a).solve(b); }

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd work = a;
  const lapack_int m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
  Eigen::VectorXd s(std::min(m, n));
  if (s.size() == 0) return s;
  lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw std::runtime_error("dgesdd did not converge");
  return s;
}

double condition_number(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("condition_number: matrix is not square");
  Eigen::VectorXd s = singular_values(a);
  if (s.size() == 0) return 1.0;
  const double smin = s[s.size() - 1];
  if (smin <= std::numeric_limits<double>::min() * s[0] || smin == 0.0) return std::numeric_limits<double>::infinity();
  return s[0] / smin;
}

}  // namespace biharm
