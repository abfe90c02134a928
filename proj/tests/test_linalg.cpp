#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "biharm/linalg.hpp"
#include "doctest.h"

using namespace biharm;

namespace {
Eigen::MatrixXd random_matrix(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = u(rng);
  return a;
}
}  // namespace

TEST_CASE("lu_solve small systems") {
  Eigen::VectorXd b(3);
  b << 1, 2, 3;
  CHECK((lu_solve(Eigen::MatrixXd::Identity(3, 3), b) - b).norm() == 0.0);
  Eigen::MatrixXd a(2, 2);
  a << 2, 0, 0, 4;
  Eigen::VectorXd b2(2);
  b2 << 2, 4;
  Eigen::VectorXd x = lu_solve(a, b2);
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(1.0));
}

TEST_CASE("LU residuals and reconstruction on random matrices") {
  Eigen::MatrixXd a = random_matrix(50, 7);
  Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(50, -1, 2);
  DenseFactorization f(a);
  Eigen::VectorXd x = f.solve(b);
  CHECK((a * x - b).norm() / b.norm() < 1e-11);
  Eigen::VectorXd y = f.solve_transpose(b);
  CHECK((a.transpose() * y - b).norm() / b.norm() < 1e-11);

  // P A = L U for a 100x100 probe
  Eigen::MatrixXd a100 = random_matrix(100, 11);
  DenseFactorization f100(a100);
  const Eigen::MatrixXd& lu = f100.packed_factors();
  Eigen::MatrixXd l = lu.triangularView<Eigen::StrictlyLower>();
  l.diagonal().setOnes();
  Eigen::MatrixXd u = lu.triangularView<Eigen::Upper>();
  Eigen::MatrixXd pa = a100;
  for (int i = 0; i < 100; ++i) pa.row(i).swap(pa.row(f100.pivots()[i] - 1));
  CHECK((pa - l * u).norm() <= 1e-12 * a100.norm());
}

TEST_CASE("singular matrices are reported") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(4, 4);
  CHECK_THROWS_AS(DenseFactorization{a}, SingularMatrixError);
  CHECK(std::isinf(condition_number(Eigen::MatrixXd::Zero(3, 3))));
}

TEST_CASE("condition numbers") {
  CHECK(condition_number(Eigen::MatrixXd::Identity(5, 5)) == doctest::Approx(1.0));
  Eigen::MatrixXd d = Eigen::Vector2d(10, 0.1).asDiagonal();
  CHECK(condition_number(d) == doctest::Approx(100.0));
  Eigen::MatrixXd a = random_matrix(30, 3);
  CHECK(condition_number(-3.7 * a) == doctest::Approx(condition_number(a)).epsilon(1e-10));
  CHECK(condition_number(a) >= 1.0);

  // 3x3 Hilbert matrix against the eigenvalues of the (SPD) matrix in 50 digits
  using big = boost::multiprecision::cpp_bin_float_50;
  Eigen::Matrix<big, 3, 3> hb;
  Eigen::MatrixXd h(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      hb(i, j) = big(1) / big(i + j + 1);
      h(i, j) = 1.0 / (i + j + 1);
    }
  // characteristic polynomial roots by bisection in high precision
  auto det = [&](big lam) {
    Eigen::Matrix<big, 3, 3> m = hb;
    for (int i = 0; i < 3; ++i) m(i, i) -= lam;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  };
  auto root = [&](big lo, big hi) {
    for (int it = 0; it < 200; ++it) {
      big mid = (lo + hi) / 2;
      if ((det(lo) > 0) == (det(mid) > 0)) lo = mid; else hi = mid;
    }
    return (lo + hi) / 2;
  };
  big lmin = root(big(0), big("0.01"));
  big lmax = root(big(1), big(2));
  double oracle = static_cast<double>(lmax / lmin);
  CHECK(condition_number(h) == doctest::Approx(oracle).epsilon(1e-6));
}
