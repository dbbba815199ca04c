#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "swipt/fading.hpp"
#include "swipt/linalg.hpp"

namespace swipt::testing {

using EMatrix = Eigen::MatrixXcd;
using EVector = Eigen::VectorXcd;

inline cplx complex_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, std::sqrt(0.5));
  const double re = d(rng);
  const double im = d(rng);
  return {re, im};
}

inline linalg::CMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  linalg::CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = complex_normal(rng);
  return m;
}

inline linalg::CVector random_vector(std::mt19937_64& rng, std::size_t n) {
  linalg::CVector v(n);
  for (auto& x : v) x = complex_normal(rng);
  return v;
}

/// B B^H + I
inline linalg::CMatrix random_pd(std::mt19937_64& rng, std::size_t n) {
  const auto b = random_matrix(rng, n, n);
  auto r = linalg::multiply(b, b.adjoint());
  for (std::size_t i = 0; i < n; ++i) r(i, i) += 1.0;
  for (std::size_t i = 0; i < n; ++i) r(i, i) = r(i, i).real();
  return r;
}

inline EMatrix to_eigen(const linalg::CMatrix& m) {
  EMatrix e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline EVector to_eigen(const linalg::CVector& v) {
  EVector e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e(i) = v[i];
  return e;
}

inline double rel_diff(const linalg::CVector& a, const EVector& b) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) num += std::norm(a[i] - b(i));
  return std::sqrt(num) / b.norm();
}

}  // namespace swipt::testing
