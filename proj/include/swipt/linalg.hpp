#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "swipt/errors.hpp"

namespace swipt::linalg {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename T>
constexpr T conj(const T& x) {
  if constexpr (is_complex<T>::value)
    return std::conj(x);
  else
    return x;
}

template <typename T>
constexpr auto real(const T& x) {
  if constexpr (is_complex<T>::value)
    return x.real();
  else
    return x;
}

template <typename T>
using real_t = decltype(real(std::declval<T>()));

/// Dense row-major matrix.
template <typename T>
class DenseMatrix {
 public:
  using value_type = T;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  DenseMatrix adjoint() const {
    DenseMatrix a(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) a(j, i) = conj((*this)(i, j));
    return a;
  }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using CMatrix = DenseMatrix<std::complex<double>>;
using CVector = std::vector<std::complex<double>>;

/// x^H y
template <typename T>
T dot(std::span<const T> x, std::span<const T> y) {
  T s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += conj(x[i]) * y[i];
  return s;
}

template <typename T>
real_t<T> squared_norm(std::span<const T> x) {
  real_t<T> s{};
  for (const T& v : x) s += real(conj(v) * v);
  return s;
}

template <typename T>
real_t<T> norm2(std::span<const T> x) {
  return std::sqrt(squared_norm(x));
}

template <typename T>
std::vector<T> multiply(const DenseMatrix<T>& a, std::span<const T> x) {
  if (a.cols() != x.size()) throw InputError("multiply: dimension mismatch");
  std::vector<T> y(a.rows(), T{});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T s{};
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

template <typename T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw InputError("multiply: dimension mismatch");
  DenseMatrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

/// x^H A x, real part (A Hermitian).
template <typename T>
real_t<T> quadratic_form(const DenseMatrix<T>& a, std::span<const T> x) {
  const auto ax = multiply(a, x);
  return real(dot(x, std::span<const T>(ax)));
}

template <typename T>
real_t<T> frobenius_norm(const DenseMatrix<T>& a) {
  real_t<T> s{};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += real(conj(a(i, j)) * a(i, j));
  return std::sqrt(s);
}

/// ||A - A^H||_F / ||A||_F
template <typename T>
real_t<T> hermitian_defect(const DenseMatrix<T>& a) {
  real_t<T> diff{};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T d = a(i, j) - conj(a(j, i));
      diff += real(conj(d) * d);
    }
  const real_t<T> scale = frobenius_norm(a);
  return scale > 0 ? std::sqrt(diff) / scale : std::sqrt(diff);
}

struct Tolerances {
  double hermitian = 1e-10;
};

/// R = L L^H with L lower triangular and a real positive diagonal.
/// Unblocked, no pivoting.
template <typename T>
DenseMatrix<T> cholesky(const DenseMatrix<T>& r, const Tolerances& tol = {}) {
  if (!r.square() || r.rows() == 0) throw InputError("cholesky: matrix must be square and non-empty");
  if (hermitian_defect(r) > tol.hermitian) throw InputError("cholesky: matrix is not Hermitian");

  const std::size_t n = r.rows();
  DenseMatrix<T> l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    real_t<T> d = real(r(j, j));
    for (std::size_t k = 0; k < j; ++k) d -= real(conj(l(j, k)) * l(j, k));
    if (!(d > 0)) throw FactorizationError(j, static_cast<double>(d));
    const real_t<T> ljj = std::sqrt(d);
    l(j, j) = T(ljj);
    for (std::size_t i = j + 1; i < n; ++i) {
      T s = r(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

/// Solves L y = b for lower-triangular L.
template <typename T>
std::vector<T> forward_substitute(const DenseMatrix<T>& l, std::span<const T> b) {
  const std::size_t n = l.rows();
  if (b.size() != n) throw InputError("forward_substitute: dimension mismatch");
  std::vector<T> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    T s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i);
  }
  return y;
}

/// Solves L^H x = y for lower-triangular L without forming L^H.
template <typename T>
std::vector<T> adjoint_back_substitute(const DenseMatrix<T>& l, std::span<const T> y) {
  const std::size_t n = l.rows();
  if (y.size() != n) throw InputError("adjoint_back_substitute: dimension mismatch");
  std::vector<T> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    T s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= conj(l(k, ii)) * x[k];
    x[ii] = s / conj(l(ii, ii));
  }
  return x;
}

/// x = R^{-1} b given the Cholesky factor of R.
template <typename T>
std::vector<T> cholesky_solve(const DenseMatrix<T>& l, std::span<const T> b) {
  const auto y = forward_substitute(l, b);
  return adjoint_back_substitute(l, std::span<const T>(y));
}

/// Solves R x = b for Hermitian positive-definite R through its Cholesky factor.
template <typename T>
std::vector<T> solve_hermitian(const DenseMatrix<T>& r, std::span<const T> b,
                               const Tolerances& tol = {}) {
  if (b.size() != r.rows()) throw InputError("solve_hermitian: dimension mismatch");
  return cholesky_solve(cholesky(r, tol), b);
}

}  // namespace swipt::linalg
