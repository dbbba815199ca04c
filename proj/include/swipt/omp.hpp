#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swipt/errors.hpp"
#include "swipt/linalg.hpp"

namespace swipt::linalg {

struct OmpOptions {
  /// Select by |<a_j, r>| / ||a_j|| instead of |<a_j, r>|.
  bool normalized = true;
  /// Stop once ||r|| <= relative_tolerance * ||y||.
  double relative_tolerance = 1e-12;
  /// A selected column whose component orthogonal to the current support is
  /// below this fraction of its norm is treated as linearly dependent.
  double dependence_tolerance = 1e-10;
};

template <typename T>
struct SparseSolution {
  /// Selected columns in selection order; distinct.
  std::vector<std::size_t> support;
  /// Coefficient of each support column.
  std::vector<T> values;
  /// ||r|| before the first iteration, then once per iteration.
  std::vector<double> residual_norm_history;
  /// Some support column was dependent on earlier ones; values then hold the
  /// minimum-norm least-squares solution on the support.
  bool rank_deficient = false;

  double residual_norm() const { return residual_norm_history.back(); }

  std::vector<T> dense(std::size_t n) const {
    std::vector<T> x(n, T{});
    for (std::size_t i = 0; i < support.size(); ++i) x[support[i]] = values[i];
    return x;
  }
};

/// Orthogonal matching pursuit with a sparsity stopping rule. The support
/// least-squares problem is kept as an incremental Gram-Schmidt QR.
template <typename T>
SparseSolution<T> omp(const DenseMatrix<T>& a, std::span<const T> y, std::size_t sparsity,
                      const OmpOptions& opt = {}) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (y.size() != m) throw InputError("omp: measurement size does not match matrix rows");
  if (sparsity < 1 || sparsity > n)
    throw InputError("omp: sparsity " + std::to_string(sparsity) + " outside [1, " +
                     std::to_string(n) + "]");

  std::vector<double> col_norm(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += std::norm(std::complex<double>(a(i, j)));
    col_norm[j] = std::sqrt(s);
  }

  SparseSolution<T> out;
  std::vector<T> r(y.begin(), y.end());
  const double y_norm = norm2(std::span<const T>(r));
  out.residual_norm_history.push_back(y_norm);
  const double stop_level = opt.relative_tolerance * y_norm;

  std::vector<std::vector<T>> basis;      // orthonormal q_p
  std::vector<std::vector<T>> r_cols;     // column p of the triangular factor, length p + 1
  std::vector<T> z;                       // q_p^H y
  struct Dependent {
    std::size_t support_pos;
    std::vector<T> coeffs;  // in the q basis
  };
  std::vector<Dependent> dependents;
  std::vector<std::optional<std::size_t>> basis_index;  // per support entry
  std::vector<bool> selected(n, false);

  while (out.support.size() < sparsity) {
    if (out.residual_norm_history.back() <= stop_level) break;

    std::size_t best = n;
    double best_score = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (selected[j] || col_norm[j] == 0.0) continue;
      T c{};
      for (std::size_t i = 0; i < m; ++i) c += conj(a(i, j)) * r[i];
      double score = std::abs(c);
      if (opt.normalized) score /= col_norm[j];
      if (best == n || score > best_score) {
        best = j;
        best_score = score;
      }
    }
    if (best == n || best_score == 0.0) break;

    selected[best] = true;
    std::vector<T> v = a.column(best);
    std::vector<T> coeffs(basis.size(), T{});
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < basis.size(); ++p) {
        const T c = dot(std::span<const T>(basis[p]), std::span<const T>(v));
        for (std::size_t i = 0; i < m; ++i) v[i] -= c * basis[p][i];
        coeffs[p] += c;
      }
    }
    const double v_norm = norm2(std::span<const T>(v));

    if (v_norm <= opt.dependence_tolerance * col_norm[best]) {
      out.rank_deficient = true;
      dependents.push_back({out.support.size(), std::move(coeffs)});
      basis_index.push_back(std::nullopt);
      out.support.push_back(best);
      out.residual_norm_history.push_back(out.residual_norm_history.back());
      continue;
    }

    for (T& vi : v) vi /= v_norm;
    coeffs.push_back(T(v_norm));
    const T zq = dot(std::span<const T>(v), std::span<const T>(r));
    for (std::size_t i = 0; i < m; ++i) r[i] -= zq * v[i];
    basis_index.push_back(basis.size());
    basis.push_back(std::move(v));
    r_cols.push_back(std::move(coeffs));
    z.push_back(zq);
    out.support.push_back(best);
    out.residual_norm_history.push_back(norm2(std::span<const T>(r)));
  }

  // Back substitution with the upper-triangular factor: R_B x = rhs.
  const std::size_t nb = basis.size();
  auto back_solve = [&](std::vector<T> rhs) {
    for (std::size_t ii = nb; ii-- > 0;) {
      T s = rhs[ii];
      for (std::size_t k = ii + 1; k < nb; ++k) s -= r_cols[k][ii] * rhs[k];
      rhs[ii] = s / r_cols[ii][ii];
    }
    return rhs;
  };

  std::vector<T> x_basis = back_solve(z);
  std::vector<T> x_dep;
  if (!dependents.empty()) {
    // Each dependent column equals B c_d. All least-squares solutions are
    // x_B = x0 - C t, x_D = t; the minimum-norm one has (I + C^H C) t = C^H x0.
    const std::size_t nd = dependents.size();
    DenseMatrix<T> cmat(nb, nd);
    for (std::size_t d = 0; d < nd; ++d) {
      std::vector<T> padded = dependents[d].coeffs;
      padded.resize(nb, T{});
      const auto col = back_solve(std::move(padded));
      for (std::size_t i = 0; i < nb; ++i) cmat(i, d) = col[i];
    }
    DenseMatrix<T> gram = DenseMatrix<T>::identity(nd);
    std::vector<T> rhs(nd, T{});
    for (std::size_t d1 = 0; d1 < nd; ++d1) {
      for (std::size_t d2 = 0; d2 < nd; ++d2)
        for (std::size_t i = 0; i < nb; ++i) gram(d1, d2) += conj(cmat(i, d1)) * cmat(i, d2);
      for (std::size_t i = 0; i < nb; ++i) rhs[d1] += conj(cmat(i, d1)) * x_basis[i];
    }
    x_dep = solve_hermitian(gram, std::span<const T>(rhs));
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t d = 0; d < nd; ++d) x_basis[i] -= cmat(i, d) * x_dep[d];
  }

  out.values.resize(out.support.size());
  std::size_t next_dep = 0;
  for (std::size_t s = 0; s < out.support.size(); ++s) {
    if (basis_index[s])
      out.values[s] = x_basis[*basis_index[s]];
    else
      out.values[s] = x_dep[next_dep++];
  }
  return out;
}

}  // namespace swipt::linalg
