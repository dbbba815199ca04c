#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "swipt/omp.hpp"
#include "test_support.hpp"

namespace swipt::linalg {
namespace {

using swipt::testing::EMatrix;
using swipt::testing::EVector;
using swipt::testing::random_matrix;
using swipt::testing::random_vector;
using swipt::testing::to_eigen;

EVector least_squares_on(const CMatrix& a, const std::vector<std::size_t>& support, const CVector& y) {
  EMatrix sub(a.rows(), support.size());
  for (std::size_t k = 0; k < support.size(); ++k)
    for (std::size_t i = 0; i < a.rows(); ++i) sub(i, k) = a(i, support[k]);
  return sub.completeOrthogonalDecomposition().solve(to_eigen(y));
}

TEST(Omp, RejectsBadSparsityAndSizes) {
  const CMatrix a = CMatrix::identity(3);
  const CVector y = {1.0, 2.0, 3.0};
  EXPECT_THROW(omp(a, std::span<const cplx>(y), 0), InputError);
  EXPECT_THROW(omp(a, std::span<const cplx>(y), 4), InputError);
  const CVector y2 = {1.0, 2.0};
  EXPECT_THROW(omp(a, std::span<const cplx>(y2), 1), InputError);
}

TEST(Omp, OrthonormalDictionaryPicksLargestEntries) {
  const CMatrix a = CMatrix::identity(5);
  const CVector y = {0.1, -3.0, 0.5, {0.0, 2.0}, 0.2};
  const auto sol = omp(a, std::span<const cplx>(y), 2);
  ASSERT_EQ(sol.support, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(sol.values[0], cplx(-3.0));
  EXPECT_EQ(sol.values[1], cplx(0.0, 2.0));
  EXPECT_NEAR(sol.residual_norm(), std::sqrt(0.01 + 0.25 + 0.04), 1e-14);
}

TEST(Omp, TiesGoToLowestIndex) {
  const CMatrix a = CMatrix::identity(3);
  const CVector y = {1.0, 1.0, 1.0};
  const auto sol = omp(a, std::span<const cplx>(y), 1);
  EXPECT_EQ(sol.support, std::vector<std::size_t>{0});
}

TEST(Omp, SkipsZeroColumns) {
  CMatrix a(2, 3);
  a(0, 1) = 1.0;
  a(1, 2) = 1.0;
  const CVector y = {1.0, 1.0};
  const auto sol = omp(a, std::span<const cplx>(y), 3);
  for (std::size_t s : sol.support) EXPECT_NE(s, 0u);
  EXPECT_EQ(sol.support.size(), 2u);
}

TEST(Omp, NormalizedSelectionIgnoresColumnScale) {
  CMatrix a(2, 2);
  a(0, 0) = 100.0;  // direction e1, large norm
  a(0, 1) = 1.0;    // direction (1, 1) / sqrt 2
  a(1, 1) = 1.0;
  const CVector y = {1.0, 1.0};
  OmpOptions raw;
  raw.normalized = false;
  EXPECT_EQ(omp(a, std::span<const cplx>(y), 1).support, std::vector<std::size_t>{1});
  EXPECT_EQ(omp(a, std::span<const cplx>(y), 1, raw).support, std::vector<std::size_t>{0});
}

TEST(Omp, ExactSparseRecovery) {
  std::mt19937_64 rng(7);
  const auto a = random_matrix(rng, 30, 20);
  CVector x(20);
  x[3] = {1.0, -0.5};
  x[11] = {-2.0, 0.25};
  x[17] = {0.5, 1.5};
  const auto y = multiply(a, std::span<const cplx>(x));
  const auto sol = omp(a, std::span<const cplx>(y), 3);
  const auto xd = sol.dense(20);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_LT(std::abs(xd[i] - x[i]), 1e-10);
  EXPECT_LE(sol.residual_norm(), 1e-10 * norm2(std::span<const cplx>(y)));
}

TEST(Omp, StopsEarlyOnZeroResidual) {
  const CMatrix a = CMatrix::identity(4);
  const CVector y = {0.0, 2.0, 0.0, 0.0};
  const auto sol = omp(a, std::span<const cplx>(y), 4);
  EXPECT_EQ(sol.support.size(), 1u);
  EXPECT_EQ(sol.residual_norm(), 0.0);
}

// Properties on random complex problems: distinct support, |support| <= k,
// non-increasing residual, residual orthogonal to support, values equal the
// least-squares fit on the returned support.
TEST(Omp, RandomProblemProperties) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> dim(2, 24);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    const auto a = random_matrix(rng, m, n);
    const auto y = random_vector(rng, m);
    const auto sol = omp(a, std::span<const cplx>(y), k);

    ASSERT_LE(sol.support.size(), k);
    auto sorted = sol.support;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
    ASSERT_EQ(sol.residual_norm_history.size(), sol.support.size() + 1);
    for (std::size_t i = 1; i < sol.residual_norm_history.size(); ++i)
      EXPECT_LE(sol.residual_norm_history[i], sol.residual_norm_history[i - 1] * (1 + 1e-12));

    const auto x = sol.dense(n);
    const auto ax = multiply(a, std::span<const cplx>(x));
    CVector r(m);
    for (std::size_t i = 0; i < m; ++i) r[i] = y[i] - ax[i];
    EXPECT_NEAR(norm2(std::span<const cplx>(r)), sol.residual_norm(), 1e-10);
    for (std::size_t s : sol.support) {
      cplx c{};
      for (std::size_t i = 0; i < m; ++i) c += std::conj(a(i, s)) * r[i];
      EXPECT_LT(std::abs(c), 1e-9 * norm2(std::span<const cplx>(y)) * std::sqrt(double(m)));
    }
    if (!sol.rank_deficient) {
      const EVector ls = least_squares_on(a, sol.support, y);
      for (std::size_t i = 0; i < sol.support.size(); ++i)
        EXPECT_LT(std::abs(sol.values[i] - ls(i)), 1e-8 * (1.0 + ls.norm()));
    }
  }
}

TEST(Omp, FullSparsityEqualsLeastSquaresOnTallMatrices) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_matrix(rng, 25, 12);
    const auto y = random_vector(rng, 25);
    const auto sol = omp(a, std::span<const cplx>(y), 12);
    const EVector oracle = to_eigen(a).colPivHouseholderQr().solve(to_eigen(y));
    EXPECT_LE(swipt::testing::rel_diff(sol.dense(12), oracle), 1e-10);
  }
}

TEST(Omp, RealScalarInstantiation) {
  DenseMatrix<double> a(3, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  const std::vector<double> y = {3.0, 4.0, 5.0};
  const auto sol = omp(a, std::span<const double>(y), 2);
  const auto x = sol.dense(2);
  EXPECT_DOUBLE_EQ(x[0], 3.0);
  EXPECT_DOUBLE_EQ(x[1], 2.0);
  EXPECT_DOUBLE_EQ(sol.residual_norm(), 5.0);
}

// Column 0 is within 1e-6 of column 1's direction; with a loose dependence
// tolerance it is treated as dependent and the minimum-norm solution on the
// projected columns is returned.
TEST(Omp, RankDeficientSupportGivesMinimumNormSolution) {
  const double eps = 1e-6;
  CMatrix a(3, 3);
  a(0, 0) = 1.0;
  const double nrm = std::sqrt(1.0 + eps * eps);
  a(0, 1) = 1.0 / nrm;
  a(1, 1) = eps / nrm;
  a(2, 2) = 1.0;
  const CVector y = {2.0, 1.0, 0.5};
  OmpOptions opt;
  opt.dependence_tolerance = 1e-3;
  const auto sol = omp(a, std::span<const cplx>(y), 3, opt);
  ASSERT_EQ(sol.support, (std::vector<std::size_t>{1, 2, 0}));
  EXPECT_TRUE(sol.rank_deficient);
  EXPECT_EQ(sol.residual_norm_history[3], sol.residual_norm_history[2]);

  // Oracle: replace column 0 by its projection on span{a1, a2}.
  EMatrix sub(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    sub(i, 0) = a(i, 1);
    sub(i, 1) = a(i, 2);
  }
  const EVector a0 = to_eigen(a).col(0);
  const EMatrix basis = sub.leftCols(2);
  sub.col(2) = basis * (basis.adjoint() * basis).ldlt().solve(basis.adjoint() * a0);
  const EVector oracle = sub.completeOrthogonalDecomposition().solve(to_eigen(y));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(std::abs(sol.values[i] - oracle(i)), 1e-9);
}

}  // namespace
}  // namespace swipt::linalg
