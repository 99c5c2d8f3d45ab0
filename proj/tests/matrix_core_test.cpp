#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "ionet/error.hpp"
#include "ionet/matrix_ops.hpp"
#include "test_support.hpp"

namespace ionet {
namespace {

using testing::Rng;

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}

double eigen_spectral_radius(const Matrix& m) {
  return to_eigen(m).eigenvalues().cwiseAbs().maxCoeff();
}

TEST(ClassifyColumns, TableOneIsColumnStochastic) {
  const auto c = classify_columns(testing::three_sector_matrix());
  EXPECT_EQ(c.tag, StochasticTag::ColumnStochastic);
  for (double s : c.column_sums) EXPECT_NEAR(s, 1.0, 1e-15);
}

TEST(ClassifyColumns, IdentityIsColumnStochastic) {
  EXPECT_EQ(classify_columns(Matrix::identity(3)).tag, StochasticTag::ColumnStochastic);
}

TEST(ClassifyColumns, OpenScenarioMatrixIsSubstochastic) {
  const auto c = classify_columns(testing::open_self_matrix());
  EXPECT_EQ(c.tag, StochasticTag::ColumnSubstochastic);
  EXPECT_NEAR(c.column_sums[0], 0.5, 1e-15);
  EXPECT_NEAR(c.column_sums[1], 0.7, 1e-15);
  EXPECT_NEAR(c.column_sums[2], 0.9, 1e-15);
}

TEST(ClassifyColumns, ExpansiveAndNegative) {
  EXPECT_EQ(classify_columns(Matrix{{0.7, 0.1}, {0.4, 0.2}}).tag,
            StochasticTag::NotColumnNonexpansive);
  try {
    classify_columns(Matrix{{0.5, -0.1}, {0.5, 1.1}});
    FAIL() << "expected NegativeEntry";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeEntry);
  }
}

TEST(ClassifyColumns, ScalingOneColumnDetectsSubstochastic) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = testing::uniform_index(rng, 1, 6);
    Matrix a = testing::random_primitive_stochastic(rng, d);
    ASSERT_EQ(classify_columns(a).tag, StochasticTag::ColumnStochastic);
    const std::size_t q = testing::uniform_index(rng, 0, d - 1);
    for (std::size_t p = 0; p < d; ++p) a(p, q) *= 0.9;
    EXPECT_EQ(classify_columns(a).tag, StochasticTag::ColumnSubstochastic);
  }
}

TEST(PowerIteration, Scalar) {
  const auto r = power_iteration(Matrix{{1.0}});
  EXPECT_DOUBLE_EQ(r.eigenvalue, 1.0);
  ASSERT_EQ(r.eigenvector.size(), 1u);
  EXPECT_DOUBLE_EQ(r.eigenvector[0], 1.0);
}

TEST(PowerIteration, DoublyStochastic) {
  const auto r = power_iteration(Matrix{{0.5, 0.5}, {0.5, 0.5}});
  EXPECT_NEAR(r.eigenvalue, 1.0, 1e-12);
  EXPECT_NEAR(r.eigenvector[0], 0.5, 1e-12);
  EXPECT_NEAR(r.eigenvector[1], 0.5, 1e-12);
}

// Perron vector of the 15x15 closed-scenario lifted matrix, from a dense
// eigendecomposition (LAPACK geev) computed once, normalized to unit sum.
const double kFrozenPerron[15] = {
    0.15865990228865876, 0.14700419398023032, 0.19433590373111106, 0.08173198045773167,
    0.05498362421146751, 0.11328439533080073, 0.08269279218309265, 0.0496682853092134,
    0.11763892250769385, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};

TEST(PowerIteration, ClosedScenarioLiftedMatrix) {
  const auto sys = build_lifted(testing::closed_five_agent());
  const auto r = power_iteration(sys.a_bar);
  EXPECT_NEAR(r.eigenvalue, 1.0, 1e-10);
  EXPECT_LE(r.residual, kPowerIterationTolerance);
  EXPECT_NEAR(sum(r.eigenvector), 1.0, 1e-12);
  for (std::size_t k = 0; k < 15; ++k) {
    EXPECT_NEAR(r.eigenvector[k], kFrozenPerron[k], 1e-9) << "entry " << k;
    EXPECT_GE(r.eigenvector[k], 0.0);
  }
  for (std::size_t k = 9; k < 15; ++k) EXPECT_LE(r.eigenvector[k], 1e-12);

  // Same check against Eigen's general eigensolver at run time.
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(sys.a_bar));
  Eigen::Index best = 0;
  es.eigenvalues().real().maxCoeff(&best);
  Eigen::VectorXd g = es.eigenvectors().col(best).real();
  g /= g.sum();
  for (std::size_t k = 0; k < 15; ++k) EXPECT_NEAR(r.eigenvector[k], g(k), 1e-9);
}

TEST(PowerIteration, PeriodicMatrixDoesNotConverge) {
  try {
    // Uniform start is already the fixed point of a permutation, so use an
    // asymmetric periodic pattern instead.
    power_iteration(Matrix{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.5, 0.0, 0.0}}, 1e-10, 500);
    FAIL() << "expected NoConvergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
  }
}

TEST(PowerIteration, ZeroMatrixHasZeroEigenvalue) {
  const auto r = power_iteration(Matrix(3, 3));
  EXPECT_EQ(r.eigenvalue, 0.0);
  EXPECT_EQ(r.residual, 0.0);
}

TEST(PowerIteration, PrimitiveStochasticHasUnitEigenvalue) {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = testing::uniform_index(rng, 1, 8);
    const auto r = power_iteration(testing::random_primitive_stochastic(rng, d));
    EXPECT_NEAR(r.eigenvalue, 1.0, 1e-10);
    for (double v : r.eigenvector) EXPECT_GE(v, 0.0);
  }
}

TEST(SpectralRadius, ShiftedEstimateMatchesEigen) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = testing::uniform_index(rng, 1, 6);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (testing::uniform(rng, 0, 1) < 0.6) m(i, j) = testing::uniform(rng, 0, 1);
    EXPECT_NEAR(estimate_spectral_radius(m), eigen_spectral_radius(m), 1e-6);
  }
  // Periodic: plain power iteration stalls, the shifted one does not.
  EXPECT_NEAR(estimate_spectral_radius(Matrix{{0, 1}, {1, 0}}), 1.0, 1e-9);
}

TEST(SolveLinear, Identity) {
  const Vector b{1, 2, 3};
  EXPECT_EQ(solve_linear(Matrix::identity(3), b), b);
}

TEST(SolveLinear, TwoByTwoClosedForm) {
  // Inverse of [[0.6,-0.2],[-0.3,0.5]] is [[0.5,0.2],[0.3,0.6]] / 0.24.
  const auto x = solve_linear(Matrix{{0.6, -0.2}, {-0.3, 0.5}}, Vector{1.0, 0.0});
  EXPECT_NEAR(x[0], 0.5 / 0.24, 1e-14);
  EXPECT_NEAR(x[1], 0.3 / 0.24, 1e-14);
}

TEST(SolveLinear, OpenScenarioMatchesIterationLimit) {
  const auto sys = build_lifted(testing::open_five_agent());
  const auto x = solve_linear(Matrix::identity(15) - sys.a_bar, sys.demand);
  // Oracle: plain fixed-point loop x <- A_bar x + y until the step is tiny.
  Vector it(15, 0.0);
  for (int k = 0; k < 100000; ++k) {
    Vector next(15, 0.0);
    double delta = 0.0;
    for (std::size_t r = 0; r < 15; ++r) {
      for (std::size_t c = 0; c < 15; ++c) next[r] += sys.a_bar(r, c) * it[c];
      next[r] += sys.demand[r];
      delta = std::max(delta, std::abs(next[r] - it[r]));
    }
    it = next;
    if (delta <= 1e-12) break;
  }
  for (std::size_t k = 0; k < 15; ++k) EXPECT_NEAR(x[k], it[k], 1e-9);
}

TEST(SolveLinear, SingularAndShape) {
  try {
    solve_linear(Matrix{{1, 2}, {2, 4}}, Vector{1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
  try {
    solve_linear(Matrix::identity(2), Vector{1, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(SolveLinear, ResidualOnWellConditionedSystems) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = testing::uniform_index(rng, 1, 8);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = testing::uniform(rng, -1, 1);
      m(i, i) += static_cast<double>(n) + 1.0;
    }
    Vector b(n);
    for (double& v : b) v = testing::uniform(rng, -1, 1);
    const auto x = solve_linear(m, b);
    EXPECT_LE(norm_inf(subtract(m * x, b)), 1e-9);
  }
}

TEST(LeadingMinors, Examples) {
  EXPECT_EQ(leading_principal_minors(Matrix::identity(3)), (Vector{1, 1, 1}));
  const auto m = leading_principal_minors(Matrix{{0.6, -0.2}, {-0.3, 0.5}});
  EXPECT_NEAR(m[0], 0.6, 1e-15);
  EXPECT_NEAR(m[1], 0.24, 1e-15);
  EXPECT_EQ(leading_principal_minors(Matrix::identity(2) - Matrix::identity(2)), (Vector{0, 0}));
}

TEST(LeadingMinors, MatchEigenDeterminants) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = testing::uniform_index(rng, 1, 6);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = testing::uniform(rng, -1, 1);
    const auto minors = leading_principal_minors(m);
    const auto e = to_eigen(m);
    for (std::size_t k = 1; k <= n; ++k) {
      EXPECT_NEAR(minors[k - 1], e.topLeftCorner(k, k).determinant(), 1e-12);
    }
  }
}

// Both clauses of the Hawkins-Simon characterization. Productivity is decided
// independently from Eigen's spectral radius: rho(M) < 1 iff productive.
TEST(LeadingMinors, HawkinsSimonMatchesNonnegativeInverse) {
  Rng rng(23);
  int productive = 0, unproductive = 0;
  while (productive < 50 || unproductive < 50) {
    const std::size_t n = testing::uniform_index(rng, 1, 5);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (testing::uniform(rng, 0, 1) < 0.7) m(i, j) = testing::uniform(rng, 0, 1);
    const double rho = eigen_spectral_radius(m);
    if (rho < 1e-3) continue;
    const bool want_productive = productive < 50 && (unproductive >= 50 || testing::uniform(rng, 0, 1) < 0.5);
    const double target = want_productive ? testing::uniform(rng, 0.2, 0.9)
                                          : testing::uniform(rng, 1.1, 3.0);
    m = (target / rho) * m;
    (want_productive ? productive : unproductive)++;

    const Matrix nmat = Matrix::identity(n) - m;
    const auto minors = leading_principal_minors(nmat);
    const bool minors_positive =
        std::all_of(minors.begin(), minors.end(), [](double v) { return v > 0.0; });
    bool inverse_nonnegative = true;
    try {
      for (std::size_t k = 0; k < n; ++k) {
        Vector e(n, 0.0);
        e[k] = 1.0;
        const auto col = solve_linear(nmat, e);
        for (double v : col) inverse_nonnegative = inverse_nonnegative && v >= -1e-9;
      }
    } catch (const Error&) {
      inverse_nonnegative = false;
    }
    EXPECT_EQ(minors_positive, want_productive) << "rho target " << target;
    EXPECT_EQ(minors_positive, inverse_nonnegative) << "rho target " << target;
  }
}

TEST(PositivePower, Examples) {
  EXPECT_FALSE(is_positive_power(Matrix{{0, 1}, {1, 0}}));
  EXPECT_TRUE(is_positive_power(Matrix{{1, 1}, {1, 0}}));
  EXPECT_FALSE(is_positive_power(Matrix{{1, 1}, {1, 0}}, 1));
  EXPECT_TRUE(is_positive_power(testing::three_sector_matrix(), 1));
  EXPECT_EQ(wielandt_bound(3), 5);
}

TEST(PositivePower, TinyEntriesDoNotUnderflow) {
  // Floating powers of this matrix underflow long before they turn positive.
  Matrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i) m(i, (i + 1) % 4) = 1e-200;
  m(0, 0) = 1e-200;
  EXPECT_TRUE(is_positive_power(m));
}

}  // namespace
}  // namespace ionet
