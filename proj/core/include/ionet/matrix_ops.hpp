#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "ionet/matrix.hpp"

namespace ionet {

inline constexpr double kStochasticTolerance = 1e-9;
inline constexpr double kPowerIterationTolerance = 1e-10;
inline constexpr int kPowerIterationMaxIter = 100000;
/// Relative pivot size below which elimination declares a matrix singular.
inline constexpr double kDegeneracyThreshold = 1e-12;

enum class StochasticTag { ColumnStochastic, ColumnSubstochastic, NotColumnNonexpansive };

std::string_view to_string(StochasticTag tag) noexcept;

struct StochasticClass {
  StochasticTag tag;
  Vector column_sums;
  double tolerance;
};

/// Classifies a square matrix by its column sums. Entries below -tol raise
/// NegativeEntry.
StochasticClass classify_columns(const Matrix& m, double tol = kStochasticTolerance);

struct SpectralResult {
  double eigenvalue = 0.0;
  /// Nonnegative, 1-norm equal to one.
  Vector eigenvector;
  int iterations = 0;
  /// Infinity norm of M v - lambda v.
  double residual = 0.0;
};

struct PowerIterationOutcome {
  SpectralResult result;
  bool converged = false;
};

/// Power iteration for a square nonnegative matrix, starting from the uniform
/// vector and renormalizing in the 1-norm every step. The eigenvalue estimate
/// is ||M v||_1 / ||v||_1. Never throws on slow convergence; the caller
/// inspects `converged`.
PowerIterationOutcome power_iterate(const Matrix& m, double tol = kPowerIterationTolerance,
                                    int max_iter = kPowerIterationMaxIter);

/// Same as power_iterate but raises NoConvergence when the residual is still
/// above tol after max_iter steps.
SpectralResult power_iteration(const Matrix& m, double tol = kPowerIterationTolerance,
                               int max_iter = kPowerIterationMaxIter);

/// Spectral radius of a nonnegative matrix, via power iteration on (M + I)/2.
/// The shift removes the peripheral eigenvalues of periodic and nilpotent
/// blocks that stall plain power iteration. Returns the last estimate even
/// when the residual has not reached tol.
double estimate_spectral_radius(const Matrix& m, double tol = kPowerIterationTolerance,
                                int max_iter = kPowerIterationMaxIter);

/// Gaussian elimination with partial pivoting. Raises SingularMatrix when a
/// pivot falls below kDegeneracyThreshold times the largest entry of N.
Vector solve_linear(const Matrix& n, std::span<const double> b);

/// Determinants of the leading k x k blocks, k = 1..N, each by a fresh
/// elimination with partial pivoting.
Vector leading_principal_minors(const Matrix& n);

/// Wielandt bound (N-1)^2 + 1 on the primitivity exponent of an N x N matrix.
int wielandt_bound(std::size_t n) noexcept;

/// True iff some power M^k, 1 <= k <= max_exp, is entrywise positive. Works on
/// the zero/nonzero pattern with boolean products, so tiny entries never
/// underflow to zero. Defaults to the Wielandt bound.
bool is_positive_power(const Matrix& m, std::optional<int> max_exp = std::nullopt);

}  // namespace ionet
