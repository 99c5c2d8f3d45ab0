#include "ionet/matrix_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "ionet/error.hpp"

namespace ionet {
namespace {

void require_square(const Matrix& m, const char* what) {
  if (!m.square()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " requires a square matrix");
  }
}

void require_nonnegative(const Matrix& m, double tol) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) < -tol) {
        throw Error(ErrorCode::NegativeEntry, "entry (" + std::to_string(r + 1) + "," +
                                                  std::to_string(c + 1) + ") is negative");
      }
    }
  }
}

// Determinant by elimination with partial pivoting on a copy.
double determinant(Matrix a) {
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
    }
    const double p = a(piv, k);
    if (p == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      det = -det;
    }
    det *= p;
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a(r, k) / p;
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
    }
  }
  return det;
}

using BoolMatrix = std::vector<std::uint8_t>;

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b, std::size_t n) {
  BoolMatrix out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] |= b[k * n + j];
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(StochasticTag tag) noexcept {
  switch (tag) {
    case StochasticTag::ColumnStochastic: return "ColumnStochastic";
    case StochasticTag::ColumnSubstochastic: return "ColumnSubstochastic";
    case StochasticTag::NotColumnNonexpansive: return "NotColumnNonexpansive";
  }
  return "Unknown";
}

StochasticClass classify_columns(const Matrix& m, double tol) {
  require_square(m, "classify_columns");
  require_nonnegative(m, tol);
  StochasticClass out{StochasticTag::ColumnStochastic, column_sums(m), tol};
  bool any_below = false;
  for (double s : out.column_sums) {
    if (s > 1.0 + tol) {
      out.tag = StochasticTag::NotColumnNonexpansive;
      return out;
    }
    if (s < 1.0 - tol) any_below = true;
  }
  if (any_below) out.tag = StochasticTag::ColumnSubstochastic;
  return out;
}

PowerIterationOutcome power_iterate(const Matrix& m, double tol, int max_iter) {
  require_square(m, "power_iteration");
  require_nonnegative(m, 0.0);
  if (tol <= 0.0 || max_iter < 1) {
    throw Error(ErrorCode::InvalidArgument, "power iteration needs tol > 0 and max_iter >= 1");
  }
  const std::size_t n = m.rows();
  PowerIterationOutcome out;
  SpectralResult& res = out.result;
  Vector v(n, 1.0 / static_cast<double>(n));
  for (int it = 1; it <= max_iter; ++it) {
    Vector w = m * v;
    // v sums to one and both are nonnegative, so sum(w) is the 1-norm ratio.
    const double lambda = sum(w);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual = std::max(residual, std::abs(w[i] - lambda * v[i]));
    }
    res.eigenvalue = lambda;
    res.iterations = it;
    res.residual = residual;
    res.eigenvector = v;
    if (residual <= tol) {
      out.converged = true;
      return out;
    }
    for (double& wi : w) wi /= lambda;
    v = std::move(w);
  }
  return out;
}

SpectralResult power_iteration(const Matrix& m, double tol, int max_iter) {
  auto out = power_iterate(m, tol, max_iter);
  if (!out.converged) {
    throw Error(ErrorCode::NoConvergence,
                "power iteration residual " + std::to_string(out.result.residual) +
                    " above tolerance after " + std::to_string(max_iter) + " iterations");
  }
  return std::move(out.result);
}

double estimate_spectral_radius(const Matrix& m, double tol, int max_iter) {
  require_square(m, "estimate_spectral_radius");
  const Matrix shifted = 0.5 * (m + Matrix::identity(m.rows()));
  const auto out = power_iterate(shifted, tol, max_iter);
  return 2.0 * out.result.eigenvalue - 1.0;
}

Vector solve_linear(const Matrix& n, std::span<const double> b) {
  require_square(n, "solve_linear");
  const std::size_t dim = n.rows();
  if (b.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "right-hand side has wrong length");
  }
  const double threshold = kDegeneracyThreshold * max_abs(n);
  Matrix a = n;
  Vector x(b.begin(), b.end());
  for (std::size_t k = 0; k < dim; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < dim; ++r) {
      if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
    }
    if (!(std::abs(a(piv, k)) > threshold)) {
      throw Error(ErrorCode::SingularMatrix,
                  "pivot " + std::to_string(k + 1) + " below degeneracy threshold");
    }
    if (piv != k) {
      for (std::size_t c = 0; c < dim; ++c) std::swap(a(k, c), a(piv, c));
      std::swap(x[k], x[piv]);
    }
    const double p = a(k, k);
    for (std::size_t r = k + 1; r < dim; ++r) {
      const double f = a(r, k) / p;
      if (f == 0.0) continue;
      for (std::size_t c = k; c < dim; ++c) a(r, c) -= f * a(k, c);
      x[r] -= f * x[k];
    }
  }
  for (std::size_t k = dim; k-- > 0;) {
    double acc = x[k];
    for (std::size_t c = k + 1; c < dim; ++c) acc -= a(k, c) * x[c];
    x[k] = acc / a(k, k);
  }
  return x;
}

Vector leading_principal_minors(const Matrix& n) {
  require_square(n, "leading_principal_minors");
  Vector minors;
  minors.reserve(n.rows());
  for (std::size_t k = 1; k <= n.rows(); ++k) {
    minors.push_back(determinant(n.leading_block(k)));
  }
  return minors;
}

int wielandt_bound(std::size_t n) noexcept {
  const auto m = static_cast<int>(n) - 1;
  return m * m + 1;
}

bool is_positive_power(const Matrix& m, std::optional<int> max_exp) {
  require_square(m, "is_positive_power");
  const std::size_t n = m.rows();
  int exponent = max_exp.value_or(wielandt_bound(n));
  if (exponent < 1) return false;

  BoolMatrix base(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i * n + j] = m(i, j) > 0.0 ? 1 : 0;

  // A positive power forces every column of M to be nonzero, after which all
  // higher powers stay positive. Checking M^exponent alone is therefore
  // enough, and repeated squaring reaches it in O(log exponent) products.
  BoolMatrix result;
  BoolMatrix square = base;
  bool have_result = false;
  while (exponent > 0) {
    if (exponent & 1) {
      result = have_result ? bool_product(result, square, n) : square;
      have_result = true;
    }
    exponent >>= 1;
    if (exponent > 0) square = bool_product(square, square, n);
  }
  return std::all_of(result.begin(), result.end(), [](std::uint8_t b) { return b != 0; });
}

}  // namespace ionet
