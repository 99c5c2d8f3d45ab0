#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ionet {

using Vector = std::vector<double>;

/// Dense row-major matrix of finite doubles. Dimensions are at least 1x1.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix ones(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }
  // Writes are not re-checked for finiteness; callers producing values from
  // finite arithmetic keep the invariant.
  double& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  /// Copy of the leading k x k block.
  Matrix leading_block(std::size_t k) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Vector operator*(const Matrix& a, std::span<const double> x);

Matrix kron(const Matrix& a, const Matrix& b);

double norm_inf(std::span<const double> x);
double norm_1(std::span<const double> x);
double sum(std::span<const double> x);
/// Largest absolute entry.
double max_abs(const Matrix& m);
Vector column_sums(const Matrix& m);
Vector kron(std::span<const double> a, std::span<const double> b);
Vector subtract(std::span<const double> a, std::span<const double> b);

}  // namespace ionet
