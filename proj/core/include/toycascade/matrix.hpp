#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace toycascade {

using RealVector = std::vector<double>;

// Dense row-major real matrix. Sizes in this project stay below a few
// hundred, so no blocking or expression templates.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  RealVector apply(std::span<const double> x) const;
  Matrix transposed() const;

  // max_{i,j} |A_ij - A_ji|
  double max_asymmetry() const;
  // max_{i,j} |A_ij|
  double max_abs() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

// Gaussian elimination with partial pivoting. Throws SolveFailed on an
// exactly singular pivot.
RealVector solve_dense(Matrix a, RealVector b);

}  // namespace toycascade
