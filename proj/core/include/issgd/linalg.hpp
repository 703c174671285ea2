#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "issgd/numeric_settings.hpp"

namespace issgd {

/// Dense real matrix, row-major. Vectors are n x 1 matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  static Matrix scalar(double value) { return Matrix(1, 1, value); }
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transposed() const;
  std::vector<std::vector<double>> to_rows() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(Matrix a, double s);

/// Throws InputError naming `what` if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);
bool all_finite(const Matrix& m) noexcept;

double trace(const Matrix& m);
double frobenius_norm(const Matrix& m);
/// Largest singular value.
double spectral_norm(const Matrix& m, const NumericSettings& settings = default_settings());

/// Tr(a^T b), the Frobenius inner product.
double frobenius_inner(const Matrix& a, const Matrix& b);
/// Tr(k1 y k2^T): the metric inner product on gains weighted by y.
double weighted_inner(const Matrix& k1, const Matrix& k2, const Matrix& y);

Matrix symmetrized(const Matrix& m);
bool is_symmetric(const Matrix& m, double rel_tol);

/// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);
/// Column-stacking vectorization and its inverse.
Matrix vec(const Matrix& m);
Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols);

struct SpectrumSummary {
  std::vector<double> real_parts;
  double max_real_part = 0.0;
};

/// Real parts of all eigenvalues via Householder-Hessenberg reduction and
/// Francis double-shift QR. Multiplicities are preserved.
SpectrumSummary eig_real_parts(const Matrix& m, const NumericSettings& settings = default_settings());

/// True iff every eigenvalue real part is <= -settings.hurwitz_margin.
bool is_hurwitz(const Matrix& m, const NumericSettings& settings = default_settings());

/// Eigenvalues of a symmetric matrix in ascending order (cyclic Jacobi).
std::vector<double> symmetric_eigenvalues(const Matrix& m,
                                          const NumericSettings& settings = default_settings());
double lambda_min(const Matrix& symmetric, const NumericSettings& settings = default_settings());
double lambda_max(const Matrix& symmetric, const NumericSettings& settings = default_settings());

/// Solves a x = b by LU with partial pivoting. Throws ConditioningError when
/// a is singular to tolerance.
Matrix solve_linear(const Matrix& a, const Matrix& b,
                    const NumericSettings& settings = default_settings());
Matrix inverse(const Matrix& a, const NumericSettings& settings = default_settings());

}  // namespace issgd
