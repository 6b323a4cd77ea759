#pragma once

// Exact rational linear algebra on top of GMP.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace conicmin {

using Integer = mpz_class;
using Scalar = mpq_class;

// Parses "p/q", "p" or a plain decimal such as "-0.25".
Scalar parse_scalar(std::string_view text);
std::string format_scalar(const Scalar& value);

Integer floor_of(const Scalar& value);
Integer ceil_of(const Scalar& value);
// Nearest integer, halves rounded up.
Integer round_of(const Scalar& value);

// Exact conversion of a finite double.
Scalar from_double(double value);
double to_double(const Scalar& value);

// Integers m with (m - center)^2 <= radius_sq, as a closed interval.
std::optional<std::pair<Integer, Integer>> integer_interval(
    const Scalar& center, const Scalar& radius_sq);

// Smallest rational of the form k / 2^bits that is >= sqrt(value).
Scalar sqrt_upper(const Scalar& value, unsigned bits = 48);

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : entries_(dim) {}
  Vector(std::initializer_list<Scalar> entries) : entries_(entries) {}
  explicit Vector(std::vector<Scalar> entries) : entries_(std::move(entries)) {}

  static Vector unit(std::size_t dim, std::size_t index);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  Scalar& operator[](std::size_t i) { return entries_[i]; }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }

  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  const std::vector<Scalar>& entries() const { return entries_; }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(const Scalar& factor);

  Scalar dot(const Vector& other) const;
  Scalar squared_norm() const { return dot(*this); }
  bool is_zero() const;
  bool is_integral() const;
  std::vector<double> to_doubles() const;
  static Vector from_doubles(const std::vector<double>& values);

  std::string to_string() const;

  friend bool operator==(const Vector& a, const Vector& b) {
    return a.entries_ == b.entries_;
  }
  // Lexicographic order.
  friend bool operator<(const Vector& a, const Vector& b);

 private:
  std::vector<Scalar> entries_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator-(Vector a);
Vector operator*(const Scalar& factor, Vector v);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  // Row-major literal.
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& diag);
  static Matrix from_columns(const std::vector<Vector>& columns,
                             std::size_t rows);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const Scalar& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  void set_column(std::size_t j, const Vector& v);
  // Columns [first, first + count).
  Matrix column_block(std::size_t first, std::size_t count) const;

  Matrix transpose() const;
  bool is_integral() const;
  bool is_zero() const;
  std::string to_string() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& v);
Matrix operator*(const Scalar& factor, Matrix m);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

Scalar determinant(const Matrix& a);
std::size_t rank(const Matrix& a);
// Throws Error(kSingular).
Matrix invert(const Matrix& a);

struct LinearSolution {
  std::optional<Vector> particular;  // empty when the system is infeasible
  Matrix kernel;                     // columns form a basis of ker(A)

  bool feasible() const { return particular.has_value(); }
};

LinearSolution solve_linear(const Matrix& a, const Vector& b);

struct HermiteForm {
  Matrix h;  // column-style lower echelon form
  Matrix u;  // unimodular, M * U = H
  std::size_t rank = 0;
};

// Column Hermite normal form of an integer matrix. Pivot columns come first,
// pivots are positive, and entries left of a pivot lie in [0, pivot).
HermiteForm hnf(const Matrix& m);

// Scales every row by the lcm of its denominators (b included).
std::pair<Matrix, Vector> integral_rows(const Matrix& a, const Vector& b);

}  // namespace conicmin
