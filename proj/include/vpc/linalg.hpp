#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vpc/rational.hpp"

namespace vpc::linalg {

using Vector = std::vector<Rational>;

// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::initializer_list<Rational> values);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const Rational& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator-(Matrix a) { return a *= Rational(-1); }
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Vector operator*(const Matrix& a, const Vector& v);

struct Echelon {
  Matrix reduced;                      // reduced row echelon form
  std::vector<std::size_t> pivot_cols; // one per nonzero row, increasing
};

// Gauss-Jordan elimination. The pivot in each column is the first row (by
// index) at or below the current row holding a nonzero entry.
Echelon row_reduce(Matrix m);

std::size_t rank(const Matrix& m);

// Basis of {x : m x = 0}, one vector per free column, in increasing column
// order; each basis vector has a 1 at its free column.
std::vector<Vector> nullspace(const Matrix& m);

// Some solution of a x = b (free variables set to zero), or nullopt.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

std::optional<Matrix> inverse(const Matrix& m);

// Matrix whose columns are the given vectors (all of size rows).
Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

bool is_zero(const Vector& v);

}  // namespace vpc::linalg
