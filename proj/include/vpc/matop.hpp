#pragma once

// Scalar and matrix differential operators with coefficients on the left of
// powers of D.

#include <map>
#include <span>
#include <vector>

#include "vpc/diffpoly.hpp"
#include "vpc/linalg.hpp"

namespace vpc {

// L(D) = sum_m l_m D^m.
class OpPoly {
 public:
  using CoeffMap = std::map<int, DiffPoly>;

  OpPoly() = default;
  OpPoly(DiffPoly c);  // NOLINT: multiplication operator, D^0 coefficient
  static OpPoly monomial(const DiffPoly& coeff, int power);
  static OpPoly d(int power = 1) { return monomial(DiffPoly(1), power); }

  const CoeffMap& coeffs() const { return coeffs_; }
  const DiffPoly& coefficient(int power) const;
  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero operator.
  int order() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
  bool is_constant_coefficient() const;

  void add_term(int power, const DiffPoly& coeff);

  OpPoly& operator+=(const OpPoly& other);
  OpPoly& operator-=(const OpPoly& other);
  OpPoly& operator*=(const Rational& s);

  friend OpPoly operator+(OpPoly a, const OpPoly& b) { return a += b; }
  friend OpPoly operator-(OpPoly a, const OpPoly& b) { return a -= b; }
  friend OpPoly operator-(OpPoly a) { return a *= Rational(-1); }
  friend OpPoly operator*(const Rational& s, OpPoly a) { return a *= s; }
  friend bool operator==(const OpPoly&, const OpPoly&) = default;

 private:
  CoeffMap coeffs_;
};

OpPoly compose(const OpPoly& a, const OpPoly& b);
DiffPoly apply(const OpPoly& l, const DiffPoly& f);
OpPoly adjoint(const OpPoly& l);

class MatDiffOp {
 public:
  MatDiffOp() = default;
  MatDiffOp(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static MatDiffOp identity(std::size_t n);
  // M * D^power for a rational matrix M.
  static MatDiffOp constant(const linalg::Matrix& m, int power = 0);
  static MatDiffOp scalar(const OpPoly& l);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  OpPoly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const OpPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  bool is_zero() const;
  // Max entry order, -1 for the zero operator.
  int order() const;
  bool is_quasiconstant() const;
  // Rational matrix of D^power coefficients; requires quasiconstant.
  linalg::Matrix coefficient_matrix(int power) const;

  MatDiffOp& operator+=(const MatDiffOp& other);
  MatDiffOp& operator-=(const MatDiffOp& other);
  MatDiffOp& operator*=(const Rational& s);

  friend MatDiffOp operator+(MatDiffOp a, const MatDiffOp& b) { return a += b; }
  friend MatDiffOp operator-(MatDiffOp a, const MatDiffOp& b) { return a -= b; }
  friend MatDiffOp operator-(MatDiffOp a) { return a *= Rational(-1); }
  friend MatDiffOp operator*(const Rational& s, MatDiffOp a) { return a *= s; }
  friend bool operator==(const MatDiffOp&, const MatDiffOp&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<OpPoly> entries_;
};

// Throws std::invalid_argument on dimension mismatch.
MatDiffOp compose(const MatDiffOp& a, const MatDiffOp& b);
std::vector<DiffPoly> apply(const MatDiffOp& l, std::span<const DiffPoly> f);
MatDiffOp adjoint(const MatDiffOp& l);

bool is_skewadjoint(const MatDiffOp& l);

struct LeadingCoefficient {
  linalg::Matrix matrix;
  bool invertible = false;
};

// Coefficient matrix of D^N, N = order(l). Throws unless l is square and
// quasiconstant (a nonconstant leading term has no rational matrix).
LeadingCoefficient leading_coefficient(const MatDiffOp& l);

}  // namespace vpc
