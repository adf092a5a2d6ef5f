#include "vpc/matop.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace vpc {

namespace {
const DiffPoly kZero;
}

OpPoly::OpPoly(DiffPoly c) {
  if (!c.is_zero()) coeffs_.emplace(0, std::move(c));
}

OpPoly OpPoly::monomial(const DiffPoly& coeff, int power) {
  OpPoly l;
  l.add_term(power, coeff);
  return l;
}

const DiffPoly& OpPoly::coefficient(int power) const {
  auto it = coeffs_.find(power);
  return it == coeffs_.end() ? kZero : it->second;
}

bool OpPoly::is_constant_coefficient() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& t) { return t.second.is_constant(); });
}

void OpPoly::add_term(int power, const DiffPoly& coeff) {
  if (power < 0) throw std::invalid_argument("negative power of D");
  if (coeff.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(power, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

OpPoly& OpPoly::operator+=(const OpPoly& other) {
  for (const auto& [m, c] : other.coeffs_) add_term(m, c);
  return *this;
}

OpPoly& OpPoly::operator-=(const OpPoly& other) {
  for (const auto& [m, c] : other.coeffs_) add_term(m, -c);
  return *this;
}

OpPoly& OpPoly::operator*=(const Rational& s) {
  if (s == 0) {
    coeffs_.clear();
  } else {
    for (auto& t : coeffs_) t.second *= s;
  }
  return *this;
}

// a D^m o b D^n = sum_k C(m,k) a b^(k) D^(m-k+n)
OpPoly compose(const OpPoly& a, const OpPoly& b) {
  OpPoly out;
  for (const auto& [n, bc] : b.coeffs()) {
    DiffPoly deriv = bc;
    std::vector<DiffPoly> derivs;
    const int top = a.order();
    for (int k = 0; k <= top && !deriv.is_zero(); ++k) {
      derivs.push_back(deriv);
      deriv = total_derivative(deriv);
    }
    for (const auto& [m, ac] : a.coeffs()) {
      for (int k = 0; k <= m && k < static_cast<int>(derivs.size()); ++k)
        out.add_term(m - k + n, binomial(m, k) * (ac * derivs[static_cast<std::size_t>(k)]));
    }
  }
  return out;
}

DiffPoly apply(const OpPoly& l, const DiffPoly& f) {
  DiffPoly out;
  DiffPoly deriv = f;
  int at = 0;
  for (const auto& [m, c] : l.coeffs()) {
    deriv = total_derivative(deriv, m - at);
    at = m;
    out += c * deriv;
  }
  return out;
}

// (a D^n)* = (-D)^n o a = (-1)^n sum_k C(n,k) a^(k) D^(n-k)
OpPoly adjoint(const OpPoly& l) {
  OpPoly out;
  for (const auto& [n, c] : l.coeffs()) {
    const Rational sign = (n % 2 == 0) ? 1 : -1;
    DiffPoly deriv = c;
    for (int k = 0; k <= n && !deriv.is_zero(); ++k) {
      out.add_term(n - k, Rational(sign * binomial(n, k)) * deriv);
      deriv = total_derivative(deriv);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

MatDiffOp MatDiffOp::identity(std::size_t n) {
  MatDiffOp m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = OpPoly(DiffPoly(1));
  return m;
}

MatDiffOp MatDiffOp::constant(const linalg::Matrix& m, int power) {
  MatDiffOp out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = OpPoly::monomial(DiffPoly(m(i, j)), power);
  return out;
}

MatDiffOp MatDiffOp::scalar(const OpPoly& l) {
  MatDiffOp out(1, 1);
  out(0, 0) = l;
  return out;
}

bool MatDiffOp::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const OpPoly& l) { return l.is_zero(); });
}

int MatDiffOp::order() const {
  int n = -1;
  for (const auto& l : entries_) n = std::max(n, l.order());
  return n;
}

bool MatDiffOp::is_quasiconstant() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const OpPoly& l) { return l.is_constant_coefficient(); });
}

linalg::Matrix MatDiffOp::coefficient_matrix(int power) const {
  if (!is_quasiconstant()) throw std::invalid_argument("operator does not have constant coefficients");
  linalg::Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).coefficient(power).constant_term();
  return m;
}

MatDiffOp& MatDiffOp::operator+=(const MatDiffOp& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("operator size mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

MatDiffOp& MatDiffOp::operator-=(const MatDiffOp& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("operator size mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

MatDiffOp& MatDiffOp::operator*=(const Rational& s) {
  for (auto& l : entries_) l *= s;
  return *this;
}

MatDiffOp compose(const MatDiffOp& a, const MatDiffOp& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("cannot compose " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " with " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  MatDiffOp out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k)
        if (!a(i, k).is_zero() && !b(k, j).is_zero()) out(i, j) += compose(a(i, k), b(k, j));
  return out;
}

std::vector<DiffPoly> apply(const MatDiffOp& l, std::span<const DiffPoly> f) {
  if (f.size() != l.cols())
    throw std::invalid_argument("operator has " + std::to_string(l.cols()) + " columns but vector has " +
                                std::to_string(f.size()) + " entries");
  std::vector<DiffPoly> out(l.rows());
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t j = 0; j < l.cols(); ++j) out[i] += apply(l(i, j), f[j]);
  return out;
}

MatDiffOp adjoint(const MatDiffOp& l) {
  MatDiffOp out(l.cols(), l.rows());
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t j = 0; j < l.cols(); ++j) out(j, i) = adjoint(l(i, j));
  return out;
}

bool is_skewadjoint(const MatDiffOp& l) {
  if (!l.is_square()) throw std::invalid_argument("skewadjointness requires a square operator");
  return adjoint(l) == -l;
}

LeadingCoefficient leading_coefficient(const MatDiffOp& l) {
  if (!l.is_square()) throw std::invalid_argument("leading coefficient requires a square operator");
  if (!l.is_quasiconstant()) throw std::invalid_argument("operator does not have constant coefficients");
  LeadingCoefficient lc;
  lc.matrix = l.coefficient_matrix(std::max(l.order(), 0));
  lc.invertible = l.order() >= 0 && linalg::rank(lc.matrix) == l.rows();
  return lc;
}

}  // namespace vpc
