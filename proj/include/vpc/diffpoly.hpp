#pragma once

// The ring of differential polynomials R_l = Q[u_i^(n)] with the total
// derivative d(u_i^(n)) = u_i^(n+1), its partial and variational derivatives,
// evolutionary vector fields, and the quotient V / dV of local functionals.

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vpc/rational.hpp"

namespace vpc {

// u_index^(order); index is 1-based.
struct DiffVar {
  int index = 1;
  int order = 0;

  friend bool operator==(DiffVar, DiffVar) = default;
  friend std::strong_ordering operator<=>(DiffVar a, DiffVar b) {
    if (auto c = a.order <=> b.order; c != 0) return c;
    return a.index <=> b.index;
  }
};

// Throws std::invalid_argument unless index >= 1 and order >= 0.
DiffVar make_var(int index, int order = 0);

class Monomial {
 public:
  using Factor = std::pair<DiffVar, int>;

  Monomial() = default;
  explicit Monomial(DiffVar v, int exponent = 1);
  // Merges repeated variables and drops zero exponents.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree() const;
  // Total number of derivatives, sum of order * exponent.
  int weight() const;
  int max_order() const;
  int max_index() const;
  int exponent(DiffVar v) const;

  // This monomial with the exponent of v lowered by one (v must divide it).
  Monomial divide(DiffVar v) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;  // sorted by (order, index), exponents > 0
};

class DiffPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  DiffPoly() = default;
  DiffPoly(const Rational& c);  // NOLINT: constants embed implicitly
  DiffPoly(long c) : DiffPoly(Rational(c)) {}  // NOLINT
  DiffPoly(int c) : DiffPoly(Rational(c)) {}   // NOLINT

  static DiffPoly var(int index, int order = 0);
  static DiffPoly term(const Monomial& m, const Rational& c = 1);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  std::size_t size() const { return terms_.size(); }

  // Max total degree; 0 for constants and for zero.
  int degree() const;
  // Max derivative order of a variable that occurs; 0 when no variable occurs.
  int order() const;
  // Largest variable index that occurs; 0 when no variable occurs.
  int max_index() const;

  void add_term(const Monomial& m, const Rational& c);

  DiffPoly& operator+=(const DiffPoly& other);
  DiffPoly& operator-=(const DiffPoly& other);
  DiffPoly& operator*=(const Rational& s);
  DiffPoly& operator*=(const DiffPoly& other);

  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator-(DiffPoly a) { return a *= Rational(-1); }
  friend bool operator==(const DiffPoly&, const DiffPoly&) = default;

  DiffPoly pow(int e) const;

 private:
  TermMap terms_;
};

DiffPoly total_derivative(const DiffPoly& f);
DiffPoly total_derivative(const DiffPoly& f, int times);
DiffPoly partial_derivative(const DiffPoly& f, DiffVar v);

// (delta f / delta u_i)_{i=1..ell}. Throws if ell < 1 or f mentions u_i, i > ell.
std::vector<DiffPoly> variational_derivative(const DiffPoly& f, int ell);

// X_P(f) = sum_{i,n} (d^n P_i) df/du_i^(n).
DiffPoly evolutionary_apply(std::span<const DiffPoly> characteristic, const DiffPoly& f);

// g with dg = f and zero constant term, when f lies in dV.
std::optional<DiffPoly> antiderivative(const DiffPoly& f);

// True iff f lies in dV: delta f / delta u = 0 and f has no constant term.
bool is_total_derivative(const DiffPoly& f);

// An element of V / dV, held through one representative.
class LocalFunctional {
 public:
  LocalFunctional() = default;
  explicit LocalFunctional(DiffPoly representative) : rep_(std::move(representative)) {}

  const DiffPoly& representative() const { return rep_; }
  bool is_zero() const { return is_total_derivative(rep_); }

  friend LocalFunctional operator+(const LocalFunctional& a, const LocalFunctional& b) {
    return LocalFunctional(a.rep_ + b.rep_);
  }
  friend LocalFunctional operator-(const LocalFunctional& a, const LocalFunctional& b) {
    return LocalFunctional(a.rep_ - b.rep_);
  }
  friend LocalFunctional operator*(const Rational& s, const LocalFunctional& a) {
    return LocalFunctional(a.rep_ * s);
  }
  // Coset equality.
  friend bool operator==(const LocalFunctional& a, const LocalFunctional& b) {
    return is_total_derivative(a.rep_ - b.rep_);
  }

 private:
  DiffPoly rep_;
};

bool functional_equal(const LocalFunctional& a, const LocalFunctional& b);

// Monomials of the given degree and weight in u_1..u_ell with every variable
// of order <= max_order, in increasing monomial order.
std::vector<Monomial> enumerate_monomials(int ell, int degree, int weight, int max_order);

}  // namespace vpc
