#pragma once

// Seeded random inputs for the property suites. Everything is exact; the
// seeds are fixed so failures reproduce.

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpc/diffpoly.hpp"
#include "vpc/lambda_poly.hpp"
#include "vpc/linalg.hpp"
#include "vpc/matop.hpp"
#include "vpc/polyvec.hpp"

namespace vpc::testing {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  Rational rational(int bound = 3) {
    int num = 0;
    while (num == 0) num = uniform(-bound, bound);
    return Rational(num) / uniform(1, 3);
  }

  Rational rational_or_zero(int bound = 3) { return uniform(0, 2) == 0 ? Rational(0) : rational(bound); }

  DiffVar var(int ell, int max_order) { return DiffVar{uniform(1, ell), uniform(0, max_order)}; }

  Monomial monomial(int ell, int max_degree, int max_order) {
    std::vector<Monomial::Factor> f;
    const int deg = uniform(0, max_degree);
    for (int i = 0; i < deg; ++i) f.push_back({var(ell, max_order), 1});
    return Monomial::from_factors(std::move(f));
  }

  DiffPoly diffpoly(int ell, int max_terms = 3, int max_degree = 2, int max_order = 2) {
    DiffPoly p;
    const int n = uniform(1, max_terms);
    for (int i = 0; i < n; ++i) p.add_term(monomial(ell, max_degree, max_order), rational());
    return p;
  }

  // A polynomial with no constant term.
  DiffPoly diffpoly_nonconstant(int ell, int max_terms = 3, int max_degree = 2, int max_order = 2) {
    DiffPoly p = diffpoly(ell, max_terms, max_degree, max_order);
    p.add_term(Monomial(), -p.constant_term());
    if (p.is_zero()) p = DiffPoly::var(1);
    return p;
  }

  std::vector<DiffPoly> diffpoly_vector(int ell, int max_terms = 2, int max_degree = 2, int max_order = 2) {
    std::vector<DiffPoly> v;
    for (int i = 0; i < ell; ++i) v.push_back(diffpoly(ell, max_terms, max_degree, max_order));
    return v;
  }

  LambdaPoly lambda_poly(int nvars, int ell, int max_lambda, int max_terms, int max_degree, int max_order) {
    LambdaPoly p(nvars);
    const int n = uniform(0, max_terms);
    for (int i = 0; i < n; ++i) {
      LambdaPoly::Exponents e(static_cast<std::size_t>(nvars));
      for (auto& x : e) x = uniform(0, max_lambda);
      p.add_term(e, DiffPoly::term(monomial(ell, max_degree, max_order), rational()));
    }
    return p;
  }

  // Random element of degree k: skewsymmetrized raw entries.
  PolyVector polyvector(int ell, int degree, int max_lambda = 1, int max_terms = 2, int max_degree = 2, int max_order = 2) {
    if (degree == -1) return PolyVector::functional(ell, diffpoly(ell, max_terms + 1, max_degree + 1, max_order));
    if (degree == 0) {
      const auto v = diffpoly_vector(ell, max_terms, max_degree, max_order);
      return PolyVector::vector_field(v);
    }
    const PolyVector shape(ell, degree);
    std::vector<LambdaPoly> raw;
    for (std::size_t i = 0; i < shape.size(); ++i)
      raw.push_back(lambda_poly(degree + 1, ell, max_lambda, max_terms, max_degree, max_order));
    return skewsymmetrize(ell, degree, raw);
  }

  linalg::Matrix matrix(std::size_t rows, std::size_t cols, int bound = 3) {
    linalg::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_or_zero(bound);
    return m;
  }

  linalg::Matrix invertible_matrix(std::size_t n) {
    while (true) {
      auto m = matrix(n, n);
      if (linalg::rank(m) == n) return m;
    }
  }

  linalg::Matrix symmetric_nondegenerate(std::size_t n) {
    while (true) {
      auto m = matrix(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < r; ++c) m(r, c) = m(c, r);
      if (linalg::rank(m) == n) return m;
    }
  }

  // Random expression text over the parser grammar: sums, products, powers,
  // parentheses, both derivative spellings, rationals and stray whitespace.
  std::string expr_text(int ell, int depth = 3) {
    std::string out = term_text(ell, depth);
    const int extra = uniform(0, 2);
    for (int i = 0; i < extra; ++i) out += (coin() ? " + " : " - ") + term_text(ell, depth);
    return out;
  }

  // Constant-coefficient operator of exact order `order` with invertible
  // leading coefficient; not skewadjoint in general.
  MatDiffOp quasiconstant(std::size_t ell, int order) {
    MatDiffOp k(ell, ell);
    for (int n = 0; n < order; ++n) k += MatDiffOp::constant(matrix(ell, ell), n);
    k += MatDiffOp::constant(invertible_matrix(ell), order);
    return k;
  }

  // Skewadjoint constant-coefficient operator: symmetric K_n for odd n,
  // skewsymmetric for even n. The leading coefficient is invertible when
  // that is possible (odd order, or even order with even ell).
  MatDiffOp skew_quasiconstant(std::size_t ell, int order, bool zero_k0 = false) {
    if (order % 2 == 0 && ell % 2 == 1) throw std::invalid_argument("no invertible skew leading coefficient");
    while (true) {
      MatDiffOp k(ell, ell);
      for (int n = (zero_k0 ? 1 : 0); n <= order; ++n) {
        auto m = matrix(ell, ell);
        auto t = m.transpose();
        if (n % 2 == 1) m += t; else m -= t;
        k += MatDiffOp::constant(m, n);
      }
      if (k.order() == order && leading_coefficient(k).invertible) return k;
    }
  }

  // An order for skew_quasiconstant in 1..max_order that admits an invertible
  // leading coefficient.
  int skew_order(std::size_t ell, int max_order) {
    while (true) {
      const int n = uniform(1, max_order);
      if (n % 2 == 1 || ell % 2 == 0) return n;
    }
  }

  // (L - L*)/2 for a random operator L with polynomial coefficients.
  MatDiffOp skewadjoint(std::size_t ell, int order, int max_degree = 1, int max_order = 1) {
    MatDiffOp l(ell, ell);
    for (std::size_t i = 0; i < ell; ++i)
      for (std::size_t j = 0; j < ell; ++j)
        for (int n = 0; n <= order; ++n)
          if (coin()) l(i, j).add_term(n, diffpoly(static_cast<int>(ell), 2, max_degree, max_order));
    MatDiffOp s = l - adjoint(l);
    s *= Rational(1, 2);
    return s;
  }

 private:
  std::string term_text(int ell, int depth) {
    std::string out = factor_text(ell, depth);
    const int extra = uniform(0, 2);
    for (int i = 0; i < extra; ++i) out += (coin() ? "*" : " * ") + factor_text(ell, depth);
    return out;
  }

  std::string factor_text(int ell, int depth) {
    std::string base;
    const int kind = uniform(0, depth > 0 ? 3 : 2);
    if (kind == 0) {
      base = std::to_string(uniform(0, 9));
      if (coin()) base += "/" + std::to_string(uniform(1, 6));
    } else if (kind <= 2) {
      base = "u" + std::to_string(uniform(1, ell));
      const int order = uniform(0, 5);
      if (order > 0 && coin())
        base += "_" + std::to_string(order);
      else
        base += std::string(static_cast<std::size_t>(order), '\'');
    } else {
      base = "(" + expr_text(ell, depth - 1) + ")";
    }
    if (uniform(0, 3) == 0) base += "^" + std::to_string(uniform(0, 3));
    return base;
  }

  std::mt19937 rng_;
};

}  // namespace vpc::testing
