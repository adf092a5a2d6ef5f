#pragma once

// Polynomials in lambda_0..lambda_{n-1} with differential-polynomial
// coefficients. The derivation d acts on coefficients only and commutes with
// every lambda.

#include <map>
#include <span>
#include <vector>

#include "vpc/diffpoly.hpp"

namespace vpc {

class LambdaPoly {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, DiffPoly>;

  explicit LambdaPoly(int nvars = 0) : nvars_(nvars) {}
  static LambdaPoly constant(int nvars, const DiffPoly& c);
  static LambdaPoly variable(int nvars, int which);
  static LambdaPoly term(const Exponents& e, const DiffPoly& c);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Highest exponent of lambda_var; -1 for zero.
  int degree_in(int var) const;
  // Max derivative order among coefficients.
  int coefficient_order() const;
  // Coefficient of lambda^0 (all exponents zero).
  DiffPoly constant_coefficient() const;

  void add_term(const Exponents& e, const DiffPoly& c);

  LambdaPoly& operator+=(const LambdaPoly& other);
  LambdaPoly& operator-=(const LambdaPoly& other);
  LambdaPoly& operator*=(const Rational& s);

  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
  friend LambdaPoly operator-(LambdaPoly a) { return a *= Rational(-1); }
  friend LambdaPoly operator*(const Rational& s, LambdaPoly a) { return a *= s; }
  friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b);
  friend LambdaPoly operator*(const DiffPoly& c, const LambdaPoly& a);
  friend bool operator==(const LambdaPoly&, const LambdaPoly&) = default;

 private:
  int nvars_ = 0;
  TermMap terms_;
};

LambdaPoly total_derivative(const LambdaPoly& p);
LambdaPoly total_derivative(const LambdaPoly& p, int times);
LambdaPoly partial_derivative(const LambdaPoly& p, DiffVar v);
LambdaPoly apply_evolutionary(std::span<const DiffPoly> characteristic, const LambdaPoly& p);

// (sum_{v in vars} lambda_v)^e in nvars variables.
LambdaPoly linear_power(int nvars, std::span<const int> vars, int e);

// (sum_{v in vars} lambda_v + d)^a p, with d acting on the coefficients of p.
LambdaPoly shifted_power_apply(std::span<const int> vars, int a, const LambdaPoly& p);

// Re-embeds p into target_nvars variables, sending lambda_i to lambda_{map[i]}.
// map.size() must equal p.nvars().
LambdaPoly remap(const LambdaPoly& p, int target_nvars, std::span<const int> map);

// Normal form modulo (d + lambda_0 + ... + lambda_{n-1}): eliminates the last
// variable through lambda_{n-1} = -lambda_0 - ... - lambda_{n-2} - d, with d
// acting from the left. Input has n >= 1 variables, output n - 1.
LambdaPoly eliminate_last(const LambdaPoly& raw);

}  // namespace vpc
