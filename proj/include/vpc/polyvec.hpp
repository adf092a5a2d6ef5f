#pragma once

// Variational polyvector fields: skewsymmetric arrays P_{i_0..i_k}(lambda_0..lambda_k)
// with entries in V[lambda_0..lambda_k] / (d + lambda_0 + ... + lambda_k), the box
// product and the Schouten bracket.
//
// Entries are stored in normal form, as polynomials in lambda_0..lambda_{k-1}.
// Degree -1 holds a single entry, a representative of a local functional.
// Indices are 0-based here; index i refers to u_{i+1}.

#include <cstddef>
#include <span>
#include <vector>

#include "vpc/diffpoly.hpp"
#include "vpc/lambda_poly.hpp"
#include "vpc/matop.hpp"

namespace vpc {

class PolyVector {
 public:
  PolyVector() = default;
  // The zero element of the given degree (>= -2; degree -2 holds nothing and
  // only appears as the bracket of two functionals). Throws if ell < 1.
  PolyVector(int ell, int degree);

  static PolyVector functional(int ell, const DiffPoly& density);
  static PolyVector vector_field(std::span<const DiffPoly> components);

  int ell() const { return ell_; }
  int degree() const { return degree_; }
  // Number of lambda variables in a normal-form entry.
  int nvars() const { return degree_ > 0 ? degree_ : 0; }
  std::size_t size() const { return entries_.size(); }

  const LambdaPoly& entry(std::span<const int> index) const { return entries_[flatten(index)]; }
  LambdaPoly& entry(std::span<const int> index) { return entries_[flatten(index)]; }
  const LambdaPoly& at(std::size_t flat) const { return entries_[flat]; }
  LambdaPoly& at(std::size_t flat) { return entries_[flat]; }

  std::size_t flatten(std::span<const int> index) const;
  std::vector<int> unflatten(std::size_t flat) const;

  // Degree -1 only.
  const DiffPoly& density() const;
  // Degree 0 only.
  std::vector<DiffPoly> components() const;

  // Exact zero test; for degree -1 this is membership in dV.
  bool is_zero() const;
  // Max derivative order over all coefficients.
  int coefficient_order() const;
  // Max lambda degree over all entries and variables, -1 when zero.
  int lambda_degree() const;

  PolyVector& operator+=(const PolyVector& other);
  PolyVector& operator-=(const PolyVector& other);
  PolyVector& operator*=(const Rational& s);

  friend PolyVector operator+(PolyVector a, const PolyVector& b) { return a += b; }
  friend PolyVector operator-(PolyVector a, const PolyVector& b) { return a -= b; }
  friend PolyVector operator-(PolyVector a) { return a *= Rational(-1); }
  friend PolyVector operator*(const Rational& s, PolyVector a) { return a *= s; }
  // Equality of normal forms; coset equality in degree -1.
  friend bool operator==(const PolyVector& a, const PolyVector& b);

 private:
  int ell_ = 1;
  int degree_ = -1;
  std::vector<LambdaPoly> entries_;
};

// Normalizes raw entries given in degree + 1 lambda variables (row-major over
// index tuples). Degree -1 takes one entry in zero variables.
PolyVector normalize(int ell, int degree, const std::vector<LambdaPoly>& raw);

// Entry of P at the index tuple, written in all degree + 1 variables (the
// last one simply absent). Degree must be >= 0.
LambdaPoly raw_entry(const PolyVector& p, std::span<const int> index);

// P with index slots and lambda variables permuted: result_{I}(lambda) =
// P_{I o perm}(lambda o perm), renormalized.
PolyVector permute(const PolyVector& p, std::span<const int> perm);

// True iff every adjacent transposition of slots yields -P.
bool permute_and_check_skew(const PolyVector& p);

// (1/(k+1)!) sum_sigma sign(sigma) sigma.P for raw entries in degree + 1
// variables.
PolyVector skewsymmetrize(int ell, int degree, const std::vector<LambdaPoly>& raw);

// Array of a square operator under H_ij(lambda) = P_ji(lambda, -lambda-d),
// without checking skewadjointness.
PolyVector operator_array(const MatDiffOp& h);
// As operator_array; throws std::invalid_argument unless h is skewadjoint.
PolyVector from_operator(const MatDiffOp& h);
MatDiffOp to_operator(const PolyVector& p);

PolyVector box_product(const PolyVector& p, const PolyVector& q);
// [P,Q] = P box Q - (-1)^{deg P deg Q} Q box P.
PolyVector schouten(const PolyVector& p, const PolyVector& q);

// {f_lambda g} for the operator h, a polynomial in one variable lambda.
LambdaPoly lambda_bracket(const MatDiffOp& h, const DiffPoly& f, const DiffPoly& g);

// [Q, int h] for Q of degree k+1 >= 0: sum_j Q_{j,I}(d, lambda) delta h / delta u_j.
PolyVector bracket_k_functional(const PolyVector& q, const DiffPoly& h);
// int X_Q(h) = int sum_j Q_j delta h / delta u_j.
LocalFunctional bracket_vf_functional(std::span<const DiffPoly> q, const DiffPoly& h);
// H(d) delta h / delta u.
std::vector<DiffPoly> bracket_op_functional(const MatDiffOp& h, const DiffPoly& density);
// X_P(H) - D_P o H - H o D_P^*.
MatDiffOp bracket_vf_op(std::span<const DiffPoly> p, const MatDiffOp& h);
// [K, H] = K box H + H box K through the closed cyclic formula.
PolyVector triple_bracket(const MatDiffOp& k, const MatDiffOp& h);

// Brackets P (degree >= 0) with every probe int ((-1)^M / 2) (u_j^(M))^2,
// M = 0..order(P) + lambda_degree(P) + 1, and reports whether all vanish.
bool transitivity_probe(const PolyVector& p);

}  // namespace vpc
