#pragma once

// Finite-dimensional Z-graded Lie superalgebras: the Grassmann algebra
// Lambda(n) with the Poisson bracket {.,.}_S, its quotient H~(n,S) by the
// scalars, W(n), so(n,S), the embedding phi_S and full prolongations.
//
// Generators are 0-based; a monomial xi_{i_1}..xi_{i_s} (i_1 < .. < i_s) is
// the bitmask with those bits set. deg = s - 2.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "vpc/hamcoh.hpp"
#include "vpc/linalg.hpp"
#include "vpc/polyvec.hpp"
#include "vpc/rational.hpp"

namespace vpc {

using GrassmannMask = std::uint32_t;

inline int mask_size(GrassmannMask m) { return __builtin_popcount(m); }

class GrassmannElem {
 public:
  explicit GrassmannElem(int n = 0);

  static GrassmannElem scalar(int n, const Rational& c);
  static GrassmannElem generator(int n, int i);
  static GrassmannElem monomial(int n, GrassmannMask mask, const Rational& c = Rational(1));

  int n() const { return n_; }
  const std::map<GrassmannMask, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(GrassmannMask mask) const;
  void add_term(GrassmannMask mask, const Rational& c);

  // Parity of a homogeneous element; nullopt for zero or mixed parity.
  std::optional<int> parity() const;
  // Z-degree (s - 2) of an element with all monomials of one size.
  std::optional<int> degree() const;
  // Split by parity: {even part, odd part}.
  std::pair<GrassmannElem, GrassmannElem> split_parity() const;

  GrassmannElem& operator+=(const GrassmannElem& other);
  GrassmannElem& operator-=(const GrassmannElem& other);
  GrassmannElem& operator*=(const Rational& s);
  friend GrassmannElem operator+(GrassmannElem a, const GrassmannElem& b) { return a += b; }
  friend GrassmannElem operator-(GrassmannElem a, const GrassmannElem& b) { return a -= b; }
  friend GrassmannElem operator*(const Rational& s, GrassmannElem a) { return a *= s; }
  friend bool operator==(const GrassmannElem&, const GrassmannElem&) = default;

 private:
  int n_ = 0;
  std::map<GrassmannMask, Rational> terms_;
};

GrassmannElem grassmann_mul(const GrassmannElem& a, const GrassmannElem& b);
// Left derivative: moves xi_i to the front, then removes it.
GrassmannElem left_derivative(const GrassmannElem& f, int i);

// {f,g}_S = (-1)^{p(f)+1} sum s_ij (d f / d xi_i)(d g / d xi_j), extended
// linearly over the parity components of f.
GrassmannElem poisson_bracket_S(const linalg::Matrix& s, const GrassmannElem& f, const GrassmannElem& g);
// As above with the scalar component removed.
GrassmannElem htilde_bracket(const linalg::Matrix& s, const GrassmannElem& f, const GrassmannElem& g);
// Monomials of H~_k(n), k = -1..n-2, in increasing mask order of each size.
std::vector<GrassmannMask> htilde_basis(int n, int degree);
// dim H~_k(n,S) for k = -1..n-2.
std::vector<std::size_t> htilde_dims(int n);

// Basis of {A : A^T S + S A = 0, Tr A = 0}.
std::vector<linalg::Matrix> so_basis(const linalg::Matrix& s);
// Bijectivity of (v, A) -> (v, A S) from H~_{-1} + H~_0 onto PiC^n + so(n,S).
bool vA_map_bijective(const linalg::Matrix& s);

// Derivation sum_j f_j d/d xi_j of Lambda(n).
class SuperDerivation {
 public:
  explicit SuperDerivation(int n = 0);
  static SuperDerivation partial(int n, int j);

  int n() const { return static_cast<int>(coeffs_.size()); }
  const GrassmannElem& coefficient(int j) const { return coeffs_[static_cast<std::size_t>(j)]; }
  GrassmannElem& coefficient(int j) { return coeffs_[static_cast<std::size_t>(j)]; }
  bool is_zero() const;
  // Parity p(f_j) + 1 of a homogeneous derivation.
  std::optional<int> parity() const;

  GrassmannElem apply(const GrassmannElem& f) const;

  // Flat coordinates over (j, mask) for masks of the given size.
  linalg::Vector coordinates(int size) const;
  static SuperDerivation from_coordinates(int n, int size, const linalg::Vector& coords);

  SuperDerivation& operator+=(const SuperDerivation& other);
  SuperDerivation& operator*=(const Rational& s);
  friend SuperDerivation operator+(SuperDerivation a, const SuperDerivation& b) { return a += b; }
  friend SuperDerivation operator*(const Rational& s, SuperDerivation a) { return a *= s; }
  friend bool operator==(const SuperDerivation&, const SuperDerivation&) = default;

 private:
  std::vector<GrassmannElem> coeffs_;
};

// [X,Y] = X Y - (-1)^{p(X)p(Y)} Y X for homogeneous X, Y.
SuperDerivation w_bracket(const SuperDerivation& x, const SuperDerivation& y);
// Masks of a given size, increasing.
std::vector<GrassmannMask> masks_of_size(int n, int size);

// phi_S for S with zero first row and column (generator 0 is eta) and a
// nondegenerate lower block T. Throws std::invalid_argument otherwise.
SuperDerivation phi_S_embed(const linalg::Matrix& s, const GrassmannElem& f);

// -sum_{a,b} A_ba xi_a d/d xi_b, whose bracket with d/d xi_i is sum_b A_bi d/d xi_b.
SuperDerivation gl_embed(const linalg::Matrix& a);

struct ProlongationLevel {
  int degree = 0;
  std::vector<SuperDerivation> basis;
};

// Full prolongation of (U, g) inside W(dim U), degrees -1..k_max.
// Throws std::invalid_argument when the action is not faithful.
std::vector<ProlongationLevel> full_prolongation(int u_dim, const std::vector<linalg::Matrix>& g_basis, int k_max);

struct IsoReport {
  std::vector<std::size_t> a_dims;       // dim A^k, k = -1..ell-1
  std::vector<std::size_t> htilde_dims;  // dim H~_k(ell+1, S~)
  bool isomorphic = false;
};

// Compares the bracket on A = Lambda^{k+1} + u Lambda^{k+2}_S, computed with
// the Schouten bracket, against H~(ell+1, S~). Throws std::invalid_argument
// ("S must be nondegenerate") unless S is symmetric nondegenerate.
IsoReport iso_check_translation_case(const linalg::Matrix& s);

// Coordinates of p in the given basis, or nullopt when p is not in its span.
std::optional<linalg::Vector> coordinates_in(const std::vector<PolyVector>& basis, const PolyVector& p);

}  // namespace vpc
