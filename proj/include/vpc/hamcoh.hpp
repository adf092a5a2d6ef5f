#pragma once

// Hamiltonian operators, the complex delta_K for a constant-coefficient K,
// Casimirs, cohomology dimensions through the alpha_k maps, the A^k
// membership test, essential elements and the K-inner product.

#include <cstddef>
#include <span>
#include <vector>

#include "vpc/diffpoly.hpp"
#include "vpc/linalg.hpp"
#include "vpc/matop.hpp"
#include "vpc/polyvec.hpp"

namespace vpc {

// [K,K] = 0. Throws std::invalid_argument unless K is square and skewadjoint.
bool is_hamiltonian(const MatDiffOp& k);
// [K,H] = 0, same preconditions on both.
bool is_compatible(const MatDiffOp& k, const MatDiffOp& h);

// delta_K P for P of degree k-1 >= -1. Throws unless K has constant
// coefficients and is ell x ell with ell = P.ell().
PolyVector delta_K(const MatDiffOp& k, const PolyVector& p);

// int 1 followed by int u.A for the null-space basis A of K_0. Throws unless
// K has constant coefficients and an invertible leading coefficient.
std::vector<LocalFunctional> casimir_basis(const MatDiffOp& k);

// Composite symbol (index, lambda exponent), both 0-based.
struct Symbol {
  int index = 0;
  int exponent = 0;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

struct AlphaMap {
  int degree = 0;
  // (degree+1)-subsets of the N*ell symbols with exponent < N, in
  // lexicographic order; these index rows and columns of `matrix`.
  std::vector<std::vector<Symbol>> basis;
  linalg::Matrix matrix;  // column b = coordinates of alpha_k(basis[b])
  // certificate[b][j] holds Q_{j, .} for basis[b], indexed by the k-subsets
  // in `q_basis`.
  std::vector<std::vector<Symbol>> q_basis;
  std::vector<std::vector<linalg::Vector>> certificate;
  std::size_t kernel_dimension = 0;
};

// Throws std::invalid_argument("leading coefficient not invertible") when the
// defining system is singular, or when K is not constant-coefficient.
AlphaMap alpha_map(const MatDiffOp& k, int degree);

struct CohomologyEntry {
  int degree = 0;
  std::size_t kernel_alpha = 0;  // dim ker alpha_k (0 for degree -1)
  std::size_t dimension = 0;
  std::size_t bound = 0;  // binom(N ell + 1, k + 2)
  bool bound_attained = false;
};

struct CohomologyReport {
  int order = 0;
  int ell = 0;
  std::vector<CohomologyEntry> entries;  // degrees -1..k_max
};

CohomologyReport cohomology_dimensions(const MatDiffOp& k, int k_max);

// Sigma_0 = ker K_0^T as column vectors; Sigma_1 as matrix polynomials
// Q(lambda) = sum_m Q_m lambda^m, deg < N, with K^T(-lambda)Q(lambda) =
// Q^T(-lambda)K(lambda). Each basis element is the list Q_0..Q_{N-1}.
std::vector<linalg::Vector> sigma0_basis(const MatDiffOp& k);
std::vector<std::vector<linalg::Matrix>> sigma1_basis(const MatDiffOp& k);
// Dimension of Sigma_degree, degree in {0, 1}.
std::size_t sigma_dimension(const MatDiffOp& k, int degree);

// Membership in A^k_K, k in {-1, 0, 1}. Throws std::invalid_argument when the
// element is not linear in u with constant coefficients.
bool a_space_member(const MatDiffOp& k, const PolyVector& element);

// All nested brackets [..[P, C_0], .., C_k] with Casimirs of K vanish.
bool is_essential(const MatDiffOp& k, const PolyVector& p);

// <F|G>_K = sum_{ij} sum_n sum_{m<n} C(n,m) (-d)^(n-1-m) (F_i K_{ij;n} d^m G_j).
DiffPoly inner_product(const MatDiffOp& k, std::span<const DiffPoly> f, std::span<const DiffPoly> g);

struct GramReport {
  std::vector<linalg::Vector> kernel_basis;  // basis of ker K_0
  linalg::Matrix gram;
  bool symmetric = false;
  std::size_t rank = 0;
  bool nondegenerate = false;
};

GramReport gram_on_kernel(const MatDiffOp& k);

// Basis of ker m in reduced echelon form (one vector per free column).
std::vector<linalg::Vector> kernel_basis(const linalg::Matrix& m);

// For K = S D: Lambda^{k+1} (constant skew arrays, one per (k+1)-subset of
// indices) followed by u.Lambda^{k+2}_S, as polyvectors of degree k >= -1.
std::vector<PolyVector> translation_basis(const linalg::Matrix& s, int degree);
// Basis of Lambda^{m}_S: arrays a_{j, i_1..i_{m-1}} skew in the i's with
// sum_j s_{c j} a_{j, i_1, i_2..} = -sum_j a_{j, c, i_2..} s_{j, i_1}.
// Each array is stored flat over (j, i_1, .., i_{m-1}).
std::vector<linalg::Vector> lambda_s_basis(const linalg::Matrix& s, int m);

}  // namespace vpc
