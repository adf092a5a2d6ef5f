#pragma once

// The Lenard-Magri scheme for a compatible pair (K, H) of Hamiltonian
// operators: flows, involution checks and hierarchy generation.

#include <optional>
#include <vector>

#include "vpc/diffpoly.hpp"
#include "vpc/linalg.hpp"
#include "vpc/matop.hpp"

namespace vpc {

// H(d) delta h / delta u. Throws unless H is skewadjoint.
std::vector<DiffPoly> evolution_equation(const MatDiffOp& h, const LocalFunctional& f);

// int (delta g / delta u) . H(d) (delta f / delta u) == 0.
bool involution_check(const MatDiffOp& h, const LocalFunctional& f, const LocalFunctional& g);

// Some G with K(d) G = F, or nullopt. K must have constant coefficients and an
// invertible leading coefficient. For K = S d this is S^{-1} applied to
// antiderivatives; otherwise an exact solve degree by degree in u.
std::optional<std::vector<DiffPoly>> solve_constant(const MatDiffOp& k, const std::vector<DiffPoly>& f);

// h_{n+1} with K delta h_{n+1} = H delta h_n, or nullopt when no local
// solution exists. `g_shift` (constants, size ell or empty) is added to the
// preimage G before integration. Throws std::invalid_argument when the pair
// is not compatible or K is outside the supported class.
std::optional<LocalFunctional> lenard_step(const MatDiffOp& k, const MatDiffOp& h, const LocalFunctional& hn,
                                           const linalg::Vector& g_shift = {});

struct HierarchyState {
  MatDiffOp k;
  MatDiffOp h;
  std::vector<LocalFunctional> functionals;  // h_0..h_n
  std::vector<std::vector<DiffPoly>> flows;  // H delta h_m / delta u
  bool complete = false;                     // all requested steps succeeded
  std::optional<int> obstructed_at;          // step that returned nothing
  // involution[m][n] for H and for K.
  std::vector<std::vector<bool>> involution_h;
  std::vector<std::vector<bool>> involution_k;
  bool all_in_involution = false;
};

// Iterates lenard_step from a Casimir seed. Throws std::invalid_argument if
// the seed is not a Casimir of K.
HierarchyState build_hierarchy(const MatDiffOp& k, const MatDiffOp& h, const LocalFunctional& seed, int steps);

}  // namespace vpc
