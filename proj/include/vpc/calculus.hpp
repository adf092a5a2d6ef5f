#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vpc/diffpoly.hpp"
#include "vpc/matop.hpp"

namespace vpc {

// (D_P)_ij = sum_n dP_i/du_j^(n) D^n, an |P| x ell operator.
MatDiffOp frechet(std::span<const DiffPoly> p, int ell);

// Some h with delta h / delta u = P, or nullopt when D_P is not self-adjoint.
std::optional<LocalFunctional> homotopy_integrate(std::span<const DiffPoly> p);

}  // namespace vpc
