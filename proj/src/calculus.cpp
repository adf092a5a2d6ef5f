#include "vpc/calculus.hpp"

#include <algorithm>
#include <stdexcept>

namespace vpc {

MatDiffOp frechet(std::span<const DiffPoly> p, int ell) {
  if (ell < 1) throw std::invalid_argument("number of dependent variables must be >= 1");
  MatDiffOp out(p.size(), static_cast<std::size_t>(ell));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].max_index() > ell) throw std::invalid_argument("characteristic mentions a variable beyond ell");
    const int top = p[i].order();
    for (int j = 1; j <= ell; ++j)
      for (int n = 0; n <= top; ++n)
        out(i, static_cast<std::size_t>(j - 1)).add_term(n, partial_derivative(p[i], DiffVar{j, n}));
  }
  return out;
}

std::optional<LocalFunctional> homotopy_integrate(std::span<const DiffPoly> p) {
  if (p.empty()) throw std::invalid_argument("empty characteristic");
  const int ell = static_cast<int>(p.size());
  const MatDiffOp dp = frechet(p, ell);
  if (adjoint(dp) != dp) return std::nullopt;
  // h = sum_i int_0^1 u_i P_i(t u) dt, one monomial at a time.
  DiffPoly h;
  for (int i = 1; i <= ell; ++i) {
    const Monomial ui(DiffVar{i, 0});
    for (const auto& [m, c] : p[static_cast<std::size_t>(i - 1)].terms())
      h.add_term(ui * m, c / (m.degree() + 1));
  }
  return LocalFunctional(std::move(h));
}

}  // namespace vpc
