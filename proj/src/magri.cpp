#include "vpc/magri.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "vpc/calculus.hpp"
#include "vpc/hamcoh.hpp"

namespace vpc {

namespace {

void require_skew(const MatDiffOp& op) {
  if (!op.is_square()) throw std::invalid_argument("operator must be square");
  if (!is_skewadjoint(op)) throw std::invalid_argument("operator is not skewadjoint");
}

int ell_of(const MatDiffOp& op) { return static_cast<int>(op.rows()); }

DiffPoly dot(const std::vector<DiffPoly>& a, const std::vector<DiffPoly>& b) {
  DiffPoly out;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

bool all_zero(const std::vector<DiffPoly>& v) {
  return std::all_of(v.begin(), v.end(), [](const DiffPoly& p) { return p.is_zero(); });
}

}  // namespace

std::vector<DiffPoly> evolution_equation(const MatDiffOp& h, const LocalFunctional& f) {
  require_skew(h);
  const auto dv = variational_derivative(f.representative(), ell_of(h));
  return vpc::apply(h, dv);
}

bool involution_check(const MatDiffOp& h, const LocalFunctional& f, const LocalFunctional& g) {
  const auto flow = evolution_equation(h, f);
  const auto dg = variational_derivative(g.representative(), ell_of(h));
  return is_total_derivative(dot(dg, flow));
}

std::optional<std::vector<DiffPoly>> solve_constant(const MatDiffOp& k, const std::vector<DiffPoly>& f) {
  if (!k.is_square() || !k.is_quasiconstant()) throw std::invalid_argument("K must be square with constant coefficients");
  const auto lead = leading_coefficient(k);
  if (!lead.invertible) throw std::invalid_argument("leading coefficient not invertible");
  const int ell = ell_of(k);
  if (static_cast<int>(f.size()) != ell) throw std::invalid_argument("right-hand side has the wrong length");
  for (const auto& p : f)
    if (p.max_index() > ell) throw std::invalid_argument("right-hand side mentions a variable beyond ell");

  const int order = k.order();
  if (order == 1 && k.coefficient_matrix(0).is_zero()) {
    // K = S d: G = S^{-1} (antiderivatives of F).
    const auto s_inv = linalg::inverse(k.coefficient_matrix(1));
    std::vector<DiffPoly> anti;
    for (const auto& p : f) {
      auto a = antiderivative(p);
      if (!a) return std::nullopt;
      anti.push_back(std::move(*a));
    }
    std::vector<DiffPoly> g(static_cast<std::size_t>(ell));
    for (int i = 0; i < ell; ++i)
      for (int j = 0; j < ell; ++j) {
        const Rational& c = (*s_inv)(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        if (c != 0) g[static_cast<std::size_t>(i)] += DiffPoly(c) * anti[static_cast<std::size_t>(j)];
      }
    return g;
  }

  // Constant coefficients preserve the polynomial degree in u, so solve one
  // degree at a time over monomials of order <= order(F).
  std::map<int, std::vector<DiffPoly>> by_degree;
  for (int i = 0; i < ell; ++i)
    for (const auto& [m, c] : f[static_cast<std::size_t>(i)].terms()) {
      auto& slot = by_degree.try_emplace(m.degree(), std::vector<DiffPoly>(static_cast<std::size_t>(ell))).first->second;
      slot[static_cast<std::size_t>(i)].add_term(m, c);
    }
  int max_order = 0;
  for (const auto& p : f) max_order = std::max(max_order, p.order());

  std::vector<DiffPoly> g(static_cast<std::size_t>(ell));
  for (const auto& [deg, part] : by_degree) {
    std::vector<Monomial> monos;
    for (int w = 0; w <= deg * max_order; ++w)
      for (const auto& m : enumerate_monomials(ell, deg, w, max_order)) monos.push_back(m);
    // Unknown (i, m): coefficient of m in G_i.
    std::vector<std::vector<DiffPoly>> images;
    std::map<std::pair<int, Monomial>, std::size_t> row_of;
    for (int i = 0; i < ell; ++i)
      for (const auto& m : monos) {
        std::vector<DiffPoly> unit(static_cast<std::size_t>(ell));
        unit[static_cast<std::size_t>(i)] = DiffPoly::term(m);
        images.push_back(vpc::apply(k, unit));
        for (int r = 0; r < ell; ++r)
          for (const auto& t : images.back()[static_cast<std::size_t>(r)].terms()) row_of.try_emplace({r, t.first}, 0);
      }
    for (int r = 0; r < ell; ++r)
      for (const auto& t : part[static_cast<std::size_t>(r)].terms()) row_of.try_emplace({r, t.first}, 0);
    std::size_t n = 0;
    for (auto& e : row_of) e.second = n++;
    linalg::Matrix a(row_of.size(), images.size());
    for (std::size_t c = 0; c < images.size(); ++c)
      for (int r = 0; r < ell; ++r)
        for (const auto& [m, q] : images[c][static_cast<std::size_t>(r)].terms()) a(row_of.at({r, m}), c) = q;
    linalg::Vector b(row_of.size());
    for (int r = 0; r < ell; ++r)
      for (const auto& [m, q] : part[static_cast<std::size_t>(r)].terms()) b[row_of.at({r, m})] = q;
    const auto x = linalg::solve(a, b);
    if (!x || a * *x != b) return std::nullopt;
    for (int i = 0; i < ell; ++i)
      for (std::size_t t = 0; t < monos.size(); ++t)
        g[static_cast<std::size_t>(i)].add_term(monos[t], (*x)[static_cast<std::size_t>(i) * monos.size() + t]);
  }
  return g;
}

std::optional<LocalFunctional> lenard_step(const MatDiffOp& k, const MatDiffOp& h, const LocalFunctional& hn,
                                           const linalg::Vector& g_shift) {
  if (!is_compatible(k, h)) throw std::invalid_argument("operators are not compatible");
  const int ell = ell_of(k);
  if (!g_shift.empty() && static_cast<int>(g_shift.size()) != ell) throw std::invalid_argument("shift has the wrong length");
  const auto flow = evolution_equation(h, LocalFunctional(hn.representative()));
  auto g = solve_constant(k, flow);
  if (!g) return std::nullopt;
  for (std::size_t i = 0; i < g_shift.size(); ++i) (*g)[i] += DiffPoly(g_shift[i]);
  if (all_zero(*g)) return LocalFunctional(DiffPoly{});
  return homotopy_integrate(*g);
}

HierarchyState build_hierarchy(const MatDiffOp& k, const MatDiffOp& h, const LocalFunctional& seed, int steps) {
  if (steps < 0) throw std::invalid_argument("steps must be nonnegative");
  require_skew(k);
  require_skew(h);
  const int ell = ell_of(k);
  if (!all_zero(vpc::apply(k, variational_derivative(seed.representative(), ell))))
    throw std::invalid_argument("seed is not a Casimir of K");

  HierarchyState state;
  state.k = k;
  state.h = h;
  state.functionals.push_back(seed);
  state.flows.push_back(evolution_equation(h, seed));
  state.complete = true;
  for (int step = 1; step <= steps; ++step) {
    auto next = lenard_step(k, h, state.functionals.back());
    if (!next) {
      state.complete = false;
      state.obstructed_at = step;
      break;
    }
    // Recursion witness.
    const auto lhs = vpc::apply(k, variational_derivative(next->representative(), ell));
    if (lhs != state.flows.back()) throw std::logic_error("Lenard recursion check failed");
    state.functionals.push_back(*next);
    state.flows.push_back(evolution_equation(h, *next));
  }

  const std::size_t n = state.functionals.size();
  state.involution_h.assign(n, std::vector<bool>(n, false));
  state.involution_k.assign(n, std::vector<bool>(n, false));
  state.all_in_involution = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      state.involution_h[a][b] = involution_check(h, state.functionals[a], state.functionals[b]);
      state.involution_k[a][b] = involution_check(k, state.functionals[a], state.functionals[b]);
      state.all_in_involution = state.all_in_involution && state.involution_h[a][b] && state.involution_k[a][b];
    }
  return state;
}

}  // namespace vpc
