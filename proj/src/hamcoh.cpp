#include "vpc/hamcoh.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vpc {

namespace {

void require_constant_square(const MatDiffOp& k) {
  if (!k.is_square() || k.rows() == 0) throw std::invalid_argument("operator must be square and nonempty");
  if (!k.is_quasiconstant()) throw std::invalid_argument("operator does not have constant coefficients");
}

void require_skew(const MatDiffOp& k) {
  if (!k.is_square()) throw std::invalid_argument("operator must be square");
  if (!is_skewadjoint(k)) throw std::invalid_argument("operator is not skewadjoint");
}

template <typename T>
std::vector<std::vector<T>> subsets_of(const std::vector<T>& items, int size) {
  std::vector<std::vector<T>> out;
  const int n = static_cast<int>(items.size());
  if (size < 0 || size > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(size));
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    std::vector<T> s;
    for (int c : cur) s.push_back(items[static_cast<std::size_t>(c)]);
    out.push_back(std::move(s));
    int i = size - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - size + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int t = i + 1; t < size; ++t) cur[static_cast<std::size_t>(t)] = cur[static_cast<std::size_t>(t - 1)] + 1;
  }
  return out;
}

// Sign of the permutation sorting seq, or 0 when seq has a repeated element.
template <typename T>
int sort_sign(std::vector<T>& seq) {
  int sign = 1;
  for (std::size_t i = 1; i < seq.size(); ++i)
    for (std::size_t j = i; j > 0 && seq[j] < seq[j - 1]; --j) {
      std::swap(seq[j], seq[j - 1]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (seq[i] == seq[i - 1]) return 0;
  return sign;
}

int parity_sign(int n) { return n % 2 == 0 ? 1 : -1; }

// Skew array over C[lambda_0..lambda_{n-1}] from symbol-subset coordinates.
std::vector<LambdaPoly> array_from_coords(int ell, int nslots, const std::vector<std::vector<Symbol>>& subsets,
                                          const linalg::Vector& coords) {
  std::size_t count = 1;
  for (int s = 0; s < nslots; ++s) count *= static_cast<std::size_t>(ell);
  std::vector<LambdaPoly> arr(count, LambdaPoly(nslots));
  std::vector<int> perm(static_cast<std::size_t>(nslots));
  for (std::size_t b = 0; b < subsets.size(); ++b) {
    if (coords[b] == 0) continue;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> seq = perm;
      const int sign = sort_sign(seq);
      std::size_t flat = 0;
      LambdaPoly::Exponents e(static_cast<std::size_t>(nslots));
      for (int t = 0; t < nslots; ++t) {
        const Symbol& sym = subsets[b][static_cast<std::size_t>(perm[static_cast<std::size_t>(t)])];
        flat = flat * static_cast<std::size_t>(ell) + static_cast<std::size_t>(sym.index);
        e[static_cast<std::size_t>(t)] = sym.exponent;
      }
      arr[flat].add_term(e, DiffPoly(Rational(sign) * coords[b]));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return arr;
}

std::vector<int> unflatten(std::size_t flat, int ell, int nslots) {
  std::vector<int> idx(static_cast<std::size_t>(nslots));
  for (int s = nslots - 1; s >= 0; --s) {
    idx[static_cast<std::size_t>(s)] = static_cast<int>(flat % static_cast<std::size_t>(ell));
    flat /= static_cast<std::size_t>(ell);
  }
  return idx;
}

std::size_t flatten(std::span<const int> idx, int ell) {
  std::size_t flat = 0;
  for (int i : idx) flat = flat * static_cast<std::size_t>(ell) + static_cast<std::size_t>(i);
  return flat;
}

// K_{ji}(lambda_var) as a polynomial with rational coefficients.
LambdaPoly symbol_of(const MatDiffOp& k, int j, int i, int nvars, int var) {
  LambdaPoly out(nvars);
  LambdaPoly::Exponents e(static_cast<std::size_t>(nvars), 0);
  for (const auto& [m, c] : k(static_cast<std::size_t>(j), static_cast<std::size_t>(i)).coeffs()) {
    e[static_cast<std::size_t>(var)] = m;
    out.add_term(e, c);
  }
  return out;
}

// sum_alpha (-1)^alpha sum_j Q_{j, I\alpha}(lambda\alpha) K_{j i_alpha}(lambda_alpha), where
// q_of(j, index_tuple) returns a polynomial in nslots-1 variables.
template <typename QFn>
std::vector<LambdaPoly> contract_with_k(const MatDiffOp& k, int ell, int nslots, QFn q_of) {
  std::size_t count = 1;
  for (int s = 0; s < nslots; ++s) count *= static_cast<std::size_t>(ell);
  std::vector<LambdaPoly> out(count, LambdaPoly(nslots));
  for (std::size_t flat = 0; flat < count; ++flat) {
    const auto idx = unflatten(flat, ell, nslots);
    for (int alpha = 0; alpha < nslots; ++alpha) {
      std::vector<int> rest_idx, rest_vars;
      for (int t = 0; t < nslots; ++t)
        if (t != alpha) {
          rest_idx.push_back(idx[static_cast<std::size_t>(t)]);
          rest_vars.push_back(t);
        }
      for (int j = 0; j < ell; ++j) {
        const LambdaPoly& q = q_of(j, rest_idx);
        if (q.is_zero()) continue;
        LambdaPoly term = remap(q, nslots, rest_vars) * symbol_of(k, j, idx[static_cast<std::size_t>(alpha)], nslots, alpha);
        term *= Rational(parity_sign(alpha));
        out[flat] += term;
      }
    }
  }
  return out;
}

// Substitutes lambda_last = -(lambda_0 + ... + lambda_{last-1}) in a polynomial
// with constant coefficients.
LambdaPoly substitute_last_constant(const LambdaPoly& p) {
  // With constant coefficients d acts as zero, so eliminate_last does exactly this.
  return eliminate_last(p);
}

}  // namespace

// ---------------------------------------------------------------------------

bool is_hamiltonian(const MatDiffOp& k) {
  require_skew(k);
  const PolyVector p = operator_array(k);
  return schouten(p, p).is_zero();
}

bool is_compatible(const MatDiffOp& k, const MatDiffOp& h) {
  require_skew(k);
  require_skew(h);
  if (k.rows() != h.rows()) throw std::invalid_argument("operators have different sizes");
  return schouten(operator_array(k), operator_array(h)).is_zero();
}

PolyVector delta_K(const MatDiffOp& k, const PolyVector& p) {
  require_constant_square(k);
  const int ell = p.ell();
  if (static_cast<int>(k.rows()) != ell) throw std::invalid_argument("operator size does not match polyvector");
  const int deg = p.degree() + 1;  // output degree
  const int nslots = deg + 1;
  PolyVector out(ell, deg);
  std::vector<LambdaPoly> raw(out.size(), LambdaPoly(nslots));
  const int top = p.coefficient_order();
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const auto idx = out.unflatten(flat);
    for (int alpha = 0; alpha < nslots; ++alpha) {
      std::vector<int> rest_idx, rest_vars;
      for (int t = 0; t < nslots; ++t)
        if (t != alpha) {
          rest_idx.push_back(idx[static_cast<std::size_t>(t)]);
          rest_vars.push_back(t);
        }
      // P's stored variables are its first p.nvars() slots.
      rest_vars.resize(static_cast<std::size_t>(p.nvars()));
      const LambdaPoly entry = remap(p.entry(rest_idx), nslots, rest_vars);
      for (int j = 0; j < ell; ++j) {
        const LambdaPoly ksym = symbol_of(k, j, idx[static_cast<std::size_t>(alpha)], nslots, alpha);
        if (ksym.is_zero()) continue;
        for (int n = 0; n <= top; ++n) {
          LambdaPoly part = partial_derivative(entry, DiffVar{j + 1, n});
          if (part.is_zero()) continue;
          LambdaPoly::Exponents e(static_cast<std::size_t>(nslots), 0);
          e[static_cast<std::size_t>(alpha)] = n;
          LambdaPoly term = part * (LambdaPoly::term(e, DiffPoly(1)) * ksym);
          term *= Rational(parity_sign(deg + 1 + alpha));
          raw[flat] += term;
        }
      }
    }
  }
  return normalize(ell, deg, raw);
}

std::vector<linalg::Vector> kernel_basis(const linalg::Matrix& m) { return linalg::nullspace(m); }

std::vector<LocalFunctional> casimir_basis(const MatDiffOp& k) {
  require_constant_square(k);
  if (!leading_coefficient(k).invertible) throw std::invalid_argument("leading coefficient not invertible");
  const int ell = static_cast<int>(k.rows());
  std::vector<LocalFunctional> out{LocalFunctional(DiffPoly(1))};
  for (const auto& a : kernel_basis(k.coefficient_matrix(0))) {
    DiffPoly f;
    for (int j = 0; j < ell; ++j) f += DiffPoly(a[static_cast<std::size_t>(j)]) * DiffPoly::var(j + 1);
    out.emplace_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// alpha_k

AlphaMap alpha_map(const MatDiffOp& k, int degree) {
  require_constant_square(k);
  if (degree < 0) throw std::invalid_argument("alpha_k is defined for k >= 0");
  if (!leading_coefficient(k).invertible) throw std::invalid_argument("leading coefficient not invertible");
  const int ell = static_cast<int>(k.rows());
  const int order = k.order();

  std::vector<Symbol> low, extended;
  for (int i = 0; i < ell; ++i)
    for (int e = 0; e <= order; ++e) {
      extended.push_back({i, e});
      if (e < order) low.push_back({i, e});
    }

  AlphaMap result;
  result.degree = degree;
  result.basis = subsets_of(low, degree + 1);
  result.q_basis = subsets_of(low, degree);
  const std::size_t nb = result.basis.size();
  const std::size_t nq = result.q_basis.size();
  result.matrix = linalg::Matrix(nb, nb);
  result.certificate.assign(nb, std::vector<linalg::Vector>(static_cast<std::size_t>(ell), linalg::Vector(nq)));
  if (nb == 0) return result;

  // Equations: (degree+1)-subsets of the extended symbols with at most one
  // symbol of top exponent.
  std::map<std::vector<Symbol>, std::size_t> row_of;
  for (const auto& t : subsets_of(extended, degree + 1)) {
    const auto tops = std::count_if(t.begin(), t.end(), [&](const Symbol& s) { return s.exponent == order; });
    if (tops <= 1) row_of.emplace(t, row_of.size());
  }
  const std::size_t nunknowns = nb + static_cast<std::size_t>(ell) * nq;
  if (row_of.size() != nunknowns) throw std::logic_error("alpha_map: system is not square");
  // row_of was filled in lexicographic order of subsets; renumber to keep it deterministic.
  {
    std::size_t r = 0;
    for (auto& entry : row_of) entry.second = r++;
  }

  linalg::Matrix m(nunknowns, nunknowns);
  for (std::size_t b = 0; b < nb; ++b) m(row_of.at(result.basis[b]), b) = 1;
  for (int j = 0; j < ell; ++j)
    for (std::size_t u = 0; u < nq; ++u) {
      const std::size_t col = nb + static_cast<std::size_t>(j) * nq + u;
      for (const Symbol& x : extended) {
        if (std::find(result.q_basis[u].begin(), result.q_basis[u].end(), x) != result.q_basis[u].end()) continue;
        std::vector<Symbol> t = result.q_basis[u];
        t.push_back(x);
        std::sort(t.begin(), t.end());
        const auto alpha = std::find(t.begin(), t.end(), x) - t.begin();
        const Rational kc =
            k(static_cast<std::size_t>(j), static_cast<std::size_t>(x.index)).coefficient(x.exponent).constant_term();
        if (kc == 0) continue;
        m(row_of.at(t), col) += Rational(parity_sign(static_cast<int>(alpha))) * kc;
      }
    }

  const auto inv = linalg::inverse(m);
  if (!inv) throw std::invalid_argument("leading coefficient not invertible");

  for (std::size_t b = 0; b < nb; ++b) {
    linalg::Vector rhs(nunknowns);
    for (std::size_t p = 0; p < result.basis[b].size(); ++p) {
      std::vector<Symbol> seq = result.basis[b];
      ++seq[p].exponent;
      const int sign = sort_sign(seq);
      if (sign == 0) continue;
      rhs[row_of.at(seq)] += sign;
    }
    const linalg::Vector x = (*inv) * rhs;
    for (std::size_t r = 0; r < nb; ++r) result.matrix(r, b) = x[r];
    for (int j = 0; j < ell; ++j)
      for (std::size_t u = 0; u < nq; ++u)
        result.certificate[b][static_cast<std::size_t>(j)][u] = x[nb + static_cast<std::size_t>(j) * nq + u];
  }

  // Check the defining identity on full arrays for every basis element.
  const int nslots = degree + 1;
  std::vector<int> all_vars(static_cast<std::size_t>(nslots));
  std::iota(all_vars.begin(), all_vars.end(), 0);
  for (std::size_t b = 0; b < nb; ++b) {
    linalg::Vector unit(nb);
    unit[b] = 1;
    linalg::Vector rcol(nb);
    for (std::size_t r = 0; r < nb; ++r) rcol[r] = result.matrix(r, b);
    const auto p_arr = array_from_coords(ell, nslots, result.basis, unit);
    const auto r_arr = array_from_coords(ell, nslots, result.basis, rcol);
    std::vector<std::vector<LambdaPoly>> q_arr;
    for (int j = 0; j < ell; ++j)
      q_arr.push_back(array_from_coords(ell, degree, result.q_basis, result.certificate[b][static_cast<std::size_t>(j)]));
    const auto contracted = contract_with_k(k, ell, nslots, [&](int j, const std::vector<int>& rest) -> const LambdaPoly& {
      return q_arr[static_cast<std::size_t>(j)][flatten(rest, ell)];
    });
    const LambdaPoly sum_lambda = linear_power(nslots, all_vars, 1);
    for (std::size_t flat = 0; flat < p_arr.size(); ++flat)
      if (sum_lambda * p_arr[flat] != r_arr[flat] + contracted[flat])
        throw std::logic_error("alpha_map: certificate check failed");
  }

  result.kernel_dimension = nb - linalg::rank(result.matrix);
  return result;
}

CohomologyReport cohomology_dimensions(const MatDiffOp& k, int k_max) {
  require_constant_square(k);
  if (k_max < -1) throw std::invalid_argument("kmax must be >= -1");
  CohomologyReport report;
  report.order = k.order();
  report.ell = static_cast<int>(k.rows());
  const long nl = static_cast<long>(report.order) * report.ell;
  std::vector<std::size_t> ker;
  for (int d = 0; d <= k_max + 1; ++d) ker.push_back(alpha_map(k, d).kernel_dimension);
  for (int d = -1; d <= k_max; ++d) {
    CohomologyEntry e;
    e.degree = d;
    if (d == -1) {
      e.kernel_alpha = 0;
      e.dimension = 1 + ker[0];
    } else {
      e.kernel_alpha = ker[static_cast<std::size_t>(d)];
      e.dimension = ker[static_cast<std::size_t>(d)] + ker[static_cast<std::size_t>(d + 1)];
    }
    e.bound = binomial(nl + 1, d + 2).get_num().get_ui();
    e.bound_attained = e.dimension == e.bound;
    report.entries.push_back(e);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Sigma spaces

std::vector<linalg::Vector> sigma0_basis(const MatDiffOp& k) {
  require_constant_square(k);
  return kernel_basis(k.coefficient_matrix(0).transpose());
}

std::vector<std::vector<linalg::Matrix>> sigma1_basis(const MatDiffOp& k) {
  require_constant_square(k);
  const std::size_t ell = k.rows();
  const int order = k.order();
  if (order < 1) return {};
  const auto n_q = static_cast<std::size_t>(order);
  auto var = [&](std::size_t m, std::size_t r, std::size_t c) { return (m * ell + r) * ell + c; };
  const std::size_t nunknowns = n_q * ell * ell;
  // Rows: coefficient of lambda^p at (a, b), p <= 2N - 1.
  const std::size_t npow = static_cast<std::size_t>(2 * order);
  linalg::Matrix sys(npow * ell * ell, nunknowns);
  for (int n = 0; n <= order; ++n) {
    const linalg::Matrix kn = k.coefficient_matrix(n);
    for (std::size_t m = 0; m < n_q; ++m) {
      const std::size_t p = static_cast<std::size_t>(n) + m;
      for (std::size_t a = 0; a < ell; ++a)
        for (std::size_t b = 0; b < ell; ++b) {
          const std::size_t row = (p * ell + a) * ell + b;
          for (std::size_t c = 0; c < ell; ++c) {
            // (-1)^n (K_n^T Q_m)_{ab} - (-1)^m (Q_m^T K_n)_{ab}
            sys(row, var(m, c, b)) += Rational(parity_sign(n)) * kn(c, a);
            sys(row, var(m, c, a)) -= Rational(parity_sign(static_cast<int>(m))) * kn(c, b);
          }
        }
    }
  }
  std::vector<std::vector<linalg::Matrix>> out;
  for (const auto& v : linalg::nullspace(sys)) {
    std::vector<linalg::Matrix> q(n_q, linalg::Matrix(ell, ell));
    for (std::size_t m = 0; m < n_q; ++m)
      for (std::size_t r = 0; r < ell; ++r)
        for (std::size_t c = 0; c < ell; ++c) q[m](r, c) = v[var(m, r, c)];
    out.push_back(std::move(q));
  }
  return out;
}

std::size_t sigma_dimension(const MatDiffOp& k, int degree) {
  if (degree == 0) return sigma0_basis(k).size();
  if (degree == 1) return sigma1_basis(k).size();
  throw std::invalid_argument("Sigma_k is implemented for k in {0, 1}");
}

// ---------------------------------------------------------------------------
// A^k membership

bool a_space_member(const MatDiffOp& k, const PolyVector& element) {
  require_constant_square(k);
  const int ell = element.ell();
  if (static_cast<int>(k.rows()) != ell) throw std::invalid_argument("operator size does not match element");
  const int deg = element.degree();
  if (deg < -1 || deg > 1) throw std::invalid_argument("A^k membership is implemented for k in {-1, 0, 1}");
  const int order = k.order();
  const int nslots = deg + 1;

  // P_{j,I}(lambda_0..lambda_k) = sum c_{a,n} lambda^a (-lambda_0 - .. - lambda_k)^n
  // for a normal-form entry sum c_{a,n} lambda^a u_j^(n).
  std::vector<int> all_vars(static_cast<std::size_t>(nslots));
  std::iota(all_vars.begin(), all_vars.end(), 0);
  std::vector<int> stored_vars(static_cast<std::size_t>(element.nvars()));
  std::iota(stored_vars.begin(), stored_vars.end(), 0);
  std::vector<std::vector<LambdaPoly>> p(static_cast<std::size_t>(ell), std::vector<LambdaPoly>(element.size(), LambdaPoly(nslots)));
  for (std::size_t flat = 0; flat < element.size(); ++flat) {
    const LambdaPoly& entry = element.at(flat);
    for (const auto& [e, c] : entry.terms()) {
      for (const auto& [mono, q] : c.terms()) {
        if (mono.degree() != 1) throw std::invalid_argument("element is not linear in u");
        const DiffVar v = mono.factors().front().first;
        LambdaPoly head = remap(LambdaPoly::term(e, DiffPoly(q)), nslots, stored_vars);
        LambdaPoly power = linear_power(nslots, all_vars, v.order);
        if (v.order % 2 == 1) power *= Rational(-1);
        p[static_cast<std::size_t>(v.index - 1)][flat] += head * power;
      }
    }
  }
  if (deg == -1) {
    // The functional is a coset; use the unique representative sum_j P_j u_j
    // with P_j constant, which is delta / delta u of the density.
    const auto dv = variational_derivative(element.density(), ell);
    if (!element.density().is_zero() && element.density().constant_term() != 0)
      throw std::invalid_argument("element is not linear in u");
    for (int j = 0; j < ell; ++j) {
      if (!dv[static_cast<std::size_t>(j)].is_constant())
        throw std::invalid_argument("element is not linear in u with constant coefficients");
      p[static_cast<std::size_t>(j)][0] = LambdaPoly::constant(0, dv[static_cast<std::size_t>(j)]);
    }
  }

  // Degree bound and skewsymmetry in C[lambda_0..lambda_k].
  for (const auto& pj : p)
    for (const auto& entry : pj) {
      for (int v = 0; v < nslots; ++v)
        if (entry.degree_in(v) > order - 1) return false;
      for (const auto& t : entry.terms())
        if (!t.second.is_constant()) throw std::invalid_argument("element has nonconstant lambda coefficients");
    }
  if (nslots >= 2) {
    for (const auto& pj : p) {
      std::vector<int> perm(static_cast<std::size_t>(nslots));
      for (int s = 0; s + 1 < nslots; ++s) {
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[static_cast<std::size_t>(s)], perm[static_cast<std::size_t>(s + 1)]);
        for (std::size_t flat = 0; flat < pj.size(); ++flat) {
          auto idx = unflatten(flat, ell, nslots);
          std::vector<int> src(idx.size());
          for (int t = 0; t < nslots; ++t) src[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(t)])];
          if (remap(pj[flatten(src, ell)], nslots, perm) != -pj[flat]) return false;
        }
      }
    }
  }

  // sum_alpha (-1)^alpha sum_j P_{j, I\alpha}(lambda\alpha) K_{j i_alpha}(lambda_alpha) = 0
  // modulo lambda_0 + .. + lambda_{k+1}.
  const auto contracted = contract_with_k(k, ell, nslots + 1, [&](int j, const std::vector<int>& rest) -> const LambdaPoly& {
    return p[static_cast<std::size_t>(j)][flatten(rest, ell)];
  });
  return std::all_of(contracted.begin(), contracted.end(),
                     [](const LambdaPoly& c) { return substitute_last_constant(c).is_zero(); });
}

// ---------------------------------------------------------------------------

bool is_essential(const MatDiffOp& k, const PolyVector& p) {
  const auto casimirs = casimir_basis(k);
  if (p.degree() == -1) return p.is_zero();
  // Nested brackets, one level per slot, over all tuples of Casimirs.
  std::vector<PolyVector> level{p};
  for (int depth = 0; depth <= p.degree(); ++depth) {
    std::vector<PolyVector> next;
    for (const auto& x : level)
      for (const auto& c : casimirs) {
        PolyVector y = bracket_k_functional(x, c.representative());
        if (!y.is_zero()) next.push_back(std::move(y));
      }
    if (next.empty()) return true;
    level = std::move(next);
  }
  return false;
}

DiffPoly inner_product(const MatDiffOp& k, std::span<const DiffPoly> f, std::span<const DiffPoly> g) {
  require_constant_square(k);
  if (f.size() != k.rows() || g.size() != k.rows()) throw std::invalid_argument("vector sizes do not match operator");
  DiffPoly out;
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < k.cols(); ++j)
      for (const auto& [n, c] : k(i, j).coeffs())
        for (int m = 0; m < n; ++m) {
          DiffPoly t = f[i] * c * total_derivative(g[j], m);
          t *= binomial(n, m) * parity_sign(n - 1 - m);
          out += total_derivative(t, n - 1 - m);
        }
  return out;
}

GramReport gram_on_kernel(const MatDiffOp& k) {
  require_constant_square(k);
  GramReport report;
  report.kernel_basis = kernel_basis(k.coefficient_matrix(0));
  const std::size_t d = report.kernel_basis.size();
  report.gram = linalg::Matrix(d, d);
  auto as_poly = [](const linalg::Vector& v) {
    std::vector<DiffPoly> out;
    for (const auto& q : v) out.emplace_back(q);
    return out;
  };
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const DiffPoly v = inner_product(k, as_poly(report.kernel_basis[a]), as_poly(report.kernel_basis[b]));
      if (!v.is_constant()) throw std::logic_error("inner product of constant vectors is not constant");
      report.gram(a, b) = v.constant_term();
    }
  report.symmetric = report.gram.is_symmetric();
  report.rank = linalg::rank(report.gram);
  report.nondegenerate = report.rank == d;
  return report;
}

// ---------------------------------------------------------------------------
// Translation-invariant A^k for K = S D

std::vector<linalg::Vector> lambda_s_basis(const linalg::Matrix& s, int m) {
  if (!s.is_square()) throw std::invalid_argument("S must be square");
  const int ell = static_cast<int>(s.rows());
  if (m < 1) throw std::invalid_argument("Lambda^m_S requires m >= 1");
  const int r = m - 1;  // number of skew indices after j
  std::size_t total = 1;
  for (int t = 0; t <= r; ++t) total *= static_cast<std::size_t>(ell);
  // Unknowns: a_{j, T} for increasing r-tuples T.
  std::vector<int> items(static_cast<std::size_t>(ell));
  std::iota(items.begin(), items.end(), 0);
  const auto tuples = subsets_of(items, r);
  const std::size_t nunk = static_cast<std::size_t>(ell) * tuples.size();
  std::map<std::vector<int>, std::size_t> tuple_pos;
  for (std::size_t t = 0; t < tuples.size(); ++t) tuple_pos.emplace(tuples[t], t);
  // a_{j, seq} as (unknown, sign) or sign 0.
  auto lookup = [&](int j, std::vector<int> seq) -> std::pair<std::size_t, int> {
    const int sign = sort_sign(seq);
    if (sign == 0) return {0, 0};
    return {static_cast<std::size_t>(j) * tuples.size() + tuple_pos.at(seq), sign};
  };
  std::vector<linalg::Vector> rows;
  if (r >= 1) {
    // For all c, i_1..i_r: sum_j s_{c j} a_{j, i_1, i_2..} + sum_j a_{j, c, i_2..} s_{j, i_1} = 0.
    std::vector<int> idx(static_cast<std::size_t>(r + 1), 0);
    std::size_t combos = 1;
    for (int t = 0; t <= r; ++t) combos *= static_cast<std::size_t>(ell);
    for (std::size_t flat = 0; flat < combos; ++flat) {
      idx = unflatten(flat, ell, r + 1);
      const int c = idx[0];
      linalg::Vector row(nunk);
      for (int j = 0; j < ell; ++j) {
        std::vector<int> first(idx.begin() + 1, idx.end());
        auto [u1, s1] = lookup(j, first);
        if (s1 != 0) row[u1] += Rational(s1) * s(static_cast<std::size_t>(c), static_cast<std::size_t>(j));
        std::vector<int> second = first;
        second[0] = c;
        auto [u2, s2] = lookup(j, second);
        if (s2 != 0) row[u2] += Rational(s2) * s(static_cast<std::size_t>(j), static_cast<std::size_t>(idx[1]));
      }
      if (!linalg::is_zero(row)) rows.push_back(std::move(row));
    }
  }
  linalg::Matrix sys(rows.size(), nunk);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < nunk; ++c) sys(i, c) = rows[i][c];
  std::vector<linalg::Vector> out;
  for (const auto& v : linalg::nullspace(sys)) {
    linalg::Vector full(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
      const auto idx = unflatten(flat, ell, r + 1);
      auto [u, sign] = lookup(idx[0], std::vector<int>(idx.begin() + 1, idx.end()));
      if (sign != 0) full[flat] = Rational(sign) * v[u];
    }
    out.push_back(std::move(full));
  }
  return out;
}

std::vector<PolyVector> translation_basis(const linalg::Matrix& s, int degree) {
  if (!s.is_square() || s.rows() == 0) throw std::invalid_argument("S must be square and nonempty");
  if (degree < -1) throw std::invalid_argument("degree must be >= -1");
  const int ell = static_cast<int>(s.rows());
  std::vector<PolyVector> out;
  if (degree == -1) {
    out.push_back(PolyVector::functional(ell, DiffPoly(1)));
    for (int j = 1; j <= ell; ++j) out.push_back(PolyVector::functional(ell, DiffPoly::var(j)));
    return out;
  }
  // Lambda^{k+1}: the elementary skew array on each (k+1)-subset of indices.
  std::vector<int> items(static_cast<std::size_t>(ell));
  std::iota(items.begin(), items.end(), 0);
  for (const auto& subset : subsets_of(items, degree + 1)) {
    PolyVector b(ell, degree);
    std::vector<int> perm = subset;
    do {
      std::vector<int> seq = perm;
      const int sign = sort_sign(seq);
      b.entry(perm) = LambdaPoly::constant(b.nvars(), DiffPoly(sign));
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.push_back(std::move(b));
  }
  // u.Lambda^{k+2}_S.
  for (const auto& a : lambda_s_basis(s, degree + 2)) {
    PolyVector ua(ell, degree);
    for (std::size_t flat = 0; flat < ua.size(); ++flat) {
      DiffPoly c;
      for (int j = 0; j < ell; ++j)
        c += DiffPoly(a[static_cast<std::size_t>(j) * ua.size() + flat]) * DiffPoly::var(j + 1);
      ua.at(flat) = LambdaPoly::constant(ua.nvars(), c);
    }
    out.push_back(std::move(ua));
  }
  return out;
}

}  // namespace vpc
