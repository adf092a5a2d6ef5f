#include "vpc/polyvec.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "vpc/calculus.hpp"

namespace vpc {

namespace {

std::size_t ipow(int base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

// Number of inversions of seq, mod 2, as +1 / -1.
int permutation_sign(std::span<const int> seq) {
  int inv = 0;
  for (std::size_t a = 0; a < seq.size(); ++a)
    for (std::size_t b = a + 1; b < seq.size(); ++b)
      if (seq[a] > seq[b]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

// All increasing subsets of {0..n-1} of the given size, in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int size) {
  std::vector<std::vector<int>> out;
  if (size < 0 || size > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(size));
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = size - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - size + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int t = i + 1; t < size; ++t) cur[static_cast<std::size_t>(t)] = cur[static_cast<std::size_t>(t - 1)] + 1;
  }
  return out;
}

// Symbol of a scalar operator as a polynomial in lambda_var among nvars variables.
LambdaPoly symbol(const OpPoly& l, int nvars, int var) {
  LambdaPoly out(nvars);
  LambdaPoly::Exponents e(static_cast<std::size_t>(nvars), 0);
  for (const auto& [m, c] : l.coeffs()) {
    e[static_cast<std::size_t>(var)] = m;
    out.add_term(e, c);
  }
  return out;
}

void require_same_shape(const PolyVector& a, const PolyVector& b) {
  if (a.ell() != b.ell() || a.degree() != b.degree())
    throw std::invalid_argument("polyvector shape mismatch: (ell " + std::to_string(a.ell()) + ", degree " +
                                std::to_string(a.degree()) + ") vs (ell " + std::to_string(b.ell()) +
                                ", degree " + std::to_string(b.degree()) + ")");
}

}  // namespace

// ---------------------------------------------------------------------------
// PolyVector

PolyVector::PolyVector(int ell, int degree) : ell_(ell), degree_(degree) {
  if (ell < 1) throw std::invalid_argument("number of dependent variables must be >= 1");
  if (degree < -2) throw std::invalid_argument("polyvector degree must be >= -2");
  // Degree -2 is the zero space that receives the bracket of two functionals.
  if (degree >= -1) entries_.assign(ipow(ell, degree + 1), LambdaPoly(nvars()));
}

PolyVector PolyVector::functional(int ell, const DiffPoly& density) {
  if (density.max_index() > ell) throw std::invalid_argument("density mentions a variable beyond ell");
  PolyVector p(ell, -1);
  p.entries_[0] = LambdaPoly::constant(0, density);
  return p;
}

PolyVector PolyVector::vector_field(std::span<const DiffPoly> components) {
  PolyVector p(static_cast<int>(components.size()), 0);
  for (std::size_t i = 0; i < components.size(); ++i) p.entries_[i] = LambdaPoly::constant(0, components[i]);
  return p;
}

std::size_t PolyVector::flatten(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != degree_ + 1)
    throw std::invalid_argument("index tuple of length " + std::to_string(index.size()) + " for degree " +
                                std::to_string(degree_));
  std::size_t flat = 0;
  for (int i : index) {
    if (i < 0 || i >= ell_) throw std::out_of_range("index out of range");
    flat = flat * static_cast<std::size_t>(ell_) + static_cast<std::size_t>(i);
  }
  return flat;
}

std::vector<int> PolyVector::unflatten(std::size_t flat) const {
  std::vector<int> index(static_cast<std::size_t>(degree_ + 1));
  for (std::size_t s = index.size(); s-- > 0;) {
    index[s] = static_cast<int>(flat % static_cast<std::size_t>(ell_));
    flat /= static_cast<std::size_t>(ell_);
  }
  return index;
}

const DiffPoly& PolyVector::density() const {
  if (degree_ != -1) throw std::logic_error("density() requires degree -1");
  static const DiffPoly zero;
  const auto& terms = entries_[0].terms();
  return terms.empty() ? zero : terms.begin()->second;
}

std::vector<DiffPoly> PolyVector::components() const {
  if (degree_ != 0) throw std::logic_error("components() requires degree 0");
  std::vector<DiffPoly> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.constant_coefficient());
  return out;
}

bool PolyVector::is_zero() const {
  if (degree_ == -1) return is_total_derivative(density());
  return std::all_of(entries_.begin(), entries_.end(), [](const LambdaPoly& e) { return e.is_zero(); });
}

int PolyVector::coefficient_order() const {
  int n = 0;
  for (const auto& e : entries_) n = std::max(n, e.coefficient_order());
  return n;
}

int PolyVector::lambda_degree() const {
  int d = -1;
  for (const auto& e : entries_)
    for (int v = 0; v < e.nvars(); ++v) d = std::max(d, e.degree_in(v));
  if (d == -1 && !is_zero()) d = 0;
  return d;
}

PolyVector& PolyVector::operator+=(const PolyVector& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

PolyVector& PolyVector::operator-=(const PolyVector& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

PolyVector& PolyVector::operator*=(const Rational& s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

bool operator==(const PolyVector& a, const PolyVector& b) {
  if (a.ell_ != b.ell_ || a.degree_ != b.degree_) return false;
  if (a.degree_ == -1) return is_total_derivative(a.density() - b.density());
  return a.entries_ == b.entries_;
}

// ---------------------------------------------------------------------------
// Normal forms and permutations

PolyVector normalize(int ell, int degree, const std::vector<LambdaPoly>& raw) {
  PolyVector p(ell, degree);
  if (raw.size() != p.size()) throw std::invalid_argument("raw array has the wrong number of entries");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].nvars() != degree + 1) throw std::invalid_argument("raw entry has the wrong lambda arity");
    p.at(i) = degree == -1 ? raw[i] : eliminate_last(raw[i]);
  }
  return p;
}

LambdaPoly raw_entry(const PolyVector& p, std::span<const int> index) {
  if (p.degree() < 0) throw std::invalid_argument("raw_entry requires degree >= 0");
  std::vector<int> map(static_cast<std::size_t>(p.nvars()));
  std::iota(map.begin(), map.end(), 0);
  return remap(p.entry(index), p.degree() + 1, map);
}

PolyVector permute(const PolyVector& p, std::span<const int> perm) {
  const int k = p.degree();
  if (static_cast<int>(perm.size()) != k + 1) throw std::invalid_argument("permutation of the wrong length");
  if (k <= 0) return p;
  PolyVector out(p.ell(), k);
  std::vector<int> src(static_cast<std::size_t>(k + 1));
  const std::span<const int> var_map = perm.first(static_cast<std::size_t>(k));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const auto index = out.unflatten(flat);
    for (int t = 0; t <= k; ++t) src[static_cast<std::size_t>(t)] = index[static_cast<std::size_t>(perm[static_cast<std::size_t>(t)])];
    out.at(flat) = eliminate_last(remap(p.entry(src), k + 1, var_map));
  }
  return out;
}

bool permute_and_check_skew(const PolyVector& p) {
  const int k = p.degree();
  if (k <= 0) return true;
  const PolyVector neg = -p;
  std::vector<int> perm(static_cast<std::size_t>(k + 1));
  for (int s = 0; s < k; ++s) {
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[static_cast<std::size_t>(s)], perm[static_cast<std::size_t>(s + 1)]);
    if (permute(p, perm) != neg) return false;
  }
  return true;
}

PolyVector skewsymmetrize(int ell, int degree, const std::vector<LambdaPoly>& raw) {
  if (degree <= 0) return normalize(ell, degree, raw);
  const int n = degree + 1;
  PolyVector shape(ell, degree);
  if (raw.size() != shape.size()) throw std::invalid_argument("raw array has the wrong number of entries");
  std::vector<LambdaPoly> acc(raw.size(), LambdaPoly(n));
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Rational count = 0;
  std::vector<int> src(static_cast<std::size_t>(n));
  do {
    const Rational sign = permutation_sign(perm);
    count += 1;
    for (std::size_t flat = 0; flat < raw.size(); ++flat) {
      const auto index = shape.unflatten(flat);
      for (int t = 0; t < n; ++t) src[static_cast<std::size_t>(t)] = index[static_cast<std::size_t>(perm[static_cast<std::size_t>(t)])];
      LambdaPoly moved = remap(raw[shape.flatten(src)], n, perm);
      moved *= sign;
      acc[flat] += moved;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto& e : acc) e *= Rational(1) / count;
  return normalize(ell, degree, acc);
}

// ---------------------------------------------------------------------------
// Operators

PolyVector operator_array(const MatDiffOp& h) {
  if (!h.is_square() || h.rows() == 0) throw std::invalid_argument("operator must be square and nonempty");
  const int ell = static_cast<int>(h.rows());
  PolyVector p(ell, 1);
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j) {
      const int idx[2] = {j, i};
      p.entry(idx) = symbol(h(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), 1, 0);
    }
  return p;
}

PolyVector from_operator(const MatDiffOp& h) {
  if (!is_skewadjoint(h)) throw std::invalid_argument("operator is not skewadjoint");
  return operator_array(h);
}

MatDiffOp to_operator(const PolyVector& p) {
  if (p.degree() != 1) throw std::invalid_argument("to_operator requires a degree-1 polyvector");
  const auto ell = static_cast<std::size_t>(p.ell());
  MatDiffOp h(ell, ell);
  for (std::size_t i = 0; i < ell; ++i)
    for (std::size_t j = 0; j < ell; ++j) {
      const int idx[2] = {static_cast<int>(j), static_cast<int>(i)};
      for (const auto& [e, c] : p.entry(idx).terms()) h(i, j).add_term(e[0], c);
    }
  return h;
}

// ---------------------------------------------------------------------------
// Box product and bracket

PolyVector box_product(const PolyVector& p, const PolyVector& q) {
  if (p.ell() != q.ell()) throw std::invalid_argument("box product of polyvectors with different ell");
  const int ell = p.ell();
  const int h = p.degree();
  const int qd = q.degree();
  const int k = h + qd;
  // Anything landing below degree -1 is zero; the -2 slot is a pure zero.
  if (h == -2 || qd == -2) return PolyVector(ell, std::max(k, -2));
  if (h == -1) return PolyVector(ell, k);

  const int nraw = k + 1;
  const auto shuffles = subsets(k + 1, qd + 1);
  PolyVector out(ell, k);
  std::vector<LambdaPoly> raw(out.size(), LambdaPoly(nraw));

  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const auto index = out.unflatten(flat);
    for (const auto& a : shuffles) {
      std::vector<int> b;
      for (int s = 0, t = 0; s <= k; ++s) {
        if (t < static_cast<int>(a.size()) && a[static_cast<std::size_t>(t)] == s)
          ++t;
        else
          b.push_back(s);
      }
      std::vector<int> seq = a;
      seq.insert(seq.end(), b.begin(), b.end());
      const Rational sign = permutation_sign(seq);

      std::vector<int> q_index;
      for (int s : a) q_index.push_back(index[static_cast<std::size_t>(s)]);
      std::vector<int> p_index(1, 0);
      for (int s : b) p_index.push_back(index[static_cast<std::size_t>(s)]);

      // Q's variables go to lambda_A; its last (eliminated) slot carries none.
      const std::vector<int> q_map(a.begin(), a.begin() + q.nvars());
      const LambdaPoly q_entry =
          qd == -1 ? LambdaPoly::constant(nraw, DiffPoly{}) : remap(q.entry(q_index), nraw, q_map);

      for (int j = 0; j < ell; ++j) {
        p_index[0] = j;
        const LambdaPoly& p_entry = p.entry(p_index);
        if (p_entry.is_zero()) continue;

        // R = sum_n (-lambda_A - d)^n dQ/du_j^(n); for degree -1, delta q / delta u_j.
        LambdaPoly right(nraw);
        if (qd == -1) {
          right = LambdaPoly::constant(nraw, variational_derivative(q.density(), ell)[static_cast<std::size_t>(j)]);
        } else {
          const int top = q_entry.coefficient_order();
          for (int n = 0; n <= top; ++n) {
            LambdaPoly part = partial_derivative(q_entry, DiffVar{j + 1, n});
            if (part.is_zero()) continue;
            part = shifted_power_apply(a, n, part);
            if (n % 2 == 1) part *= Rational(-1);
            right += part;
          }
        }
        if (right.is_zero()) continue;

        // P_{j, i_B}(lambda_A + d, lambda_B) with d moved to the right.
        std::map<int, LambdaPoly> shifted;
        for (const auto& [e, c] : p_entry.terms()) {
          const int a0 = h == 0 ? 0 : e[0];
          auto it = shifted.find(a0);
          if (it == shifted.end()) it = shifted.emplace(a0, shifted_power_apply(a, a0, right)).first;
          LambdaPoly::Exponents lam(static_cast<std::size_t>(nraw), 0);
          for (int t = 1; t < h; ++t) lam[static_cast<std::size_t>(b[static_cast<std::size_t>(t - 1)])] = e[static_cast<std::size_t>(t)];
          LambdaPoly contrib = LambdaPoly::term(lam, c) * it->second;
          contrib *= sign;
          raw[flat] += contrib;
        }
      }
    }
  }
  return normalize(ell, k, raw);
}

PolyVector schouten(const PolyVector& p, const PolyVector& q) {
  PolyVector out = box_product(p, q);
  PolyVector back = box_product(q, p);
  if ((p.degree() * q.degree()) % 2 == 0)
    out -= back;
  else
    out += back;
  return out;
}

LambdaPoly lambda_bracket(const MatDiffOp& h, const DiffPoly& f, const DiffPoly& g) {
  if (!h.is_square()) throw std::invalid_argument("lambda bracket requires a square operator");
  const int ell = static_cast<int>(h.rows());
  if (f.max_index() > ell || g.max_index() > ell)
    throw std::invalid_argument("polynomial mentions a variable beyond ell");
  const int var[1] = {0};
  LambdaPoly out(1);
  for (int i = 0; i < ell; ++i) {
    // (-lambda - d)^m df/du_i^(m), summed over m.
    LambdaPoly inner(1);
    for (int m = 0; m <= f.order(); ++m) {
      const DiffPoly part = partial_derivative(f, DiffVar{i + 1, m});
      if (part.is_zero()) continue;
      LambdaPoly t = shifted_power_apply(var, m, LambdaPoly::constant(1, part));
      if (m % 2 == 1) t *= Rational(-1);
      inner += t;
    }
    if (inner.is_zero()) continue;
    for (int j = 0; j < ell; ++j) {
      const OpPoly& hji = h(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
      LambdaPoly mid(1);
      for (const auto& [p, c] : hji.coeffs()) mid += c * shifted_power_apply(var, p, inner);
      if (mid.is_zero()) continue;
      for (int n = 0; n <= g.order(); ++n) {
        const DiffPoly dg = partial_derivative(g, DiffVar{j + 1, n});
        if (dg.is_zero()) continue;
        out += dg * shifted_power_apply(var, n, mid);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closed formulas

PolyVector bracket_k_functional(const PolyVector& q, const DiffPoly& h) {
  const int ell = q.ell();
  const int d = q.degree();
  if (d < 0) throw std::invalid_argument("bracket_k_functional requires degree >= 0");
  const auto dh = variational_derivative(h, ell);
  if (d == 0) {
    DiffPoly acc;
    for (int j = 0; j < ell; ++j) {
      const int idx[1] = {j};
      acc += q.entry(idx).constant_coefficient() * dh[static_cast<std::size_t>(j)];
    }
    return PolyVector::functional(ell, acc);
  }
  const int k = d - 1;
  PolyVector out(ell, k);
  std::vector<int> qi(static_cast<std::size_t>(d + 1));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const auto index = out.unflatten(flat);
    std::copy(index.begin(), index.end(), qi.begin() + 1);
    LambdaPoly acc(k);
    for (int j = 0; j < ell; ++j) {
      qi[0] = j;
      for (const auto& [e, c] : q.entry(qi).terms()) {
        LambdaPoly::Exponents lam(e.begin() + 1, e.end());
        acc.add_term(lam, c * total_derivative(dh[static_cast<std::size_t>(j)], e[0]));
      }
    }
    out.at(flat) = std::move(acc);
  }
  return out;
}

LocalFunctional bracket_vf_functional(std::span<const DiffPoly> q, const DiffPoly& h) {
  const auto dh = variational_derivative(h, static_cast<int>(q.size()));
  DiffPoly acc;
  for (std::size_t j = 0; j < q.size(); ++j) acc += q[j] * dh[j];
  return LocalFunctional(acc);
}

std::vector<DiffPoly> bracket_op_functional(const MatDiffOp& h, const DiffPoly& density) {
  if (!h.is_square()) throw std::invalid_argument("operator must be square");
  return vpc::apply(h, variational_derivative(density, static_cast<int>(h.rows())));
}

MatDiffOp bracket_vf_op(std::span<const DiffPoly> p, const MatDiffOp& h) {
  if (!h.is_square() || h.rows() != p.size())
    throw std::invalid_argument("characteristic and operator sizes disagree");
  const int ell = static_cast<int>(p.size());
  MatDiffOp xh(h.rows(), h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      for (const auto& [m, c] : h(i, j).coeffs()) xh(i, j).add_term(m, evolutionary_apply(p, c));
  const MatDiffOp dp = frechet(p, ell);
  return xh - compose(dp, h) - compose(h, adjoint(dp));
}

namespace {

// One cyclic half of the [K,H] formula: derivatives of b's coefficients
// against a's symbol.
std::vector<LambdaPoly> cyclic_half(const MatDiffOp& a, const MatDiffOp& b) {
  const int ell = static_cast<int>(a.rows());
  PolyVector shape(ell, 2);
  std::vector<LambdaPoly> raw(shape.size(), LambdaPoly(3));
  const int top = [&] {
    int n = 0;
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        for (const auto& t : b(i, j).coeffs()) n = std::max(n, t.second.order());
    return n;
  }();
  // Powers (lambda_v + d)^n a_{j,i}(lambda_v), cached by (v, j, i, n).
  std::map<std::tuple<int, int, int, int>, LambdaPoly> cache;
  auto shifted = [&](int v, int j, int i, int n) -> const LambdaPoly& {
    auto key = std::make_tuple(v, j, i, n);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const int vars[1] = {v};
      LambdaPoly sym = symbol(a(static_cast<std::size_t>(j), static_cast<std::size_t>(i)), 3, v);
      it = cache.emplace(key, shifted_power_apply(vars, n, sym)).first;
    }
    return it->second;
  };
  for (std::size_t flat = 0; flat < shape.size(); ++flat) {
    const auto idx = shape.unflatten(flat);
    // (first, second) index pair of b, its lambda variable, and the slot fed to a.
    const int pattern[3][4] = {{idx[0], idx[1], 1, 2}, {idx[1], idx[2], 2, 0}, {idx[2], idx[0], 0, 1}};
    for (const auto& pat : pattern) {
      const LambdaPoly sym_b =
          symbol(b(static_cast<std::size_t>(pat[0]), static_cast<std::size_t>(pat[1])), 3, pat[2]);
      const int slot = pat[3];
      for (int j = 0; j < ell; ++j)
        for (int n = 0; n <= top; ++n) {
          LambdaPoly db = partial_derivative(sym_b, DiffVar{j + 1, n});
          if (db.is_zero()) continue;
          raw[flat] += db * shifted(slot, j, idx[static_cast<std::size_t>(slot)], n);
        }
    }
  }
  return raw;
}

}  // namespace

PolyVector triple_bracket(const MatDiffOp& k, const MatDiffOp& h) {
  if (!k.is_square() || !h.is_square() || k.rows() != h.rows() || k.rows() == 0)
    throw std::invalid_argument("operators must be square of the same size");
  const int ell = static_cast<int>(k.rows());
  auto raw = cyclic_half(k, h);
  const auto other = cyclic_half(h, k);
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] += other[i];
  return normalize(ell, 2, raw);
}

bool transitivity_probe(const PolyVector& p) {
  if (p.degree() < 0) throw std::invalid_argument("transitivity probe requires degree >= 0");
  const int top = p.coefficient_order() + std::max(p.lambda_degree(), 0) + 1;
  for (int j = 1; j <= p.ell(); ++j)
    for (int m = 0; m <= top; ++m) {
      const Rational c = Rational(m % 2 == 0 ? 1 : -1) / 2;
      const DiffPoly probe = c * DiffPoly::var(j, m).pow(2);
      if (!bracket_k_functional(p, probe).is_zero()) return false;
    }
  return true;
}

}  // namespace vpc
