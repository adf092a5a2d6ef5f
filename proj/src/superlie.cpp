#include "vpc/superlie.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace vpc {

namespace {

void check_n(int n) {
  if (n < 0 || n > 30) throw std::invalid_argument("number of Grassmann generators out of range");
}

void check_same(const GrassmannElem& a, const GrassmannElem& b) {
  if (a.n() != b.n()) throw std::invalid_argument("Grassmann elements over different generator counts");
}

void require_symmetric(const linalg::Matrix& s) {
  if (!s.is_square()) throw std::invalid_argument("S must be square");
  if (!s.is_symmetric()) throw std::invalid_argument("S must be symmetric");
}

Rational sign_of(int count) { return Rational(count % 2 == 0 ? 1 : -1); }

// Coordinates of a homogeneous element over the given monomials.
linalg::Vector grassmann_coords(const GrassmannElem& f, const std::vector<GrassmannMask>& basis) {
  linalg::Vector v(basis.size());
  for (const auto& [m, c] : f.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || *it != m) throw std::logic_error("monomial outside the expected degree");
    v[static_cast<std::size_t>(it - basis.begin())] = c;
  }
  return v;
}

GrassmannElem from_coords(int n, const std::vector<GrassmannMask>& basis, const linalg::Vector& v) {
  GrassmannElem f(n);
  for (std::size_t i = 0; i < basis.size(); ++i) f.add_term(basis[i], v[i]);
  return f;
}

// Independent rows of the given vectors, in reduced echelon form.
std::vector<linalg::Vector> row_space(const std::vector<linalg::Vector>& rows, std::size_t width) {
  if (rows.empty()) return {};
  linalg::Matrix m(rows.size(), width);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < width; ++c) m(r, c) = rows[r][c];
  const auto e = linalg::row_reduce(m);
  std::vector<linalg::Vector> out;
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
    linalg::Vector v(width);
    for (std::size_t c = 0; c < width; ++c) v[c] = e.reduced(r, c);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Lambda(n)

GrassmannElem::GrassmannElem(int n) : n_(n) { check_n(n); }

GrassmannElem GrassmannElem::scalar(int n, const Rational& c) { return monomial(n, 0, c); }

GrassmannElem GrassmannElem::generator(int n, int i) {
  if (i < 0 || i >= n) throw std::out_of_range("Grassmann generator out of range");
  return monomial(n, GrassmannMask{1} << i);
}

GrassmannElem GrassmannElem::monomial(int n, GrassmannMask mask, const Rational& c) {
  GrassmannElem f(n);
  if (n < 32 && (mask >> n) != 0) throw std::out_of_range("monomial mentions a missing generator");
  f.add_term(mask, c);
  return f;
}

Rational GrassmannElem::coefficient(GrassmannMask mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? Rational(0) : it->second;
}

void GrassmannElem::add_term(GrassmannMask mask, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(mask, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::optional<int> GrassmannElem::parity() const {
  std::optional<int> p;
  for (const auto& t : terms_) {
    const int q = mask_size(t.first) % 2;
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p;
}

std::optional<int> GrassmannElem::degree() const {
  std::optional<int> d;
  for (const auto& t : terms_) {
    const int q = mask_size(t.first) - 2;
    if (d && *d != q) return std::nullopt;
    d = q;
  }
  return d;
}

std::pair<GrassmannElem, GrassmannElem> GrassmannElem::split_parity() const {
  GrassmannElem even(n_), odd(n_);
  for (const auto& [m, c] : terms_) (mask_size(m) % 2 == 0 ? even : odd).add_term(m, c);
  return {even, odd};
}

GrassmannElem& GrassmannElem::operator+=(const GrassmannElem& other) {
  check_same(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

GrassmannElem& GrassmannElem::operator-=(const GrassmannElem& other) {
  check_same(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

GrassmannElem& GrassmannElem::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= s;
  }
  return *this;
}

GrassmannElem grassmann_mul(const GrassmannElem& a, const GrassmannElem& b) {
  check_same(a, b);
  GrassmannElem out(a.n());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      // Count pairs (i in a, j in b) with i > j: each is one transposition.
      int swaps = 0;
      for (GrassmannMask rest = mb; rest; rest &= rest - 1) {
        const int j = __builtin_ctz(rest);
        swaps += mask_size(ma >> (j + 1));
      }
      out.add_term(ma | mb, sign_of(swaps) * ca * cb);
    }
  return out;
}

GrassmannElem left_derivative(const GrassmannElem& f, int i) {
  if (i < 0 || i >= f.n()) throw std::out_of_range("Grassmann generator out of range");
  const GrassmannMask bit = GrassmannMask{1} << i;
  GrassmannElem out(f.n());
  for (const auto& [m, c] : f.terms())
    if (m & bit) out.add_term(m & ~bit, sign_of(mask_size(m & (bit - 1))) * c);
  return out;
}

GrassmannElem poisson_bracket_S(const linalg::Matrix& s, const GrassmannElem& f, const GrassmannElem& g) {
  require_symmetric(s);
  check_same(f, g);
  const int n = f.n();
  if (static_cast<int>(s.rows()) != n) throw std::invalid_argument("S size does not match generator count");
  std::vector<GrassmannElem> dg;
  for (int j = 0; j < n; ++j) dg.push_back(left_derivative(g, j));
  GrassmannElem out(n);
  const auto [even, odd] = f.split_parity();
  for (const auto& [part, p] : {std::pair{even, 0}, std::pair{odd, 1}}) {
    if (part.is_zero()) continue;
    for (int i = 0; i < n; ++i) {
      const GrassmannElem df = left_derivative(part, i);
      if (df.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        const Rational& sij = s(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        if (sij == 0 || dg[static_cast<std::size_t>(j)].is_zero()) continue;
        out += (sign_of(p + 1) * sij) * grassmann_mul(df, dg[static_cast<std::size_t>(j)]);
      }
    }
  }
  return out;
}

GrassmannElem htilde_bracket(const linalg::Matrix& s, const GrassmannElem& f, const GrassmannElem& g) {
  GrassmannElem out = poisson_bracket_S(s, f, g);
  out.add_term(0, -out.coefficient(0));
  return out;
}

std::vector<GrassmannMask> masks_of_size(int n, int size) {
  check_n(n);
  std::vector<GrassmannMask> out;
  if (size < 0 || size > n) return out;
  const GrassmannMask limit = GrassmannMask{1} << n;
  for (GrassmannMask m = 0; m < limit; ++m)
    if (mask_size(m) == size) out.push_back(m);
  return out;
}

std::vector<GrassmannMask> htilde_basis(int n, int degree) {
  if (degree < -1) return {};
  return masks_of_size(n, degree + 2);
}

std::vector<std::size_t> htilde_dims(int n) {
  std::vector<std::size_t> out;
  for (int k = -1; k <= n - 2; ++k) out.push_back(htilde_basis(n, k).size());
  return out;
}

// ---------------------------------------------------------------------------
// so(n,S)

std::vector<linalg::Matrix> so_basis(const linalg::Matrix& s) {
  require_symmetric(s);
  const std::size_t n = s.rows();
  // Unknown a_{rc} at r * n + c. Rows: (A^T S + S A)_{pq} = sum_r a_{rp} s_{rq} + s_{pr} a_{rq}, then trace.
  linalg::Matrix sys(n * n + 1, n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r) {
        sys(p * n + q, r * n + p) += s(r, q);
        sys(p * n + q, r * n + q) += s(p, r);
      }
  for (std::size_t r = 0; r < n; ++r) sys(n * n, r * n + r) = 1;
  std::vector<linalg::Matrix> out;
  for (const auto& v : linalg::nullspace(sys)) {
    linalg::Matrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) = v[r * n + c];
    out.push_back(std::move(a));
  }
  return out;
}

bool vA_map_bijective(const linalg::Matrix& s) {
  require_symmetric(s);
  const std::size_t n = s.rows();
  // Images of the skew basis (E_ij - E_ji)/2, i < j, under A -> A S, as rows.
  std::vector<linalg::Vector> images;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      linalg::Matrix a(n, n);
      a(i, j) = Rational(1, 2);
      a(j, i) = Rational(-1, 2);
      const linalg::Matrix as = a * s;
      linalg::Vector v(n * n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) v[r * n + c] = as(r, c);
      images.push_back(std::move(v));
    }
  const std::size_t skew_dim = images.size();
  const bool injective = row_space(images, n * n).size() == skew_dim;
  // The image lies in so(n,S) when it is traceless; surjectivity is a dimension count.
  return injective && so_basis(s).size() == skew_dim;
}

// ---------------------------------------------------------------------------
// W(n)

SuperDerivation::SuperDerivation(int n) : coeffs_(static_cast<std::size_t>(n), GrassmannElem(n)) { check_n(n); }

SuperDerivation SuperDerivation::partial(int n, int j) {
  SuperDerivation x(n);
  x.coefficient(j) = GrassmannElem::scalar(n, Rational(1));
  return x;
}

bool SuperDerivation::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const GrassmannElem& f) { return f.is_zero(); });
}

std::optional<int> SuperDerivation::parity() const {
  std::optional<int> p;
  for (const auto& f : coeffs_) {
    if (f.is_zero()) continue;
    const auto q = f.parity();
    if (!q) return std::nullopt;
    if (p && *p != (*q + 1) % 2) return std::nullopt;
    p = (*q + 1) % 2;
  }
  return p;
}

GrassmannElem SuperDerivation::apply(const GrassmannElem& f) const {
  GrassmannElem out(n());
  for (int j = 0; j < n(); ++j) {
    if (coeffs_[static_cast<std::size_t>(j)].is_zero()) continue;
    out += grassmann_mul(coeffs_[static_cast<std::size_t>(j)], left_derivative(f, j));
  }
  return out;
}

linalg::Vector SuperDerivation::coordinates(int size) const {
  const auto masks = masks_of_size(n(), size);
  linalg::Vector v;
  v.reserve(masks.size() * coeffs_.size());
  for (const auto& f : coeffs_) {
    const auto part = grassmann_coords(f, masks);
    v.insert(v.end(), part.begin(), part.end());
  }
  return v;
}

SuperDerivation SuperDerivation::from_coordinates(int n, int size, const linalg::Vector& coords) {
  const auto masks = masks_of_size(n, size);
  if (coords.size() != masks.size() * static_cast<std::size_t>(n)) throw std::invalid_argument("coordinate length mismatch");
  SuperDerivation x(n);
  for (int j = 0; j < n; ++j)
    for (std::size_t t = 0; t < masks.size(); ++t)
      x.coefficient(j).add_term(masks[t], coords[static_cast<std::size_t>(j) * masks.size() + t]);
  return x;
}

SuperDerivation& SuperDerivation::operator+=(const SuperDerivation& other) {
  if (other.n() != n()) throw std::invalid_argument("derivations over different generator counts");
  for (int j = 0; j < n(); ++j) coeffs_[static_cast<std::size_t>(j)] += other.coeffs_[static_cast<std::size_t>(j)];
  return *this;
}

SuperDerivation& SuperDerivation::operator*=(const Rational& s) {
  for (auto& f : coeffs_) f *= s;
  return *this;
}

SuperDerivation w_bracket(const SuperDerivation& x, const SuperDerivation& y) {
  if (x.n() != y.n()) throw std::invalid_argument("derivations over different generator counts");
  const int n = x.n();
  auto split = [n](const SuperDerivation& d) {
    std::pair<SuperDerivation, SuperDerivation> parts{SuperDerivation(n), SuperDerivation(n)};
    for (int j = 0; j < n; ++j) {
      auto [even, odd] = d.coefficient(j).split_parity();
      parts.second.coefficient(j) = even;  // p(f) even -> odd derivation
      parts.first.coefficient(j) = odd;
    }
    return parts;  // {even derivation, odd derivation}
  };
  const auto [x0, x1] = split(x);
  const auto [y0, y1] = split(y);
  SuperDerivation out(n);
  for (const auto& [a, pa] : {std::pair{x0, 0}, std::pair{x1, 1}})
    for (const auto& [b, pb] : {std::pair{y0, 0}, std::pair{y1, 1}}) {
      if (a.is_zero() || b.is_zero()) continue;
      const Rational eps = sign_of(pa * pb);
      for (int j = 0; j < n; ++j) {
        GrassmannElem c = a.apply(b.coefficient(j));
        c -= eps * b.apply(a.coefficient(j));
        out.coefficient(j) += c;
      }
    }
  return out;
}

SuperDerivation phi_S_embed(const linalg::Matrix& s, const GrassmannElem& f) {
  require_symmetric(s);
  const int n = static_cast<int>(s.rows());
  if (n < 1 || f.n() != n) throw std::invalid_argument("phi_S: size mismatch");
  for (std::size_t i = 0; i < s.rows(); ++i)
    if (s(0, i) != 0) throw std::invalid_argument("phi_S: S must have a zero first row and column");
  if (linalg::rank(s) != s.rows() - 1) throw std::invalid_argument("phi_S: lower block of S must be nondegenerate");

  SuperDerivation out(n);
  GrassmannElem eta_free(n);
  for (const auto& [m, c] : f.terms()) {
    if (m & 1u) {
      // eta xi_rest = (-1)^{|rest|} xi_rest eta
      const GrassmannMask rest = m & ~GrassmannMask{1};
      out.coefficient(0).add_term(rest, sign_of(mask_size(rest)) * c);
    } else if (m != 0) {
      eta_free.add_term(m, c);
    }
  }
  const auto [even, odd] = eta_free.split_parity();
  for (const auto& [part, p] : {std::pair{even, 0}, std::pair{odd, 1}}) {
    if (part.is_zero()) continue;
    for (int i = 1; i < n; ++i) {
      const GrassmannElem df = left_derivative(part, i);
      if (df.is_zero()) continue;
      for (int j = 1; j < n; ++j) {
        const Rational& sij = s(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        if (sij != 0) out.coefficient(j) += (sign_of(p + 1) * sij) * df;
      }
    }
  }
  return out;
}

SuperDerivation gl_embed(const linalg::Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("gl element must be square");
  const int n = static_cast<int>(a.rows());
  SuperDerivation x(n);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      const Rational& v = a(static_cast<std::size_t>(b), static_cast<std::size_t>(c));
      if (v != 0) x.coefficient(b).add_term(GrassmannMask{1} << c, -v);
    }
  return x;
}

std::vector<ProlongationLevel> full_prolongation(int u_dim, const std::vector<linalg::Matrix>& g_basis, int k_max) {
  check_n(u_dim);
  if (u_dim < 1) throw std::invalid_argument("U must be nonzero");
  std::vector<ProlongationLevel> levels;
  ProlongationLevel minus{-1, {}};
  for (int j = 0; j < u_dim; ++j) minus.basis.push_back(SuperDerivation::partial(u_dim, j));
  levels.push_back(std::move(minus));
  if (k_max < 0) return levels;

  ProlongationLevel zero{0, {}};
  std::vector<linalg::Vector> rows;
  for (const auto& a : g_basis) {
    if (static_cast<int>(a.rows()) != u_dim || !a.is_square()) throw std::invalid_argument("g acts on a space of the wrong size");
    zero.basis.push_back(gl_embed(a));
    rows.push_back(zero.basis.back().coordinates(1));
  }
  if (row_space(rows, static_cast<std::size_t>(u_dim) * static_cast<std::size_t>(u_dim)).size() != g_basis.size())
    throw std::invalid_argument("action is not faithful");
  levels.push_back(std::move(zero));

  for (int k = 1; k <= k_max; ++k) {
    const auto& prev = levels.back().basis;
    ProlongationLevel level{k, {}};
    const auto masks = masks_of_size(u_dim, k + 1);
    const std::size_t nx = masks.size() * static_cast<std::size_t>(u_dim);
    if (nx == 0 || prev.empty()) {
      levels.push_back(std::move(level));
      continue;
    }
    const std::size_t block = masks_of_size(u_dim, k).size() * static_cast<std::size_t>(u_dim);
    const std::size_t nprev = prev.size();
    const std::size_t ncols = nx + static_cast<std::size_t>(u_dim) * nprev;
    linalg::Matrix sys(static_cast<std::size_t>(u_dim) * block, ncols);
    for (std::size_t t = 0; t < nx; ++t) {
      linalg::Vector unit(nx);
      unit[t] = 1;
      const auto x = SuperDerivation::from_coordinates(u_dim, k + 1, unit);
      for (int i = 0; i < u_dim; ++i) {
        const auto c = w_bracket(SuperDerivation::partial(u_dim, i), x).coordinates(k);
        for (std::size_t r = 0; r < block; ++r) sys(static_cast<std::size_t>(i) * block + r, t) = c[r];
      }
    }
    std::vector<linalg::Vector> prev_coords;
    for (const auto& b : prev) prev_coords.push_back(b.coordinates(k));
    for (int i = 0; i < u_dim; ++i)
      for (std::size_t m = 0; m < nprev; ++m)
        for (std::size_t r = 0; r < block; ++r)
          sys(static_cast<std::size_t>(i) * block + r, nx + static_cast<std::size_t>(i) * nprev + m) = -prev_coords[m][r];
    std::vector<linalg::Vector> projected;
    for (const auto& v : linalg::nullspace(sys)) projected.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(nx));
    for (const auto& v : row_space(projected, nx)) level.basis.push_back(SuperDerivation::from_coordinates(u_dim, k + 1, v));
    levels.push_back(std::move(level));
  }
  return levels;
}

// ---------------------------------------------------------------------------
// The translation-invariant algebra against H~(ell+1, S~)

std::optional<linalg::Vector> coordinates_in(const std::vector<PolyVector>& basis, const PolyVector& p) {
  using Key = std::tuple<std::size_t, LambdaPoly::Exponents, Monomial>;
  auto features = [](const PolyVector& x) {
    std::map<Key, Rational> f;
    if (x.degree() == -1) {
      const DiffPoly& d = x.density();
      f[{0, {}, Monomial()}] += d.constant_term();
      const auto dv = variational_derivative(d, x.ell());
      for (std::size_t j = 0; j < dv.size(); ++j)
        for (const auto& [m, c] : dv[j].terms()) f[{j + 1, {}, m}] += c;
    } else {
      for (std::size_t flat = 0; flat < x.size(); ++flat)
        for (const auto& [e, c] : x.at(flat).terms())
          for (const auto& [m, q] : c.terms()) f[{flat, e, m}] += q;
    }
    return f;
  };
  std::vector<std::map<Key, Rational>> cols;
  std::map<Key, std::size_t> rows;
  for (const auto& b : basis) {
    if (b.ell() != p.ell() || b.degree() != p.degree()) throw std::invalid_argument("basis shape mismatch");
    cols.push_back(features(b));
    for (const auto& kv : cols.back()) rows.emplace(kv.first, 0);
  }
  const auto target = features(p);
  for (const auto& kv : target)
    if (kv.second != 0 && !rows.contains(kv.first)) return std::nullopt;
  std::size_t r = 0;
  for (auto& kv : rows) kv.second = r++;
  linalg::Matrix m(rows.size(), basis.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [key, v] : cols[c]) m(rows.at(key), c) = v;
  linalg::Vector rhs(rows.size());
  for (const auto& [key, v] : target)
    if (v != 0) rhs[rows.at(key)] = v;
  auto sol = linalg::solve(m, rhs);
  if (!sol || m * *sol != rhs) return std::nullopt;
  return sol;
}

IsoReport iso_check_translation_case(const linalg::Matrix& s) {
  if (!s.is_square() || s.rows() == 0) throw std::invalid_argument("S must be square and nonempty");
  if (!s.is_symmetric()) throw std::invalid_argument("S must be symmetric");
  if (linalg::rank(s) != s.rows()) throw std::invalid_argument("S must be nondegenerate");
  const int ell = static_cast<int>(s.rows());
  const int n = ell + 1;
  linalg::Matrix st(s.rows() + 1, s.cols() + 1);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) st(i + 1, j + 1) = s(i, j);

  IsoReport report;
  std::vector<std::vector<PolyVector>> a;       // index k + 1
  std::vector<std::vector<GrassmannMask>> h;    // index k + 1
  for (int k = -1; k <= ell - 1; ++k) {
    a.push_back(translation_basis(s, k));
    h.push_back(htilde_basis(n, k));
    report.a_dims.push_back(a.back().size());
    report.htilde_dims.push_back(h.back().size());
  }
  if (report.a_dims != report.htilde_dims) return report;
  const int top = ell - 1;
  auto idx = [](int k) { return static_cast<std::size_t>(k + 1); };

  // Brackets in A with degree -1 elements, as coordinates: bracket_minus[k][x][c].
  auto a_coords = [&](int k, const PolyVector& p) -> std::optional<linalg::Vector> {
    if (k > top) {
      if (p.is_zero()) return linalg::Vector{};
      return std::nullopt;
    }
    return coordinates_in(a[idx(k)], p);
  };

  for (const Rational& eta_sign : {Rational(1), Rational(-1)})
    for (const Rational& xi_sign : {Rational(1), Rational(-1)}) {
      // phi[k]: columns are H~ coordinates of the images of A^k basis elements.
      std::vector<linalg::Matrix> phi;
      linalg::Matrix seed(h[0].size(), a[0].size());
      // A^{-1} basis: int 1, int u_1.., int u_ell; H~_{-1}: eta (bit 0), xi_j (bit j).
      seed(0, 0) = eta_sign;
      for (int j = 1; j <= ell; ++j) seed(static_cast<std::size_t>(j), static_cast<std::size_t>(j)) = xi_sign;
      phi.push_back(seed);
      auto image = [&](int k, std::size_t b) {
        linalg::Vector col(h[idx(k)].size());
        for (std::size_t r = 0; r < col.size(); ++r) col[r] = phi[idx(k)](r, b);
        return from_coords(n, h[idx(k)], col);
      };

      bool ok = true;
      for (int k = 0; k <= top && ok; ++k) {
        const std::size_t dk = h[idx(k)].size();
        const std::size_t dprev = h[idx(k - 1)].size();
        const std::size_t nminus = a[0].size();
        linalg::Matrix sys(nminus * dprev, dk);
        for (std::size_t c = 0; c < nminus; ++c) {
          const GrassmannElem phic = image(-1, c);
          for (std::size_t t = 0; t < dk; ++t) {
            const auto v = grassmann_coords(
                htilde_bracket(st, GrassmannElem::monomial(n, h[idx(k)][t]), phic), h[idx(k - 1)]);
            for (std::size_t r = 0; r < dprev; ++r) sys(c * dprev + r, t) = v[r];
          }
        }
        linalg::Matrix phik(dk, a[idx(k)].size());
        for (std::size_t b = 0; b < a[idx(k)].size() && ok; ++b) {
          linalg::Vector rhs(nminus * dprev);
          for (std::size_t c = 0; c < nminus; ++c) {
            const auto coords = a_coords(k - 1, schouten(a[idx(k)][b], a[0][c]));
            if (!coords) throw std::logic_error("bracket leaves the translation-invariant algebra");
            const linalg::Vector img = phi[idx(k - 1)] * *coords;
            for (std::size_t r = 0; r < dprev; ++r) rhs[c * dprev + r] = img[r];
          }
          const auto y = linalg::solve(sys, rhs);
          if (!y || sys * *y != rhs) {
            ok = false;
            break;
          }
          for (std::size_t r = 0; r < dk; ++r) phik(r, b) = (*y)[r];
        }
        if (ok) phi.push_back(std::move(phik));
      }
      if (!ok) continue;
      for (const auto& m : phi)
        if (linalg::rank(m) != m.rows()) ok = false;
      if (!ok) continue;

      // Full comparison of structure constants.
      for (int p = -1; p <= top && ok; ++p)
        for (int q = -1; q <= top && ok; ++q) {
          if (p + q < -1) continue;
          for (std::size_t x = 0; x < a[idx(p)].size() && ok; ++x)
            for (std::size_t y = 0; y < a[idx(q)].size() && ok; ++y) {
              const auto lhs = a_coords(p + q, schouten(a[idx(p)][x], a[idx(q)][y]));
              if (!lhs) throw std::logic_error("bracket leaves the translation-invariant algebra");
              const GrassmannElem rhs = htilde_bracket(st, image(p, x), image(q, y));
              if (p + q > top) {
                ok = rhs.is_zero();
                continue;
              }
              ok = phi[idx(p + q)] * *lhs == grassmann_coords(rhs, h[idx(p + q)]);
            }
        }
      if (ok) {
        report.isomorphic = true;
        return report;
      }
    }
  return report;
}

}  // namespace vpc
