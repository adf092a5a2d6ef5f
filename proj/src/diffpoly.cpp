#include "vpc/diffpoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "vpc/linalg.hpp"

namespace vpc {

DiffVar make_var(int index, int order) {
  if (index < 1) throw std::invalid_argument("variable index must be >= 1, got " + std::to_string(index));
  if (order < 0) throw std::invalid_argument("derivative order must be >= 0, got " + std::to_string(order));
  return DiffVar{index, order};
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(DiffVar v, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  if (exponent > 0) factors_.emplace_back(v, exponent);
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == v)
      m.factors_.back().second += e;
    else
      m.factors_.emplace_back(v, e);
  }
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

int Monomial::weight() const {
  int w = 0;
  for (const auto& [v, e] : factors_) w += v.order * e;
  return w;
}

int Monomial::max_order() const { return factors_.empty() ? 0 : factors_.back().first.order; }

int Monomial::max_index() const {
  int m = 0;
  for (const auto& f : factors_) m = std::max(m, f.first.index);
  return m;
}

int Monomial::exponent(DiffVar v) const {
  for (const auto& [w, e] : factors_)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::divide(DiffVar v) const {
  Monomial out = *this;
  for (auto it = out.factors_.begin(); it != out.factors_.end(); ++it) {
    if (it->first == v) {
      if (--it->second == 0) out.factors_.erase(it);
      return out;
    }
  }
  throw std::logic_error("Monomial::divide: variable does not divide monomial");
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  auto& f = out.factors_;
  f.reserve(a.factors_.size() + b.factors_.size());
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (ia != a.factors_.end() && ib != b.factors_.end()) {
    if (ia->first < ib->first) {
      f.push_back(*ia++);
    } else if (ib->first < ia->first) {
      f.push_back(*ib++);
    } else {
      f.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  f.insert(f.end(), ia, a.factors_.end());
  f.insert(f.end(), ib, b.factors_.end());
  return out;
}

// ---------------------------------------------------------------------------
// DiffPoly

DiffPoly::DiffPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

DiffPoly DiffPoly::var(int index, int order) { return term(Monomial(make_var(index, order))); }

DiffPoly DiffPoly::term(const Monomial& m, const Rational& c) {
  DiffPoly p;
  p.add_term(m, c);
  return p;
}

bool DiffPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational DiffPoly::constant_term() const { return coefficient(Monomial{}); }

Rational DiffPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int DiffPoly::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.degree());
  return d;
}

int DiffPoly::order() const {
  int n = 0;
  for (const auto& t : terms_) n = std::max(n, t.first.max_order());
  return n;
}

int DiffPoly::max_index() const {
  int i = 0;
  for (const auto& t : terms_) i = std::max(i, t.first.max_index());
  return i;
}

void DiffPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

DiffPoly& DiffPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= s;
  }
  return *this;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& other) {
  *this = *this * other;
  return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

DiffPoly DiffPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power of a differential polynomial");
  DiffPoly result(1);
  DiffPoly base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Derivations

DiffPoly total_derivative(const DiffPoly& f) {
  DiffPoly out;
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [v, e] : m.factors()) {
      Monomial raised = m.divide(v) * Monomial(DiffVar{v.index, v.order + 1});
      out.add_term(raised, c * e);
    }
  }
  return out;
}

DiffPoly total_derivative(const DiffPoly& f, int times) {
  DiffPoly out = f;
  for (int t = 0; t < times && !out.is_zero(); ++t) out = total_derivative(out);
  return out;
}

DiffPoly partial_derivative(const DiffPoly& f, DiffVar v) {
  DiffPoly out;
  for (const auto& [m, c] : f.terms()) {
    const int e = m.exponent(v);
    if (e > 0) out.add_term(m.divide(v), c * e);
  }
  return out;
}

std::vector<DiffPoly> variational_derivative(const DiffPoly& f, int ell) {
  if (ell < 1) throw std::invalid_argument("number of dependent variables must be >= 1");
  if (f.max_index() > ell)
    throw std::invalid_argument("polynomial mentions u" + std::to_string(f.max_index()) +
                                " but only " + std::to_string(ell) + " variables exist");
  std::vector<DiffPoly> out(static_cast<std::size_t>(ell));
  const int top = f.order();
  for (int i = 1; i <= ell; ++i) {
    DiffPoly acc;
    // Horner form of sum_n (-d)^n p_n.
    for (int n = top; n >= 0; --n) {
      acc = -total_derivative(acc);
      acc += partial_derivative(f, DiffVar{i, n});
    }
    out[static_cast<std::size_t>(i - 1)] = std::move(acc);
  }
  return out;
}

DiffPoly evolutionary_apply(std::span<const DiffPoly> characteristic, const DiffPoly& f) {
  if (f.max_index() > static_cast<int>(characteristic.size()))
    throw std::invalid_argument("characteristic has fewer components than variables in f");
  DiffPoly out;
  const int top = f.order();
  for (std::size_t i = 0; i < characteristic.size(); ++i) {
    DiffPoly dp = characteristic[i];
    for (int n = 0; n <= top; ++n) {
      DiffPoly partial = partial_derivative(f, DiffVar{static_cast<int>(i) + 1, n});
      if (!partial.is_zero()) out += dp * partial;
      dp = total_derivative(dp);
    }
  }
  return out;
}

bool is_total_derivative(const DiffPoly& f) {
  if (f.is_zero()) return true;
  if (f.constant_term() != 0) return false;
  const int ell = std::max(1, f.max_index());
  for (const auto& component : variational_derivative(f, ell))
    if (!component.is_zero()) return false;
  return true;
}

bool functional_equal(const LocalFunctional& a, const LocalFunctional& b) { return a == b; }

std::vector<Monomial> enumerate_monomials(int ell, int degree, int weight, int max_order) {
  std::vector<DiffVar> vars;
  for (int n = 0; n <= max_order; ++n)
    for (int i = 1; i <= ell; ++i) vars.push_back(DiffVar{i, n});
  std::vector<Monomial> out;
  std::vector<Monomial::Factor> chosen;
  // Depth-first over the variable list, choosing an exponent for each.
  auto rec = [&](auto&& self, std::size_t pos, int deg_left, int weight_left) -> void {
    if (deg_left == 0) {
      if (weight_left == 0) out.push_back(Monomial::from_factors(chosen));
      return;
    }
    if (pos == vars.size()) return;
    const DiffVar v = vars[pos];
    for (int e = 0; e <= deg_left; ++e) {
      if (v.order * e > weight_left) break;
      if (e > 0) chosen.emplace_back(v, e);
      self(self, pos + 1, deg_left - e, weight_left - v.order * e);
      if (e > 0) chosen.pop_back();
    }
  };
  if (degree >= 0 && weight >= 0) rec(rec, 0, degree, weight);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<DiffPoly> antiderivative(const DiffPoly& f) {
  if (f.is_zero()) return DiffPoly{};
  if (!is_total_derivative(f)) return std::nullopt;

  // d preserves degree and raises weight by one, so each (degree, weight)
  // component of f has a preimage of weight one less.
  std::map<std::pair<int, int>, DiffPoly> graded;
  for (const auto& [m, c] : f.terms()) graded[{m.degree(), m.weight()}].add_term(m, c);

  const int ell = f.max_index();
  const int max_order = std::max(f.order() - 1, 0);
  DiffPoly result;
  for (const auto& [key, part] : graded) {
    const auto [deg, weight] = key;
    if (weight == 0) throw std::logic_error("antiderivative: weight-0 term in an exact polynomial");
    const auto unknowns = enumerate_monomials(ell, deg, weight - 1, max_order);
    std::vector<DiffPoly> images;
    std::map<Monomial, std::size_t> row_of;
    for (const auto& m : unknowns) {
      images.push_back(total_derivative(DiffPoly::term(m)));
      for (const auto& t : images.back().terms()) row_of.try_emplace(t.first, 0);
    }
    for (const auto& t : part.terms()) row_of.try_emplace(t.first, 0);
    std::size_t r = 0;
    for (auto& entry : row_of) entry.second = r++;

    linalg::Matrix a(row_of.size(), unknowns.size());
    for (std::size_t c = 0; c < unknowns.size(); ++c)
      for (const auto& [m, q] : images[c].terms()) a(row_of.at(m), c) = q;
    linalg::Vector b(row_of.size());
    for (const auto& [m, q] : part.terms()) b[row_of.at(m)] = q;

    auto x = linalg::solve(a, b);
    if (!x) throw std::logic_error("antiderivative: exact polynomial has no preimage in the search space");
    for (std::size_t c = 0; c < unknowns.size(); ++c) result.add_term(unknowns[c], (*x)[c]);
  }
  return result;
}

}  // namespace vpc
