#include "vpc/lambda_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace vpc {

LambdaPoly LambdaPoly::constant(int nvars, const DiffPoly& c) {
  LambdaPoly p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

LambdaPoly LambdaPoly::variable(int nvars, int which) {
  if (which < 0 || which >= nvars) throw std::out_of_range("lambda variable out of range");
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(which)] = 1;
  LambdaPoly p(nvars);
  p.add_term(e, DiffPoly(1));
  return p;
}

LambdaPoly LambdaPoly::term(const Exponents& e, const DiffPoly& c) {
  LambdaPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

int LambdaPoly::degree_in(int var) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.first[static_cast<std::size_t>(var)]);
  return d;
}

int LambdaPoly::coefficient_order() const {
  int n = 0;
  for (const auto& t : terms_) n = std::max(n, t.second.order());
  return n;
}

DiffPoly LambdaPoly::constant_coefficient() const {
  auto it = terms_.find(Exponents(static_cast<std::size_t>(nvars_), 0));
  return it == terms_.end() ? DiffPoly{} : it->second;
}

void LambdaPoly::add_term(const Exponents& e, const DiffPoly& c) {
  if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("lambda exponent arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LambdaPoly& LambdaPoly::operator+=(const LambdaPoly& other) {
  if (other.nvars_ != nvars_) throw std::invalid_argument("lambda arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LambdaPoly& LambdaPoly::operator-=(const LambdaPoly& other) {
  if (other.nvars_ != nvars_) throw std::invalid_argument("lambda arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LambdaPoly& LambdaPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= s;
  }
  return *this;
}

LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("lambda arity mismatch");
  LambdaPoly out(a.nvars_);
  LambdaPoly::Exponents e(static_cast<std::size_t>(a.nvars_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

LambdaPoly operator*(const DiffPoly& c, const LambdaPoly& a) {
  LambdaPoly out(a.nvars_);
  if (c.is_zero()) return out;
  for (const auto& [e, q] : a.terms_) out.add_term(e, c * q);
  return out;
}

LambdaPoly total_derivative(const LambdaPoly& p) {
  LambdaPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) out.add_term(e, total_derivative(c));
  return out;
}

LambdaPoly total_derivative(const LambdaPoly& p, int times) {
  LambdaPoly out = p;
  for (int t = 0; t < times && !out.is_zero(); ++t) out = total_derivative(out);
  return out;
}

LambdaPoly partial_derivative(const LambdaPoly& p, DiffVar v) {
  LambdaPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) out.add_term(e, partial_derivative(c, v));
  return out;
}

LambdaPoly apply_evolutionary(std::span<const DiffPoly> characteristic, const LambdaPoly& p) {
  LambdaPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) out.add_term(e, evolutionary_apply(characteristic, c));
  return out;
}

LambdaPoly linear_power(int nvars, std::span<const int> vars, int e) {
  LambdaPoly base(nvars);
  for (int v : vars) base += LambdaPoly::variable(nvars, v);
  LambdaPoly out = LambdaPoly::constant(nvars, DiffPoly(1));
  for (int i = 0; i < e; ++i) out = out * base;
  return out;
}

// sum_r C(a,r) Lambda^(a-r) d^r p
LambdaPoly shifted_power_apply(std::span<const int> vars, int a, const LambdaPoly& p) {
  const int nvars = p.nvars();
  LambdaPoly out(nvars);
  if (p.is_zero()) return out;
  if (vars.empty()) return total_derivative(p, a);
  LambdaPoly base(nvars);
  for (int v : vars) base += LambdaPoly::variable(nvars, v);
  std::vector<LambdaPoly> powers{LambdaPoly::constant(nvars, DiffPoly(1))};
  for (int i = 1; i <= a; ++i) powers.push_back(powers.back() * base);
  LambdaPoly deriv = p;
  for (int r = 0; r <= a && !deriv.is_zero(); ++r) {
    LambdaPoly piece = powers[static_cast<std::size_t>(a - r)] * deriv;
    piece *= binomial(a, r);
    out += piece;
    deriv = total_derivative(deriv);
  }
  return out;
}

LambdaPoly remap(const LambdaPoly& p, int target_nvars, std::span<const int> map) {
  if (static_cast<int>(map.size()) != p.nvars()) throw std::invalid_argument("remap: wrong map size");
  LambdaPoly out(target_nvars);
  LambdaPoly::Exponents e(static_cast<std::size_t>(target_nvars));
  for (const auto& [src, c] : p.terms()) {
    std::fill(e.begin(), e.end(), 0);
    for (std::size_t i = 0; i < map.size(); ++i) e[static_cast<std::size_t>(map[i])] += src[i];
    out.add_term(e, c);
  }
  return out;
}

LambdaPoly eliminate_last(const LambdaPoly& raw) {
  const int n = raw.nvars();
  if (n < 1) throw std::invalid_argument("eliminate_last: no variable to eliminate");
  std::vector<int> rest(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) rest[static_cast<std::size_t>(i)] = i;

  // Group terms by the exponent of the eliminated variable.
  std::map<int, LambdaPoly> by_power;
  for (const auto& [e, c] : raw.terms()) {
    LambdaPoly::Exponents head(e.begin(), e.end() - 1);
    auto [it, _] = by_power.try_emplace(e.back(), LambdaPoly(n - 1));
    it->second.add_term(head, c);
  }
  LambdaPoly out(n - 1);
  for (const auto& [power, part] : by_power) {
    LambdaPoly piece = shifted_power_apply(rest, power, part);
    if (power % 2 == 1) piece *= Rational(-1);
    out += piece;
  }
  return out;
}

}  // namespace vpc
