#include "vpc/expr.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace vpc {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::invalid_argument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct DiffPolyAlgebra {
  using Value = DiffPoly;
  Value constant(const Rational& c) const { return DiffPoly(c); }
  Value variable(DiffVar v) const { return DiffPoly::var(v.index, v.order); }
  std::optional<Value> lambda(int) const { return std::nullopt; }
  std::optional<Value> d() const { return std::nullopt; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
};

struct LambdaAlgebra {
  using Value = LambdaPoly;
  int nvars;
  Value constant(const Rational& c) const { return LambdaPoly::constant(nvars, DiffPoly(c)); }
  Value variable(DiffVar v) const { return LambdaPoly::constant(nvars, DiffPoly::var(v.index, v.order)); }
  std::optional<Value> lambda(int s) const {
    if (s < 0 || s >= nvars) return std::nullopt;
    return LambdaPoly::variable(nvars, s);
  }
  std::optional<Value> d() const { return std::nullopt; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
};

struct OperatorAlgebra {
  using Value = OpPoly;
  Value constant(const Rational& c) const { return OpPoly(DiffPoly(c)); }
  Value variable(DiffVar v) const { return OpPoly(DiffPoly::var(v.index, v.order)); }
  std::optional<Value> lambda(int) const { return std::nullopt; }
  std::optional<Value> d() const { return OpPoly::d(1); }
  Value mul(const Value& a, const Value& b) const { return compose(a, b); }
};

template <typename Algebra>
class Parser {
 public:
  using Value = typename Algebra::Value;

  Parser(std::string_view text, int ell, Algebra alg) : text_(text), ell_(ell), alg_(std::move(alg)) {}

  Value parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    Value v = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected character '") + peek() + "'");
    return v;
  }

 private:
  Value expr() {
    skip_space();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      advance();
    }
    Value v = term();
    if (negate) v *= Rational(-1);
    while (true) {
      skip_space();
      if (peek() == '+') {
        advance();
        v += term();
      } else if (peek() == '-') {
        advance();
        v -= term();
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = factor();
    while (true) {
      skip_space();
      if (peek() != '*') return v;
      advance();
      v = alg_.mul(v, factor());
    }
  }

  Value factor() {
    Value base = atom();
    skip_space();
    if (peek() != '^') return base;
    advance();
    skip_space();
    const long e = uint_literal("exponent");
    if (e > 64) fail("exponent too large");
    Value out = alg_.constant(Rational(1));
    for (long i = 0; i < e; ++i) out = alg_.mul(out, base);
    return out;
  }

  Value atom() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      advance();
      Value v = expr();
      skip_space();
      if (peek() != ')') fail("expected ')'");
      advance();
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const mpz_class num = big_literal("number");
      Rational r(num);
      skip_space();
      // A '/' directly after an integer literal belongs to the rational.
      if (peek() == '/') {
        advance();
        skip_space();
        const mpz_class den = big_literal("denominator");
        if (den == 0) fail("zero denominator");
        r = Rational(num) / Rational(den);
      }
      return alg_.constant(r);
    }
    if (c == 'u') {
      const int line = line_, col = col_;
      advance();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index after 'u'");
      const long index = uint_literal("variable index");
      if (index < 1) fail_at("variable index must be at least 1", line, col);
      if (ell_ > 0 && index > ell_) fail_at("variable u" + std::to_string(index) + " exceeds ell = " + std::to_string(ell_), line, col);
      long order = 0;
      if (peek() == '_') {
        advance();
        order = uint_literal("derivative order");
      } else {
        while (peek() == '\'') {
          advance();
          ++order;
        }
      }
      if (order > 1000) fail("derivative order too large");
      return alg_.variable(DiffVar{static_cast<int>(index), static_cast<int>(order)});
    }
    if (c == 'l') {
      const int line = line_, col = col_;
      advance();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected lambda index after 'l'");
      const long s = uint_literal("lambda index");
      auto v = alg_.lambda(static_cast<int>(s));
      if (!v) fail_at("lambda variable l" + std::to_string(s) + " is not available here", line, col);
      return *v;
    }
    if (c == 'D') {
      auto v = alg_.d();
      if (!v) fail("D is only allowed in operator entries");
      advance();
      return *v;
    }
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  // Coefficients are unbounded, so printed output always parses back.
  mpz_class big_literal(const char* what) {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(std::string("expected ") + what);
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    return mpz_class(digits, 10);
  }

  long uint_literal(const char* what) {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(std::string("expected ") + what);
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1'000'000'000L) fail(std::string(what) + " too large");
      advance();
    }
    return v;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }
  [[noreturn]] void fail_at(const std::string& msg, int line, int col) const { throw ParseError(msg, line, col); }

  std::string_view text_;
  int ell_;
  Algebra alg_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::string var_name(DiffVar v) {
  std::string s = "u" + std::to_string(v.index);
  if (v.order <= 3)
    s += std::string(static_cast<std::size_t>(v.order), '\'');
  else
    s += "_" + std::to_string(v.order);
  return s;
}

std::string monomial_name(const Monomial& m) {
  std::string s;
  for (const auto& [v, e] : m.factors()) {
    if (!s.empty()) s += "*";
    s += var_name(v);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

// Appends coefficient * body with sign handling; body empty means a constant.
void append_term(std::string& out, const Rational& c, const std::string& body) {
  const bool negative = c < 0;
  const Rational a = negative ? Rational(-c) : c;
  if (out.empty()) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  if (body.empty()) {
    out += to_string(a);
  } else if (a == 1) {
    out += body;
  } else {
    out += to_string(a) + "*" + body;
  }
}

// A DiffPoly coefficient in front of a symbol such as "l0^2" or "D^3".
void append_scaled(std::string& out, const DiffPoly& c, const std::string& symbol) {
  if (symbol.empty()) {
    const std::string body = print_expr(c);
    if (out.empty()) {
      out = body;
    } else if (body.front() == '-') {
      out += " - " + body.substr(1);
    } else {
      out += " + " + body;
    }
    return;
  }
  if (c.size() == 1) {
    const auto& [m, q] = *c.terms().begin();
    const std::string mono = monomial_name(m);
    append_term(out, q, mono.empty() ? symbol : mono + "*" + symbol);
    return;
  }
  append_term(out, Rational(1), "(" + print_expr(c) + ")*" + symbol);
}

}  // namespace

DiffPoly parse_expr(std::string_view text, int ell) { return Parser(text, ell, DiffPolyAlgebra{}).parse(); }

LambdaPoly parse_lambda(std::string_view text, int nvars, int ell) {
  return Parser(text, ell, LambdaAlgebra{nvars}).parse();
}

OpPoly parse_operator(std::string_view text, int ell) { return Parser(text, ell, OperatorAlgebra{}).parse(); }

std::string print_expr(const DiffPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) append_term(out, c, monomial_name(m));
  return out;
}

std::string print_lambda(const LambdaPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    std::string symbol;
    for (std::size_t s = 0; s < e.size(); ++s) {
      if (e[s] == 0) continue;
      if (!symbol.empty()) symbol += "*";
      symbol += "l" + std::to_string(s);
      if (e[s] != 1) symbol += "^" + std::to_string(e[s]);
    }
    append_scaled(out, c, symbol);
  }
  return out;
}

std::string print_operator(const OpPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    const int n = it->first;
    append_scaled(out, it->second, n == 0 ? "" : (n == 1 ? "D" : "D^" + std::to_string(n)));
  }
  return out;
}

}  // namespace vpc
