#include "vpc/rational.hpp"

#include <stdexcept>

namespace vpc {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (q.set_str(std::string(text), 10) != 0 || q.get_den() == 0)
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

}  // namespace vpc
