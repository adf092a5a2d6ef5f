#pragma once

// Text form of differential polynomials, lambda-polynomials and differential
// operators.
//
//   expr   := sign? term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := rational | var | lambda | 'D' | '(' expr ')'
//   var    := 'u' uint ("'"* | '_' uint)
//   lambda := 'l' uint
//   rational := uint ('/' uint)?
//
// 'l' atoms are accepted only by parse_lambda and 'D' only by parse_operator.
// Products of operators are compositions, so "D*u1" means u1 D + u1'.

#include <stdexcept>
#include <string>
#include <string_view>

#include "vpc/diffpoly.hpp"
#include "vpc/lambda_poly.hpp"
#include "vpc/matop.hpp"

namespace vpc {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// ell <= 0 disables the bound on variable indices.
DiffPoly parse_expr(std::string_view text, int ell = 0);
LambdaPoly parse_lambda(std::string_view text, int nvars, int ell = 0);
OpPoly parse_operator(std::string_view text, int ell = 0);

std::string print_expr(const DiffPoly& p);
std::string print_lambda(const LambdaPoly& p);
std::string print_operator(const OpPoly& p);

}  // namespace vpc
