#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "vpc/document.hpp"
#include "vpc/expr.hpp"

namespace vpc {
namespace {

TEST(Expr, ParseBasics) {
  const DiffPoly p = parse_expr("u1'' * u2 + 3/2 * u1^2");
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.coefficient(Monomial::from_factors({{make_var(1, 2), 1}, {make_var(2), 1}})), 1);
  EXPECT_EQ(p.coefficient(Monomial(make_var(1), 2)), Rational(3, 2));
  EXPECT_EQ(parse_expr("u1_3"), parse_expr("u1'''"));
  EXPECT_EQ(parse_expr("  (u1 + 1)^2 "), parse_expr("u1^2 + 2*u1 + 1"));
  EXPECT_EQ(parse_expr("-u1 + 2"), parse_expr("2 - u1"));
}

TEST(Expr, ParseErrors) {
  try {
    parse_expr("u1 +\n  * u2");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
  EXPECT_THROW(parse_expr("u3", 2), ParseError);
  EXPECT_THROW(parse_expr("u0"), ParseError);
  EXPECT_THROW(parse_expr("1/0"), ParseError);
  EXPECT_THROW(parse_expr(""), ParseError);
  EXPECT_THROW(parse_expr("(u1"), ParseError);
  EXPECT_THROW(parse_expr("D*u1"), ParseError);
  EXPECT_THROW(parse_expr("u1 u2"), ParseError);
}

TEST(Expr, LargeCoefficients) {
  const DiffPoly p = parse_expr("123456789012345678901/3*u1");
  EXPECT_EQ(p.coefficient(Monomial(make_var(1))), Rational(mpz_class("123456789012345678901"), 3));
  EXPECT_EQ(parse_expr(print_expr(p)), p);
}

TEST(Expr, Printer) {
  EXPECT_EQ(print_expr(DiffPoly()), "0");
  EXPECT_EQ(print_expr(parse_expr("u1_4")), "u1_4");
  EXPECT_EQ(print_expr(parse_expr("u1_3")), "u1'''");
  EXPECT_EQ(print_operator(parse_operator("u1' + 2*u1*D + D^3")), "D^3 + 2*u1*D + u1'");
}

TEST(Expr, Operators) {
  EXPECT_EQ(parse_operator("D"), OpPoly::d(1));
  const OpPoly mid = parse_operator("2*u1*D + u1_1");
  EXPECT_EQ(mid, OpPoly::monomial(parse_expr("2*u1"), 1) + OpPoly(parse_expr("u1'")));
  // Products compose: D*u1 = u1 D + u1'.
  EXPECT_EQ(parse_operator("D*u1"), parse_operator("u1*D + u1'"));
  EXPECT_THROW(parse_operator("D^"), ParseError);
}

TEST(ExprProperty, RoundTripOnPolynomials) {
  testing::Gen g(61);
  for (int trial = 0; trial < 300; ++trial) {
    const DiffPoly p = g.diffpoly(3, 5, 4, 6);
    const std::string text = print_expr(p);
    EXPECT_EQ(parse_expr(text), p) << text;
    EXPECT_EQ(print_expr(parse_expr(text)), text);
  }
}

TEST(ExprProperty, PrintParseIsIdempotent) {
  testing::Gen g(62);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string text = g.expr_text(3);
    const DiffPoly p = parse_expr(text);
    const std::string canon = print_expr(p);
    EXPECT_EQ(print_expr(parse_expr(canon)), canon) << text;
    EXPECT_EQ(parse_expr(canon), p) << text;
  }
}

TEST(ExprProperty, LambdaAndOperatorRoundTrip) {
  testing::Gen g(63);
  for (int trial = 0; trial < 100; ++trial) {
    const LambdaPoly l = g.lambda_poly(2, 2, 3, 3, 2, 2);
    EXPECT_EQ(parse_lambda(print_lambda(l), 2), l);
    const MatDiffOp op = g.skewadjoint(1, 3);
    EXPECT_EQ(parse_operator(print_operator(op(0, 0))), op(0, 0));
  }
}

TEST(Document, OperatorDocuments) {
  const auto doc = parse_operator_document(R"({"ell": 2, "name": "SD", "entries": [["D", "0"], ["0", "D"]]})");
  EXPECT_EQ(doc.name, "SD");
  EXPECT_EQ(to_matdiffop(doc), MatDiffOp::constant(linalg::Matrix::identity(2), 1));
  const auto again = parse_operator_document(dump_operator_document(doc));
  EXPECT_EQ(to_matdiffop(again), to_matdiffop(doc));
  EXPECT_EQ(dump_operator_document(from_matdiffop(to_matdiffop(doc), "SD")), dump_operator_document(doc));

  EXPECT_THROW(parse_operator_document(R"({"ell": 2, "entries": [["D", "0"]]})"), std::invalid_argument);
  EXPECT_THROW(parse_operator_document(R"({"ell": 1, "entries": [["D^"]]})"), ParseError);
  EXPECT_THROW(parse_operator_document(R"({"ell": 1, "entries": [["D*u2"]]})"), ParseError);
  EXPECT_THROW(parse_operator_document("{not json"), std::invalid_argument);
  EXPECT_THROW(parse_operator_document(R"({"entries": [["D"]]})"), std::invalid_argument);
}

TEST(Document, PolyvectorDocuments) {
  const PolyVector f = parse_polyvector_document(R"({"ell": 1, "functional": "1/2*u1^2"})");
  EXPECT_EQ(f.degree(), -1);
  const PolyVector v = parse_polyvector_document(R"({"ell": 2, "components": ["u1'", "u1*u2"]})");
  EXPECT_EQ(v.degree(), 0);
  const PolyVector op = parse_polyvector_document(R"({"ell": 1, "operator": [["D^3 + 2*u1*D + u1'"]]})");
  EXPECT_EQ(to_operator(op), MatDiffOp::scalar(parse_operator("D^3 + 2*u1*D + u1'")));
  const PolyVector e = parse_polyvector_document(
      R"({"ell": 2, "degree": 1, "entries": [{"index": [1, 2], "value": "l0*u1"}, {"index": [2, 1], "value": "-l1*u1"}]})");
  EXPECT_TRUE(permute_and_check_skew(e));
  for (const PolyVector& p : {f, v, op, e}) EXPECT_EQ(parse_polyvector_document(dump_polyvector_document(p)), p);

  EXPECT_THROW(parse_polyvector_document(
                   R"({"ell": 2, "degree": 1, "entries": [{"index": [1, 2], "value": "l0*u1"}]})"),
               std::invalid_argument);
  EXPECT_THROW(parse_polyvector_document(R"({"ell": 1, "operator": [["u1*D"]]})"), std::invalid_argument);
  EXPECT_THROW(parse_polyvector_document(R"({"ell": 1})"), std::invalid_argument);
}

TEST(Document, Matrices) {
  const auto m = parse_matrix_document(R"({"matrix": [[1, "3/2"], ["3/2", -4]]})");
  EXPECT_EQ(m, linalg::Matrix(2, 2, {1, Rational(3, 2), Rational(3, 2), -4}));
  EXPECT_THROW(parse_matrix_document(R"({"matrix": [[1, 2], [3]]})"), std::invalid_argument);
  EXPECT_THROW(parse_matrix_document(R"({"matrix": [[1.5]]})"), std::invalid_argument);
}

TEST(Document, ExpressionLists) {
  const auto list = parse_expr_list("u1, 2*u2'", 2);
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[1], parse_expr("2*u2'"));
  EXPECT_THROW(parse_expr_list("u1,", 2), ParseError);
}

}  // namespace
}  // namespace vpc
