#include <gtest/gtest.h>

#include "support/checks.hpp"
#include "support/generators.hpp"
#include "vpc/expr.hpp"
#include "vpc/polyvec.hpp"

namespace vpc {
namespace {

DiffPoly P(const char* s) { return parse_expr(s); }
LambdaPoly L(const char* s, int nvars) { return parse_lambda(s, nvars); }
MatDiffOp scalar(const char* s) { return MatDiffOp::scalar(parse_operator(s)); }

TEST(PolyVec, NormalizeEliminatesLastLambda) {
  std::vector<LambdaPoly> raw{L("l1*u1", 2)};
  const PolyVector p = normalize(1, 1, raw);
  EXPECT_EQ(p.at(0), L("-l0*u1 - u1'", 1));

  std::vector<LambdaPoly> plain{L("l0^2*u1 + 3", 2)};
  EXPECT_EQ(normalize(1, 1, plain).at(0), L("l0^2*u1 + 3", 1));

  std::vector<LambdaPoly> f{LambdaPoly::constant(0, P("u1^3"))};
  EXPECT_EQ(normalize(1, -1, f).density(), P("u1^3"));
}

TEST(PolyVec, NormalizeIsIdempotent) {
  testing::Gen g(31);
  for (int trial = 0; trial < 20; ++trial) {
    const PolyVector p = g.polyvector(2, 2);
    std::vector<LambdaPoly> raw;
    const int keep[2] = {0, 1};
    for (std::size_t i = 0; i < p.size(); ++i) raw.push_back(remap(p.at(i), 3, keep));
    EXPECT_EQ(normalize(2, 2, raw), p);
  }
}

TEST(PolyVec, SkewCheck) {
  const std::vector<DiffPoly> v{P("u1*u2"), P("u2''")};
  EXPECT_TRUE(permute_and_check_skew(PolyVector::vector_field(v)));
  EXPECT_TRUE(permute_and_check_skew(from_operator(scalar("D^3 + 2*u1*D + u1'"))));
  EXPECT_FALSE(permute_and_check_skew(operator_array(scalar("u1*D"))));
}

TEST(PolyVec, OperatorRoundTrip) {
  const MatDiffOp d = scalar("D");
  const PolyVector p = from_operator(d);
  const int idx[2] = {0, 0};
  EXPECT_EQ(p.entry(idx), L("l0", 1));
  EXPECT_EQ(to_operator(p), d);

  EXPECT_TRUE(from_operator(MatDiffOp(1, 1)).is_zero());

  const linalg::Matrix s(2, 2, {2, 1, 1, 5});
  const MatDiffOp sd = MatDiffOp::constant(s, 1);
  EXPECT_EQ(to_operator(from_operator(sd)), sd);

  EXPECT_THROW(from_operator(scalar("u1*D")), std::invalid_argument);
}

TEST(PolyVecProperty, OperatorRoundTripRandom) {
  testing::Gen g(32);
  for (int trial = 0; trial < 30; ++trial) {
    const MatDiffOp h = g.skewadjoint(static_cast<std::size_t>(g.uniform(1, 3)), 3);
    EXPECT_EQ(to_operator(from_operator(h)), h);
    const PolyVector p = g.polyvector(h.rows() == 1 ? 1 : 2, 1);
    EXPECT_EQ(from_operator(to_operator(p)), p);
  }
}

TEST(PolyVec, BoxProduct) {
  const PolyVector f = PolyVector::functional(1, P("u1^2"));
  const PolyVector g = PolyVector::functional(1, P("u1*u1''"));
  EXPECT_TRUE(box_product(f, g).is_zero());
  EXPECT_EQ(box_product(f, g).degree(), -2);
  const PolyVector d = from_operator(scalar("D"));
  EXPECT_TRUE(box_product(d, d).is_zero());
  const PolyVector kdv = from_operator(scalar("D^3 + 2*u1*D + u1'"));
  EXPECT_TRUE(schouten(kdv, kdv).is_zero());
}

TEST(PolyVec, Schouten) {
  const PolyVector f = PolyVector::functional(2, P("u1*u2"));
  const PolyVector g = PolyVector::functional(2, P("u2'^2"));
  EXPECT_TRUE(schouten(f, g).is_zero());

  const std::vector<DiffPoly> p{P("u1*u1'"), P("u2")};
  const std::vector<DiffPoly> q{P("u1^2"), P("u1''*u2")};
  const PolyVector pq = schouten(PolyVector::vector_field(p), PolyVector::vector_field(q));
  for (std::size_t i = 0; i < 2; ++i)
    EXPECT_EQ(pq.components()[i], evolutionary_apply(p, q[i]) - evolutionary_apply(q, p[i]));

  const PolyVector sd = from_operator(MatDiffOp::constant(linalg::Matrix(2, 2, {1, 1, 1, 3}), 1));
  EXPECT_TRUE(schouten(sd, sd).is_zero());
}

TEST(PolyVec, LambdaBracket) {
  const MatDiffOp d = scalar("D");
  EXPECT_EQ(lambda_bracket(d, P("u1"), P("u1")), L("l0", 1));
  EXPECT_TRUE(lambda_bracket(d, P("7"), P("u1^2")).is_zero());
  EXPECT_EQ(lambda_bracket(d, P("u1"), P("1/2*u1^2")), L("u1*l0", 1));
}

TEST(PolyVec, SpecializedBrackets) {
  const MatDiffOp d = scalar("D");
  EXPECT_EQ(bracket_op_functional(d, P("1/2*u1^2")), std::vector<DiffPoly>{P("u1'")});
  const std::vector<DiffPoly> one{P("1")};
  EXPECT_EQ(bracket_vf_functional(one, P("1/2*u1^2")), LocalFunctional(P("u1")));
  const std::vector<DiffPoly> c{P("5/2")};
  EXPECT_TRUE(bracket_vf_op(c, d).is_zero());
  EXPECT_THROW(bracket_vf_op(c, MatDiffOp::identity(2)), std::invalid_argument);
}

TEST(PolyVec, TransitivityProbe) {
  EXPECT_TRUE(transitivity_probe(PolyVector(1, 1)));
  EXPECT_FALSE(transitivity_probe(from_operator(scalar("D"))));
  const std::vector<DiffPoly> one{P("1")};
  EXPECT_FALSE(transitivity_probe(PolyVector::vector_field(one)));
}

TEST(PolyVecProperty, TransitivityDetectsNonzero) {
  testing::Gen g(33);
  for (int trial = 0; trial < 40; ++trial) {
    const PolyVector p = g.polyvector(g.uniform(1, 2), g.uniform(0, 2));
    EXPECT_EQ(transitivity_probe(p), p.is_zero());
  }
}

TEST(PolyVecProperty, GradedSkewSymmetry) {
  testing::Gen g(34);
  for (int trial = 0; trial < 30; ++trial) {
    const int ell = g.uniform(1, 2);
    const PolyVector p = g.polyvector(ell, g.uniform(-1, 2));
    const PolyVector q = g.polyvector(ell, g.uniform(-1, 2));
    EXPECT_TRUE(testing::skew_symmetry_holds(p, q));
  }
}

TEST(PolyVecProperty, Jacobi) {
  testing::Gen g(35);
  for (int trial = 0; trial < 20; ++trial) {
    const int ell = g.uniform(1, 2);
    const auto d = testing::triple_degrees(g, 3);
    EXPECT_TRUE(testing::jacobi_holds(g.polyvector(ell, d[0]), g.polyvector(ell, d[1]), g.polyvector(ell, d[2])));
  }
}

TEST(PolyVecProperty, SpecializedMatchSchouten) {
  testing::Gen g(36);
  for (int trial = 0; trial < 15; ++trial) {
    EXPECT_TRUE(testing::k_functional_matches(g));
    EXPECT_TRUE(testing::vf_functional_matches(g));
    EXPECT_TRUE(testing::op_functional_matches(g));
    EXPECT_TRUE(testing::vf_op_matches(g));
    EXPECT_TRUE(testing::triple_matches(g));
  }
}

}  // namespace
}  // namespace vpc
