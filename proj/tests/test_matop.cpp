#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "vpc/expr.hpp"
#include "vpc/matop.hpp"

namespace vpc {
namespace {

MatDiffOp scalar(const char* s) { return MatDiffOp::scalar(parse_operator(s)); }
DiffPoly P(const char* s) { return parse_expr(s); }

TEST(MatOp, Apply) {
  const std::vector<DiffPoly> f{P("u1")};
  EXPECT_EQ(vpc::apply(scalar("D"), f), std::vector<DiffPoly>{P("u1'")});
  const std::vector<DiffPoly> two{P("u1^2"), P("u2'")};
  EXPECT_EQ(vpc::apply(MatDiffOp::identity(2), two), two);
  EXPECT_EQ(vpc::apply(scalar("D^3 + 2*u1*D + u1'"), f), std::vector<DiffPoly>{P("u1''' + 3*u1*u1'")});
  EXPECT_THROW(vpc::apply(MatDiffOp::identity(2), f), std::invalid_argument);
}

TEST(MatOp, Compose) {
  EXPECT_EQ(compose(scalar("D"), scalar("u1")), scalar("u1*D + u1'"));
  const MatDiffOp a = scalar("u1*D^2 + 3");
  EXPECT_EQ(compose(a, MatDiffOp::identity(1)), a);
  EXPECT_EQ(compose(scalar("D"), scalar("D")), scalar("D^2"));
  EXPECT_THROW(compose(MatDiffOp::identity(2), a), std::invalid_argument);
}

TEST(MatOp, Adjoint) {
  EXPECT_EQ(adjoint(scalar("D")), scalar("-D"));
  EXPECT_EQ(adjoint(scalar("u1*D")), scalar("-u1*D - u1'"));
  const MatDiffOp kdv = scalar("D^3 + 2*u1*D + u1'");
  EXPECT_EQ(adjoint(kdv), -kdv);
}

TEST(MatOp, Classification) {
  const MatDiffOp d = scalar("D");
  EXPECT_TRUE(is_skewadjoint(d));
  EXPECT_TRUE(d.is_quasiconstant());
  const auto lc = leading_coefficient(d);
  EXPECT_TRUE(lc.invertible);
  EXPECT_EQ(lc.matrix, linalg::Matrix::identity(1));

  const MatDiffOp kdv = scalar("D^3 + 2*u1*D + u1'");
  EXPECT_TRUE(is_skewadjoint(kdv));
  EXPECT_FALSE(kdv.is_quasiconstant());

  const linalg::Matrix s(2, 2, {1, 2, 2, 3});
  const MatDiffOp sd = MatDiffOp::constant(s, 1);
  EXPECT_TRUE(is_skewadjoint(sd));
  const auto slc = leading_coefficient(sd);
  EXPECT_TRUE(slc.invertible);
  EXPECT_EQ(slc.matrix, s);

  EXPECT_THROW(is_skewadjoint(MatDiffOp(1, 2)), std::invalid_argument);
}

TEST(MatOpProperty, AdjointLaws) {
  testing::Gen g(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t ell = static_cast<std::size_t>(g.uniform(1, 2));
    const MatDiffOp a = g.skewadjoint(ell, 2) + g.quasiconstant(ell, 1);
    const MatDiffOp b = g.skewadjoint(ell, 1) + g.quasiconstant(ell, 2);
    EXPECT_EQ(adjoint(adjoint(a)), a);
    EXPECT_EQ(adjoint(compose(a, b)), compose(adjoint(b), adjoint(a)));
    const auto f = g.diffpoly_vector(static_cast<int>(ell));
    EXPECT_EQ(vpc::apply(compose(a, b), f), vpc::apply(a, vpc::apply(b, f)));
  }
}

TEST(MatOpProperty, ConstantKernelMatchesK0) {
  testing::Gen g(22);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t ell = static_cast<std::size_t>(g.uniform(1, 3));
    const MatDiffOp k = g.quasiconstant(ell, g.uniform(1, 3));
    const auto k0 = k.coefficient_matrix(0);
    for (const auto& v : linalg::nullspace(k0)) {
      std::vector<DiffPoly> f;
      for (const auto& x : v) f.emplace_back(x);
      for (const auto& c : vpc::apply(k, f)) EXPECT_TRUE(c.is_zero());
    }
  }
}

}  // namespace
}  // namespace vpc
