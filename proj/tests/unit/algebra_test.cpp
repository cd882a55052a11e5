#include <gtest/gtest.h>

#include "pilab/codim.hpp"
#include "pilab/definition.hpp"
#include "pilab/grassmann.hpp"
#include "pilab/linalg.hpp"
#include "pilab/poly.hpp"

using namespace pilab;

TEST(Linalg, RationalReconstruct) {
  const std::uint64_t p = 2147483647;
  PrimeField F(p);
  auto q = rational_reconstruct(F.from_rational(Rational(-3, 7)), p);
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, Rational(-3, 7));
}

TEST(Linalg, NullspaceAndIntersection) {
  std::vector<Vector> rows = {{1, 1, 0}, {0, 1, 1}};
  auto ns = rational_nullspace(rows, 3);
  ASSERT_EQ(ns.size(), 1u);
  for (const auto& r : rows) EXPECT_EQ(r[0] * ns[0][0] + r[1] * ns[0][1] + r[2] * ns[0][2], 0);

  auto a = Subspace::span(3, {{1, 0, 0}, {0, 1, 0}});
  auto b = Subspace::span(3, {{0, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(a.intersect(b).dim(), 1u);
  EXPECT_EQ(a.sum(b).dim(), 3u);
  EXPECT_TRUE(a.intersect(b).contains(Vector{0, 5, 0}));
}

TEST(Poly, PermutationRanks) {
  for (int n = 1; n <= 5; ++n) {
    auto perms = all_permutations(n);
    ASSERT_EQ(perms.size(), factorial(n));
    for (std::uint64_t r = 0; r < perms.size(); ++r) {
      EXPECT_EQ(permutation_rank(perms[r]), r);
      EXPECT_EQ(permutation_unrank(r, n), perms[r]);
    }
  }
}

TEST(Poly, ParseAndExpand) {
  auto f = parse_poly("[x1,x2]");
  EXPECT_EQ(f, GeneralPoly::variable(0) * GeneralPoly::variable(1) - GeneralPoly::variable(1) * GeneralPoly::variable(0));
  // left-normed: [x1,x2,x3] = [[x1,x2],x3]
  EXPECT_EQ(parse_poly("[x1,x2,x3]"), parse_poly("[[x1,x2],x3]"));
  EXPECT_EQ(parse_poly("[x1,x2]^2").terms().size(), 4u);
  EXPECT_EQ(parse_poly("St4").terms().size(), 24u);
  EXPECT_THROW(parse_poly("[x1,"), ParseError);
}

TEST(Poly, Multilinearize) {
  auto comps = multilinearize(parse_poly("x1^2"));
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps[0], MultilinearPoly::from_general(parse_poly("x1x2+x2x1"), 2));
  auto tf = tree_form(*parse_expr("[x1,x2][x3,x4,x5]"));
  ASSERT_TRUE(tf);
  EXPECT_EQ(tf->degree, 5);
  EXPECT_FALSE(tree_form(*parse_expr("[x1,x2]+x3x4")));
}

TEST(Grassmann, ProductSigns) {
  EXPECT_EQ(GrassmannTruncated::product_sign(0b01, 0b10), 1);
  EXPECT_EQ(GrassmannTruncated::product_sign(0b10, 0b01), -1);
  EXPECT_EQ(GrassmannTruncated::product_sign(0b01, 0b01), 0);
  EXPECT_EQ(GrassmannTruncated::product_sign(0b011, 0b100), 1);
  EXPECT_EQ(GrassmannTruncated::product_sign(0b100, 0b011), 1);
  auto G = build_truncated_grassmann(3).algebra();
  EXPECT_EQ(G.dim(), 8u);
  G.validate();
}

TEST(Grassmann, CommutatorOfOddElements) {
  // In G(F+cF), [c g1, c g2] = 2 g1 g2 (x) 1, while the plain commutator [c, c] vanishes.
  auto B = build_structured_algebra(parse_definition(R"(
name: FcF
envelope: true
ambient: {type: ut_blocks, sizes: [2], grading: [0, 1]}
constraints: ["a11=a22", "a12=a21"]
)"));
  Vector c = parse_element(B, "e12+e21"), one = parse_element(B, "e11+e22");
  auto f = MultilinearPoly::from_general(parse_poly("[x1,x2]"), 2);
  EXPECT_EQ(evaluate(Target{&B, true}, f, {{c, 1}, {c, 1}}), B.scale(2, one));
  EXPECT_TRUE(is_zero_vector(evaluate(Target{&B, false}, f, {{c, 0}, {c, 0}})));
}

TEST(Grassmann, SignRuleMatchesModel) {
  auto B = build_ut_block_algebra({2, 1}, {0, 1, 0});
  auto model = build_envelope_model(B, 3);
  auto f = MultilinearPoly::from_general(parse_poly("[x1,x2]x3 - 2x3x1x2"), 3);
  std::vector<Vector> el = {parse_element(B, "e12"), parse_element(B, "e21+e23"), parse_element(B, "e11+e33")};
  std::vector<int> par = {1, 1, 0};
  EnvelopeContext ctx{&B, 3, EnvelopeContext::Mode::SignRule};
  EXPECT_EQ(sign_rule_evaluate(ctx, f, par, el), model_evaluate(B, model, f, par, el));
  EnvelopeContext low{&B, 2, EnvelopeContext::Mode::TruncatedModel};
  EXPECT_THROW(low.require_degree(3), std::exception);
}

TEST(Superalgebra, UtBlocks) {
  auto A = build_ut_block_algebra({2, 3}, {0, 0, 0, 1, 0});
  EXPECT_EQ(A.dim(), 19u);
  EXPECT_EQ(A.homogeneous_parity(parse_element(A, "e34")), 1);
  EXPECT_EQ(A.homogeneous_parity(parse_element(A, "e45")), 1);
  EXPECT_EQ(A.homogeneous_parity(parse_element(A, "e35")), 0);
  EXPECT_EQ(A.homogeneous_parity(parse_element(A, "e12")), 0);
  A.validate();
  auto M = build_ut_block_algebra({4}, {0, 0, 1, 1});
  EXPECT_EQ(M.dim(), 16u);
  EXPECT_EQ(M.homogeneous_parity(parse_element(M, "e13")), 1);
  EXPECT_EQ(build_ut_block_algebra({1, 1}, {0, 0}).dim(), 3u);
  EXPECT_THROW(build_ut_block_algebra({2}, {0}), std::exception);
}

TEST(Superalgebra, BadDefinitions) {
  EXPECT_THROW(parse_definition("name: [unclosed"), AlgebraError);
  // constraint set not closed under multiplication
  EXPECT_THROW(build_structured_algebra(parse_definition(R"(
name: open
ambient: {type: ut_blocks, sizes: [1, 1, 1], grading: [0, 0, 0]}
constraints: ["a13=0"]
)")),
               AlgebraError);
}
