#include <gtest/gtest.h>

#include "pilab/catalog.hpp"
#include "pilab/codim.hpp"
#include "pilab/definition.hpp"
#include "pilab/tideal.hpp"

using namespace pilab;

namespace {

CodimOptions mode(CodimOptions::Mode m) {
  CodimOptions o;
  o.mode = m;
  return o;
}

}  // namespace

// c_n(UT_2) = 2^{n-1}(n-2) + 2
TEST(Codim, UpperTriangularTwo) {
  Target t = Catalog::builtin().target("UT_2");
  const std::uint64_t want[] = {1, 2, 6, 18, 50};
  for (int n = 1; n <= 5; ++n) {
    auto r = codimensions(t, n);
    EXPECT_EQ(r.c_n, want[n - 1]) << n;
    EXPECT_EQ(r.c_n_delta, 0u) << n;
    EXPECT_TRUE(r.certified);
  }
}

// c_n(G) = 2^{n-1}
TEST(Codim, Grassmann) {
  Target t = Catalog::builtin().target("G");
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(codimensions(t, n).c_n, std::uint64_t{1} << (n - 1)) << n;
}

TEST(Codim, Field) {
  Target t = Catalog::builtin().target("F");
  for (int n = 1; n <= 4; ++n) {
    auto r = codimensions(t, n);
    EXPECT_EQ(r.c_n, 1u);
    EXPECT_EQ(r.c_n_z, 0u);
    EXPECT_EQ(r.c_n_delta, 1u);
  }
}

TEST(Codim, MatrixAlgebraDegreeFour) {
  // St_4 spans P_4 cap Id(M_2), so c_4 = 23
  Target t = Catalog::builtin().target("A_1");
  auto s = evaluation_space(t, 4, mode(CodimOptions::Mode::Exact));
  EXPECT_EQ(s.result.c_n, 23u);
  ASSERT_TRUE(s.identities);
  ASSERT_EQ(s.identities->size(), 1u);
  auto st4 = MultilinearPoly::from_general(parse_poly("St4"), 4).dense();
  EXPECT_TRUE(Subspace::span(24, *s.identities).contains(st4));
}

TEST(Codim, ExactAndModularAgree) {
  for (const char* name : {"A_3", "A_8", "C_1", "D_0"}) {
    Target t = Catalog::builtin().target(name);
    for (int n = 2; n <= 4; ++n) {
      auto e = codimensions(t, n, mode(CodimOptions::Mode::Exact));
      auto m = codimensions(t, n, mode(CodimOptions::Mode::Modular));
      EXPECT_EQ(e.c_n, m.c_n) << name << " " << n;
      EXPECT_EQ(e.c_n_z, m.c_n_z) << name << " " << n;
      EXPECT_EQ(e.method, "exact");
      EXPECT_EQ(m.method, "modular");
      EXPECT_EQ(m.primes.size(), 2u);
    }
  }
}

TEST(Codim, SumRule) {
  Target t = Catalog::builtin().target("A_3");
  for (int n = 1; n <= 4; ++n) {
    auto r = codimensions(t, n);
    EXPECT_EQ(r.c_n, r.c_n_z + r.c_n_delta);
  }
  // [x1,x2][x3,x4][x5,x6] is proper central on A_3, so c^delta_6 > 0; degree 4 has none yet
  EXPECT_EQ(codimensions(t, 4).c_n_delta, 0u);
}

TEST(Codim, BudgetGuard) {
  Target t = Catalog::builtin().target("A_4");
  CodimOptions o;
  o.max_degree = 3;
  EXPECT_THROW(codimensions(t, 4, o), ResourceError);
  o = CodimOptions{};
  o.exact_budget = 10;
  EXPECT_EQ(codimensions(t, 3, o).method, "modular");
}

TEST(Codim, CentralSubspaces) {
  Target a3 = Catalog::builtin().target("A_3");
  EXPECT_EQ(central_subspace(a3, 0).size(), 2u);
  Target a9 = Catalog::builtin().target("A_9");
  EXPECT_EQ(central_subspace(a9, 1).size(), 1u);
}

TEST(Classify, Verdicts) {
  const auto& cat = Catalog::builtin();
  EXPECT_EQ(classify(cat.target("UT_2"), "[x1,x2][x3,x4]").kind, Centrality::Identity);
  EXPECT_EQ(classify(cat.target("A_1"), "[x1,x2]^2").kind, Centrality::ProperCentral);
  EXPECT_EQ(classify(cat.target("A_1"), "[x1,x2]").kind, Centrality::NonCentral);
  EXPECT_EQ(classify(cat.target("G"), "[x1,x2,x3]").kind, Centrality::Identity);
  EXPECT_EQ(classify(cat.target("G"), "[x1,x2]").kind, Centrality::ProperCentral);
  EXPECT_EQ(classify(cat.target("D"), "[x1,x2][x3,x4]").kind, Centrality::ProperCentral);
  EXPECT_TRUE(is_identity(cat.target("A_3"), "[x1,x2][x3,x4][x5,x6][x7,x8]"));
  EXPECT_FALSE(is_identity(cat.target("A_4"), "[x1,x2][x3,x4][x5,x6][x7,x8]"));
}

TEST(TIdeal, LemmaGeneratorsSmallDegree) {
  // dimensions frozen from the independent evaluation side: 24 - c_4, 120 - c_5 of C_1
  auto s4 = tideal_multilinear_span(std::vector<std::string>{"[x1,x2,x3]x4"}, 4);
  auto s5 = tideal_multilinear_span(std::vector<std::string>{"[x1,x2,x3]x4"}, 5);
  EXPECT_EQ(s4.dim, 8u);
  EXPECT_EQ(s5.dim, 80u);
  EXPECT_TRUE(s4.certified);
  Target c1 = Catalog::builtin().target("C_1");
  EXPECT_EQ(codimensions(c1, 4).c_n, 16u);
  EXPECT_EQ(codimensions(c1, 5).c_n, 40u);
  EXPECT_TRUE(tspan_contains(s4, MultilinearPoly::from_general(parse_poly("[x1,x2,x3]x4"), 4)));
  EXPECT_FALSE(tspan_contains(s4, MultilinearPoly::from_general(parse_poly("[x1,x2][x3,x4]"), 4)));
}

TEST(TIdeal, ReducedAndFullAgree) {
  TSpanOptions full;
  full.enumeration = TSpanOptions::Enumeration::Full;
  for (const char* g : {"x1[x2,x3,x4]", "[x1,x2][x3,x4]"}) {
    auto a = tideal_multilinear_span(std::vector<std::string>{g}, 5);
    auto b = tideal_multilinear_span(std::vector<std::string>{g}, 5, full);
    EXPECT_EQ(a.dim, b.dim) << g;
    EXPECT_LE(a.generated, b.generated) << g;
  }
}

TEST(TIdeal, RewriteCongruences) {
  for (int n : {4, 5}) EXPECT_TRUE(rewrite_check(n).ok) << n;
}

TEST(TIdeal, VariableOrbit) {
  auto f = MultilinearPoly::from_general(parse_poly("[x1,x2]"), 2);
  EXPECT_EQ(variable_orbit(f).size(), 2u);
}
