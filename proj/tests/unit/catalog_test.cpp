#include <gtest/gtest.h>

#include "pilab/catalog.hpp"
#include "pilab/exponents.hpp"

using namespace pilab;

class CatalogEntryTest : public ::testing::TestWithParam<std::string> {
 protected:
  const CatalogEntry& entry() const { return Catalog::builtin().entry(GetParam()); }
  const ExpectedValues& expected() const { return entry().definition.expected; }
  std::shared_ptr<const SuperAlgebra> algebra() const { return Catalog::builtin().algebra(GetParam()); }
  Target target() const { return Catalog::builtin().target(GetParam()); }
};

TEST_P(CatalogEntryTest, BuildsWithVerifiedWedderburnData) {
  auto A = algebra();
  ASSERT_TRUE(A->wedderburn());
  auto rep = verify_wedderburn(*A, *A->wedderburn());
  EXPECT_TRUE(rep.ok) << rep.failure;
  EXPECT_NO_THROW(A->validate());
  EXPECT_EQ(A->is_graded(), entry().envelope) << "odd part";
}

TEST_P(CatalogEntryTest, Dimensions) {
  auto A = algebra();
  if (expected().dim) EXPECT_EQ(A->dim(), *expected().dim);
  if (expected().dim_even) {
    std::size_t even = 0;
    for (std::size_t i = 0; i < A->dim(); ++i) even += A->parity(i) == 0;
    EXPECT_EQ(even, *expected().dim_even);
  }
}

TEST_P(CatalogEntryTest, Centers) {
  auto A = algebra();
  auto same = [&](int q, const std::vector<std::string>& stated) {
    std::vector<Vector> vs;
    for (const auto& s : stated) vs.push_back(parse_element(*A, s));
    EXPECT_EQ(Subspace::span(A->dim(), central_subspace(target(), q)), Subspace::span(A->dim(), vs)) << "parity " << q;
  };
  if (expected().center) same(0, *expected().center);
  if (expected().supercenter_even) same(0, *expected().supercenter_even);
  if (expected().supercenter_odd) same(1, *expected().supercenter_odd);
}

TEST_P(CatalogEntryTest, Exponents) {
  if (!expected().exp) GTEST_SKIP();
  auto A = algebra();
  if (!expected().exp_delta) {
    EXPECT_EQ(pi_exponent(*A).exp, *expected().exp);
    return;
  }
  DeltaOptions opt;
  opt.extra_witnesses = expected().proper_central;
  auto r = delta_exponent_bounds(*A, entry().envelope, opt);
  EXPECT_EQ(r.exp, *expected().exp);
  EXPECT_EQ(r.delta_lower, *expected().exp_delta);
  EXPECT_EQ(r.delta_upper, *expected().exp_delta);
}

TEST_P(CatalogEntryTest, ProperCentralWitnesses) {
  for (const auto& p : expected().proper_central) EXPECT_EQ(classify(target(), p).kind, Centrality::ProperCentral) << p;
}

TEST_P(CatalogEntryTest, Evaluations) {
  auto A = algebra();
  for (const auto& ev : expected().evaluations) {
    std::vector<Element> args;
    for (const auto& s : ev.tuple) {
      Vector v = parse_element(*A, s);
      auto q = A->homogeneous_parity(v);
      ASSERT_TRUE(q) << s;
      args.push_back({v, *q});
    }
    auto f = MultilinearPoly::from_general(parse_poly(ev.poly), static_cast<int>(args.size()));
    EXPECT_EQ(evaluate(target(), f, args), parse_element(*A, ev.value)) << ev.poly;
  }
}

INSTANTIATE_TEST_SUITE_P(Builtin, CatalogEntryTest, ::testing::ValuesIn(Catalog::builtin().names()),
                         [](const auto& info) { return Catalog::builtin().entry(info.param).key; });

TEST(Catalog, Lookup) {
  const auto& cat = Catalog::builtin();
  EXPECT_EQ(cat.entry("A_6_2").name, "A_6^2");
  EXPECT_EQ(cat.entry("A_6^2").key, "A_6_2");
  try {
    cat.entry("A_10");
    FAIL();
  } catch (const UnknownAlgebra& e) {
    EXPECT_NE(std::string(e.what()).find("A_9"), std::string::npos);
  }
}

TEST(Catalog, EnvelopeShapes) {
  auto A6 = catalog_algebra("A_6");
  EXPECT_EQ(A6->dim(), 12u);
  EXPECT_TRUE(Catalog::builtin().entry("A_6").envelope);
  EXPECT_EQ(catalog_algebra("A_3")->dim(), 9u);
  EXPECT_FALSE(Catalog::builtin().entry("A_3").envelope);
}

TEST(Catalog, MembershipTableShape) {
  const auto& rows = Catalog::builtin().distinguishing();
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].poly, "St4");
  for (const auto& r : rows)
    for (const auto& m : r.members)
      EXPECT_EQ(std::count(r.nonmembers.begin(), r.nonmembers.end(), m), 0) << r.poly;
}

TEST(Catalog, FromDirectoryMatchesBuiltin) {
  auto dir = Catalog::from_directory(PILAB_CATALOG_DIR);
  EXPECT_EQ(dir.names(), Catalog::builtin().names());
  EXPECT_EQ(dir.distinguishing().size(), Catalog::builtin().distinguishing().size());
}
