#include <gtest/gtest.h>

#include "pilab/catalog.hpp"
#include "pilab/definition.hpp"
#include "pilab/witnesses.hpp"

using namespace pilab;

namespace {

Element el(const SuperAlgebra& A, const std::string& s) {
  Vector v = parse_element(A, s);
  return {v, A.homogeneous_parity(v).value()};
}

PatternMatch first_match(const SuperAlgebra& B) {
  auto d = detect_patterns(B);
  if (d.matches.empty()) throw std::runtime_error("no match in " + B.name());
  return d.matches.front();
}

void expect_sound(const Realization& z, const std::string& member) {
  EXPECT_TRUE(z.graded);
  EXPECT_TRUE(z.well_defined);
  EXPECT_TRUE(z.basis_ok) << z.dependency;
  EXPECT_EQ(z.image_member, member);
  EXPECT_TRUE(z.conclusion_holds());
  EXPECT_TRUE(z.checks_passed()) << z.failure;
}

}  // namespace

TEST(Witnesses, LemmaNames) {
  for (auto l : {Lemma::L41, Lemma::L42, Lemma::L43, Lemma::L44, Lemma::L45, Lemma::L46})
    EXPECT_EQ(parse_lemma(to_string(l)), l);
  EXPECT_EQ(lemma_path(Lemma::L41), "e1j1e2j2e3j3e1");
  EXPECT_EQ(lemma_path(Lemma::L42), "j1e1j2e2j3e3j4");
  EXPECT_EQ(lemma_target(Lemma::L43), "A_5");
  EXPECT_THROW(parse_lemma("L4.7"), std::invalid_argument);
}

TEST(Witnesses, DetectionOnCatalog) {
  const std::vector<std::pair<std::string, Lemma>> cases = {
      {"A_3", Lemma::L41}, {"A_4", Lemma::L42}, {"A_5", Lemma::L43}, {"A_6", Lemma::L44},
      {"A_7", Lemma::L45}, {"A_8", Lemma::L46}, {"A_9", Lemma::L46}};
  for (const auto& [name, lemma] : cases) {
    auto d = detect_patterns(*catalog_algebra(name));
    ASSERT_FALSE(d.matches.empty()) << name;
    EXPECT_FALSE(d.short_circuit) << name;
    EXPECT_EQ(d.matches.front().lemma, lemma) << name;
  }
  for (const char* name : {"C_1", "C_2", "D", "D_0", "F", "G", "UT_2"})
    EXPECT_TRUE(detect_patterns(*catalog_algebra(name)).matches.empty()) << name;
}

TEST(Witnesses, MatrixBlocksShortCircuit) {
  auto d1 = detect_patterns(*catalog_algebra("A_1"));
  ASSERT_TRUE(d1.short_circuit);
  EXPECT_EQ(d1.short_circuit->target, "A_1");
  auto d2 = detect_patterns(*catalog_algebra("A_2"));
  ASSERT_TRUE(d2.short_circuit);
  EXPECT_EQ(d2.short_circuit->target, "A_2");
}

TEST(Witnesses, ValidateRejectsBrokenMatches) {
  auto B = catalog_algebra("A_3");
  auto m = first_match(*B);
  EXPECT_EQ(validate_match(*B, m), "");
  auto bad = m;
  bad.radical[0] = el(*B, "e22");  // not radical
  EXPECT_NE(validate_match(*B, bad), "");
  bad = m;
  bad.radical[2] = el(*B, "e24");  // product along the path vanishes
  EXPECT_NE(validate_match(*B, bad), "");
  bad = m;
  bad.idempotents[1] = parse_element(*B, "e22+e23");  // idempotent but not orthogonal to the others' block
  EXPECT_NE(validate_match(*B, bad), "");
}

TEST(Witnesses, NonzeroKernel) {
  auto K = build_structured_algebra(parse_definition(R"(
name: K
ambient: {type: ut_blocks, sizes: [1,1,1,1,1,1,1], grading: [0,0,0,0,0,0,0]}
constraints: ["a11=a44", "a44=a77", "a22=a55", "a33=a66"]
wedderburn:
  blocks:
    - {kind: F, basis: ["e11+e44+e77"]}
    - {kind: F, basis: ["e22+e55"]}
    - {kind: F, basis: ["e33+e66"]}
  radical: [e12,e13,e14,e15,e16,e17,e23,e24,e25,e26,e27,e34,e35,e36,e37,e45,e46,e47,e56,e57,e67]
)"));
  PatternMatch m;
  m.lemma = Lemma::L41;
  m.blocks = {0, 1, 2};
  for (const auto& b : K.wedderburn()->blocks) m.idempotents.push_back(block_unit(K, b));
  m.radical = {el(K, "e12+e45"), el(K, "e23"), el(K, "e34")};
  m.target = m.variant = "A_3";
  m.nonzero_product = parse_element(K, "e14");
  ASSERT_EQ(validate_match(K, m), "");
  auto z = realize_pattern(K, m);
  EXPECT_EQ(z.kernel_dim, 3u);
  ASSERT_TRUE(z.kernel_matches);
  EXPECT_TRUE(*z.kernel_matches);
  expect_sound(z, "A_3");
}

TEST(Witnesses, AlphaCases) {
  auto B = catalog_algebra("A_5");
  auto m = first_match(*B);
  m.radical[1] = el(*B, "e14+e23");
  auto z = realize_pattern(*B, m);
  ASSERT_EQ(z.alpha_cases.size(), 4u);
  for (const auto& a : z.alpha_cases)
    EXPECT_EQ(a.graded && a.image_matches, a.alpha1 == 0 && a.alpha2 == 1) << a.alpha1 << a.alpha2;
  expect_sound(z, "A_5");

  RealizeOptions fixed;
  fixed.alpha = std::pair{0, 0};
  auto w = realize_pattern(*B, m, fixed);
  EXPECT_FALSE(w.checks_passed());
}

TEST(Witnesses, OddRadicalElements) {
  auto A8 = catalog_algebra("A_8");
  auto m8 = first_match(*A8);
  m8.radical = {el(*A8, "e13"), el(*A8, "e34")};
  ASSERT_EQ(validate_match(*A8, m8), "");
  expect_sound(realize_pattern(*A8, m8), "A_8");

  auto A6 = catalog_algebra("A_6");
  auto m6 = first_match(*A6);
  m6.radical = {el(*A6, "e12"), el(*A6, "e24"), el(*A6, "e45")};
  ASSERT_EQ(validate_match(*A6, m6), "");
  expect_sound(realize_pattern(*A6, m6), "A_6");
}

TEST(Witnesses, VariantsAreTold) {
  for (const char* name : {"A_6^1", "A_6^2", "A_6^3", "A_7^1", "A_7^2", "A_7^3"}) {
    auto B = catalog_algebra(name);
    auto m = first_match(*B);
    EXPECT_EQ(m.variant, name);
    RealizeOptions o;
    o.max_degree = 3;
    EXPECT_EQ(realize_pattern(*B, m, o).image_member, name);
  }
}

TEST(Witnesses, CertifyNegativeCases) {
  auto ss = build_structured_algebra(parse_definition(R"(
name: SS
envelope: true
ambient: {type: ut_blocks, sizes: [1,1,2], grading: [0,0,0,1]}
constraints: ["a12=0","a13=0","a14=0","a23=0","a24=0","a33=a44","a34=a43"]
wedderburn:
  blocks:
    - {kind: F, basis: [e11]}
    - {kind: F, basis: [e22]}
    - {kind: F_plus_cF, basis: ["e33+e44", "e34+e43"]}
  radical: []
)"));
  auto r = certify_delta_gt_two(ss, true);
  EXPECT_FALSE(r.certified);
  EXPECT_EQ(r.verdict(), "no witness found");
  EXPECT_EQ(r.delta_upper, 2);
  for (const char* name : {"D", "D_0"}) {
    auto rr = certify_delta_gt_two(*catalog_algebra(name), false);
    EXPECT_FALSE(rr.certified) << name;
    EXPECT_EQ(rr.delta_lower, 2) << name;
    EXPECT_EQ(rr.delta_upper, 2) << name;
  }
}

TEST(Witnesses, SubspaceAlgebra) {
  auto B = catalog_algebra("A_3");
  auto S = B->generated_subalgebra({parse_element(*B, "e22"), parse_element(*B, "e23"), parse_element(*B, "e33")});
  auto sub = subspace_algebra(*B, S, "UT2 inside A_3");
  EXPECT_EQ(sub.dim(), 3u);
  sub.validate();
}
