#include <gtest/gtest.h>

#include "json.hpp"
#include "pilab/catalog.hpp"
#include "pilab/report.hpp"
#include "pilab/verify.hpp"

using namespace pilab;

TEST(Report, Table) {
  SummaryTable t({"a", "long header"});
  t.add({"xyz", "1"});
  EXPECT_EQ(t.render(), "a    long header\n---  -----------\nxyz  1\n");
}

TEST(Report, CodimRecordKeysInOrder) {
  auto r = codimensions(Catalog::builtin().target("UT_2"), 3);
  auto line = codim_record("UT_2", r);
  auto j = nlohmann::ordered_json::parse(line);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> want = {"kind", "algebra", "n", "c_n", "c_n_z", "c_n_delta",
                                         "method", "primes", "samples", "certified"};
  EXPECT_EQ(keys, want);
  EXPECT_EQ(j["c_n"], 6);
  EXPECT_EQ(line, codim_record("UT_2", codimensions(Catalog::builtin().target("UT_2"), 3)));
}

TEST(Report, CertifyRecord) {
  auto B = catalog_algebra("A_4");
  auto rep = certify_delta_gt_two(*B, false);
  auto j = nlohmann::json::parse(certify_record(*B, rep));
  EXPECT_EQ(j["lemma"], "L4.2");
  EXPECT_EQ(j["target"], "A_4");
  EXPECT_EQ(j["checks_passed"], true);
  EXPECT_EQ(j["radical_elements"].size(), 4u);
}

TEST(Report, Interval) {
  EXPECT_EQ(format_interval(3, 3), "3");
  EXPECT_EQ(format_interval(2, 4), "[2, 4]");
}

TEST(Verify, Registry) {
  auto claims = list_claims();
  std::set<int> criteria;
  std::set<std::string> ids;
  for (const auto& c : claims) {
    criteria.insert(c.criterion);
    EXPECT_TRUE(ids.insert(c.id).second) << c.id;
  }
  EXPECT_EQ(criteria.size(), 10u);
}

TEST(Verify, GatedClaimsSkip) {
  VerifyOptions o;
  o.criteria = {6};
  auto res = verify_claims(o);
  ASSERT_FALSE(res.empty());
  for (const auto& r : res) EXPECT_EQ(r.status, ClaimStatus::Skipped);
  EXPECT_EQ(criterion_status(res, 6), ClaimStatus::Skipped);
}

TEST(Verify, FilterByAlgebra) {
  VerifyOptions o;
  o.criteria = {1, 2};
  o.only = {"A_3"};
  auto res = verify_claims(o);
  ASSERT_EQ(res.size(), 2u);
  for (const auto& r : res) EXPECT_EQ(r.status, ClaimStatus::Pass) << r.id;
}
