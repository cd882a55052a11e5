// One line per criterion; claim details follow for failures.

#include <iomanip>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "pilab/verify.hpp"

using namespace pilab;

int main(int argc, char** argv) {
  CLI::App app{"pilab acceptance suite"};
  VerifyOptions opt;
  bool verbose = false;
  app.add_option("--criterion,-c", opt.criteria, "criteria to run (default: all)")->check(CLI::Range(1, 10));
  app.add_flag("--with-degree7", opt.with_degree7, "run the degree-7 checks");
  app.add_option("--jobs,-j", opt.jobs, "worker threads");
  app.add_flag("--verbose,-v", verbose, "print every claim");
  CLI11_PARSE(app, argc, argv);

  const std::map<int, std::string> titles = {
      {1, "exponent table"},
      {2, "center table"},
      {3, "proper central witnesses"},
      {4, "proper central codimensions of UT_2, c = c^z + c^delta"},
      {5, "T-ideal generators of C_1, C_2 at n = 4, 5, 6"},
      {6, "T-ideal generators of A_6, A_7 at n = 7"},
      {7, "grading variants of A_6, A_7 at n <= 6"},
      {8, "membership table"},
      {9, "witness certifier"},
      {10, "oracle equivalences"},
  };

  auto results = verify_claims(opt);
  bool failed = false, ran = false;
  for (const auto& [k, title] : titles) {
    if (!opt.criteria.empty() && std::find(opt.criteria.begin(), opt.criteria.end(), k) == opt.criteria.end()) continue;
    auto st = criterion_status(results, k);
    int count = 0;
    double secs = 0;
    for (const auto& r : results)
      if (r.criterion == k) ++count, secs += r.seconds;
    std::cout << "criterion " << std::setw(2) << k << "  " << std::left << std::setw(8) << to_string(st) << std::right
              << title << "  (" << count << " claims, " << std::fixed << std::setprecision(1) << secs << "s)\n";
    failed = failed || st == ClaimStatus::Fail;
    ran = ran || st != ClaimStatus::Skipped;
  }
  for (const auto& r : results) {
    if (!verbose && r.status != ClaimStatus::Fail) continue;
    std::cout << "\n[" << to_string(r.status) << "] " << r.id << ": " << r.title << '\n';
    for (const auto& d : r.details) std::cout << "  " << d << '\n';
  }
  if (failed) return 1;
  return ran ? 0 : 77;
}
