#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pilab {

enum class ClaimStatus { Pass, Fail, Skipped };
std::string to_string(ClaimStatus s);

struct ClaimResult {
  int criterion = 0;
  std::string id;  // e.g. "exp/A_3"
  std::string title;
  ClaimStatus status = ClaimStatus::Pass;
  double seconds = 0;
  std::vector<std::string> details;
};

struct VerifyOptions {
  bool with_degree7 = false;
  std::vector<std::string> only;   // restrict to claims touching these algebras (empty: all)
  std::vector<int> criteria;       // restrict to these criteria (empty: all)
  unsigned jobs = 1;
  std::uint64_t seed = 0x51ab;
  std::function<void(const ClaimResult&)> on_result;  // called as claims finish, serialized
};

struct ClaimInfo {
  int criterion = 0;
  std::string id;
  std::string title;
  std::vector<std::string> algebras;
  bool degree7 = false;
};

/// Every registered claim, in report order.
std::vector<ClaimInfo> list_claims();

/// Runs the selected claims; results come back in report order.
std::vector<ClaimResult> verify_claims(const VerifyOptions& opt = {});
ClaimResult verify_claim(const std::string& id, const VerifyOptions& opt = {});

/// Overall status of one criterion: Fail if any claim failed, Skipped if all were skipped.
ClaimStatus criterion_status(const std::vector<ClaimResult>& results, int criterion);

}  // namespace pilab
