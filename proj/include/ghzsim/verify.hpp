#pragma once

#include <string>
#include <vector>

namespace ghzsim {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs every module invariant at N <= 6 (randomized trials seeded, so the
/// run is reproducible). Completes well within a minute.
std::vector<CheckResult> run_verification_suite();

}  // namespace ghzsim
