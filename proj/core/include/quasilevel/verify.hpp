#pragma once

#include <string>
#include <vector>

namespace quasilevel {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick invariant checks across all modules.
std::vector<CheckResult> run_verify_suite();

}  // namespace quasilevel
