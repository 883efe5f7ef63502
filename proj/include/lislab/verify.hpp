#pragma once

// Cross-route and oracle invariant suite behind the `verify` command.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace lislab {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs every check, recording exceptions as failures. `progress` (optional)
// sees each result as it completes.
std::vector<CheckResult> run_verify_suite(int threads = 1,
                                          const std::function<void(const CheckResult&)>& progress = {});

}  // namespace lislab
