#pragma once

// Named property suites driving `verify` in the CLI and the acceptance
// tests: structure relations, braid and trident moves, dualities with the
// canonical DD bimodule, pair cancellation, and the quasi-inverse homology.

#include <functional>
#include <string>
#include <vector>

#include "hfk/invariant.hpp"

namespace hfk {

struct VerifyOptions {
  int max_m = 3;
  int weight2 = 6;   // doubled input weight bound for DA checks
  int len = 4;       // input tuple length bound
  long budget = 200000;
  int jobs = 1;
};

struct SuiteResult {
  std::string name;
  bool ok = true;
  int cases = 0;
  std::string failures;  // first few failing case labels
  double seconds = 0;
};

std::vector<std::string> verify_suite_names();
// runs one suite; throws std::invalid_argument for unknown names
SuiteResult run_verify_suite(const std::string& name, const VerifyOptions& opt);

}  // namespace hfk
