// Seeded property suites over the builtin fixtures: the acceptance criteria
// and the workbench `suite` command.
#pragma once

#include "dgla/dgla.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dgla {

struct CheckResult {
  std::string id;   // short stable identifier, e.g. "gauge-stability"
  std::string name; // human-readable title
  bool passed = true;
  std::size_t cases = 0;
  std::size_t skipped = 0;
  std::string detail; // first failure, or a summary
  double seconds = 0;
  double budget_seconds = 0; // 0 = no time limit
};

using NamedDgla = std::pair<std::string, DglaPtr>;

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::vector<NamedDgla> dglas;   // defaults to every builtin fixture
  std::vector<std::string> rings; // defaults to every builtin ring
  std::size_t samples = 100;          // per fixture × ring
  std::size_t homotopy_samples = 50;  // per fixture × ring
};

/// Fills empty dglas/rings with the builtin registry.
SuiteConfig with_defaults(SuiteConfig config);

/// The twelve acceptance criteria, in order.
std::vector<CheckResult> run_acceptance(const SuiteConfig &config);

/// Validation stage first; DGLAs failing it are reported with the offending
/// basis tuple and left out of the property checks that follow.
std::vector<CheckResult> run_suite(const SuiteConfig &config);

} // namespace dgla
