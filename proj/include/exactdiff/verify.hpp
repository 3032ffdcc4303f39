#pragma once

#include <string>
#include <vector>

// Named property suites behind `exactdiff verify` and the acceptance tests:
// Leibniz rules (exact first-order, exact binomial second-order, and the
// nonstandard backward-difference identity), the semigroup cross-check of the
// kernel path against nested first-order applications, the inverse pair
// difference-of-antidifference, and the Harrod-Domar residual grids.

namespace exactdiff {

struct CheckResult {
  std::string name;
  double measured = 0.0;  // deviation magnitude (NaN when the engine refused)
  double tolerance = 0.0;
  bool pass = false;
  std::string note;  // diagnostic, e.g. the refusal that fired
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

SuiteReport verify_leibniz();
SuiteReport verify_semigroup();
SuiteReport verify_inverse();
SuiteReport verify_residuals();
std::vector<SuiteReport> verify_all();

}  // namespace exactdiff
