// SPDX-License-Identifier: MIT
//
// The acceptance table: ten deterministic end-to-end checks with tolerances
// and runtime budgets pinned in code.  Shared by the `demo` command and the
// acceptance test binary; each row reports computed vs allowed vs pass/fail.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qres {

struct CriterionResult {
  int index = 0;
  std::string name;
  double computed = 0.0;       // worst observed magnitude
  double threshold = 0.0;      // allowed bound for `computed`
  bool sub_ok = true;          // secondary pinned checks (separate tolerances)
  bool value_ok = false;       // computed within threshold && sub_ok
  double seconds = 0.0;        // wall time spent
  double budget_seconds = 0.0; // 0 = no runtime budget for this row
  bool passed = false;         // value_ok && within budget
  std::string detail;          // sub-check magnitudes, witnesses, errors
};

// Runs all ten criteria with the pinned seed and configurations.
std::vector<CriterionResult> run_acceptance();

bool all_passed(const std::vector<CriterionResult>& rows);

// "[ 3/10] FAIL  name  computed ... <= ...  time ...": one row per line.
std::string format_criterion_line(const CriterionResult& row);

std::string acceptance_json(const std::vector<CriterionResult>& rows);

}  // namespace qres
