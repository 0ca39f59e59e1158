// SPDX-License-Identifier: MIT
//
// Acceptance gate: recomputes every criterion of the acceptance table and
// prints one pass/fail line each; exits nonzero if any row fails.

#include "qres/acceptance.hpp"

#include <iostream>

int main() {
  const std::vector<qres::CriterionResult> rows = qres::run_acceptance();
  for (const qres::CriterionResult& row : rows) {
    std::cout << qres::format_criterion_line(row) << std::endl;
  }
  const bool ok = qres::all_passed(rows);
  std::cout << (ok ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: failures present")
            << std::endl;
  return ok ? 0 : 1;
}
