// SPDX-License-Identifier: MIT
//
// Seeded property suites behind the `axioms` command: each suite replays the
// behavioral invariants of one measure family and records witness seeds for
// any violation.  Closed-form properties run at full trial count; properties
// that need the optimizer run at trials/8.

#pragma once

#include "qres/io.hpp"
#include "qres/optimize.hpp"

#include <string>
#include <vector>

namespace qres {

struct SuiteOptions {
  int trials = 200;
  std::uint64_t seed = 1;
  OptimizerConfig opt;
};

// Suite names: bd, coherence, discord, entanglement, lemmas.
std::vector<std::string> suite_names();

SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

// name == "all" runs every suite; otherwise a single-element vector.
std::vector<SuiteReport> run_suites(const std::string& name, const SuiteOptions& options);

}  // namespace qres
