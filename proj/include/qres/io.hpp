// SPDX-License-Identifier: MIT
//
// JSON serialization for bipartite states and machine-readable run reports.

#pragma once

#include "qres/core.hpp"

#include <string>
#include <vector>

namespace qres {

// State files carry {"dims": [d_a, d_b], "matrix": [[re, im], ...]} with the
// matrix flattened row-major.  Parsing validates the density-matrix
// invariants; serialize/parse round-trips are bit-exact for finite entries.
BipartiteState parse_state_json(const std::string& text);
std::string serialize_state_json(const BipartiteState& state, int indent = 2);

BipartiteState load_state_file(const std::string& path);
void save_state_file(const std::string& path, const BipartiteState& state);

// One failed property instance inside a suite.
struct SuiteFailure {
  std::string property;
  std::uint64_t seed = 0;
  double magnitude = 0.0;  // size of the violation
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  int trials = 0;
  int checks = 0;
  std::vector<SuiteFailure> failures;

  bool passed() const { return failures.empty(); }
};

std::string serialize_suite_reports(const std::vector<SuiteReport>& reports, int indent = 2);

}  // namespace qres
