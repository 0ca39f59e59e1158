// SPDX-License-Identifier: MIT

#include "qres/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qres {

using nlohmann::json;

BipartiteState parse_state_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("state file: invalid JSON: ") + e.what());
  }
  if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].size() != 2) {
    throw validation_error("state file: \"dims\" must be [d_a, d_b]");
  }
  const Eigen::Index da = doc["dims"][0].get<Eigen::Index>();
  const Eigen::Index db = doc["dims"][1].get<Eigen::Index>();
  if (da < 1 || db < 1 || da * db > kMaxCompositeDim) {
    throw validation_error("state file: dimensions outside [1, " +
                           std::to_string(kMaxCompositeDim) + "]");
  }
  const Eigen::Index d = da * db;
  if (!doc.contains("matrix") || !doc["matrix"].is_array() ||
      doc["matrix"].size() != static_cast<std::size_t>(d * d)) {
    throw validation_error("state file: \"matrix\" must hold " + std::to_string(d * d) +
                           " [re, im] pairs (row-major)");
  }
  ComplexMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const json& entry = doc["matrix"][static_cast<std::size_t>(i * d + j)];
      if (!entry.is_array() || entry.size() != 2) {
        throw validation_error("state file: matrix entries must be [re, im] pairs");
      }
      m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return BipartiteState(da, db, DensityMatrix(std::move(m)));
}

std::string serialize_state_json(const BipartiteState& state, int indent) {
  json doc;
  doc["dims"] = {state.dim_a(), state.dim_b()};
  json entries = json::array();
  const ComplexMatrix& m = state.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  doc["matrix"] = std::move(entries);
  return doc.dump(indent);
}

BipartiteState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open state file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state_json(buffer.str());
}

void save_state_file(const std::string& path, const BipartiteState& state) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write state file: " + path);
  out << serialize_state_json(state) << '\n';
}

std::string serialize_suite_reports(const std::vector<SuiteReport>& reports, int indent) {
  json doc = json::array();
  for (const SuiteReport& report : reports) {
    json failures = json::array();
    for (const SuiteFailure& f : report.failures) {
      failures.push_back({{"property", f.property},
                          {"seed", f.seed},
                          {"magnitude", f.magnitude},
                          {"detail", f.detail}});
    }
    doc.push_back({{"suite", report.suite},
                   {"trials", report.trials},
                   {"checks", report.checks},
                   {"passed", report.passed()},
                   {"failures", std::move(failures)}});
  }
  return doc.dump(indent);
}

}  // namespace qres
