// SPDX-License-Identifier: MIT
//
// qres: compute the unified resource measures on state files, run the axiom
// property suites, evaluate key rates, and reproduce the acceptance table.
// Human-readable tables by default; --json switches to machine output.
// Exit codes: 0 success, 1 suite/acceptance failure, 2 validation failure,
// 3 optimizer failure.

#include "qres/acceptance.hpp"
#include "qres/io.hpp"
#include "qres/measures.hpp"
#include "qres/qkd.hpp"
#include "qres/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace qres;

constexpr int kExitSuccess = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitOptimizer = 3;

const std::map<std::string, MeasureKind> kKindNames = {
    {"relative-entropy", MeasureKind::RelativeEntropy},
    {"l1", MeasureKind::L1},
    {"geometric", MeasureKind::Geometric},
    {"fidelity", MeasureKind::FidelityBased},
    {"convex-roof", MeasureKind::ConvexRoofRandomness},
};

std::string kind_name(MeasureKind kind) {
  for (const auto& [name, value] : kKindNames) {
    if (value == kind) return name;
  }
  return "?";
}

std::uint64_t fnv1a(const unsigned char* data, std::size_t n, std::uint64_t h = 1469598103934665603ULL) {
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t hash_matrix(const ComplexMatrix& m, std::uint64_t h) {
  const Eigen::Index dims[2] = {m.rows(), m.cols()};
  h = fnv1a(reinterpret_cast<const unsigned char*>(dims), sizeof(dims), h);
  return fnv1a(reinterpret_cast<const unsigned char*>(m.data()),
               sizeof(Complex) * static_cast<std::size_t>(m.size()), h);
}

// Stable fingerprint of the optimizer's witness for reproducibility reports.
std::pair<std::string, std::string> certificate_digest(const Certificate& cert) {
  std::uint64_t h = 1469598103934665603ULL;
  std::string type = "none";
  if (std::holds_alternative<ComplexMatrix>(cert)) {
    type = "basis-unitary";
    h = hash_matrix(std::get<ComplexMatrix>(cert), h);
  } else if (std::holds_alternative<BipartiteState>(cert)) {
    type = "free-state";
    h = hash_matrix(std::get<BipartiteState>(cert).matrix(), h);
  } else if (std::holds_alternative<Decomposition>(cert)) {
    type = "decomposition";
    const Decomposition& dec = std::get<Decomposition>(cert);
    h = fnv1a(reinterpret_cast<const unsigned char*>(dec.probabilities.data()),
              sizeof(double) * static_cast<std::size_t>(dec.probabilities.size()), h);
    for (const ComplexVector& psi : dec.components) {
      h = fnv1a(reinterpret_cast<const unsigned char*>(psi.data()),
                sizeof(Complex) * static_cast<std::size_t>(psi.size()), h);
    }
  } else {
    return {type, ""};
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << h;
  return {type, hex.str()};
}

json config_json(const MeasureConfig& cfg) {
  return {{"restarts", cfg.opt.restarts},
          {"max_iterations", cfg.opt.max_iterations},
          {"tolerance", cfg.opt.tolerance},
          {"seed", cfg.opt.seed},
          {"ensemble_size", cfg.ensemble_size},
          {"roof_mode", cfg.roof_mode == RoofMode::Nested ? "nested" : "joint"}};
}

struct MeasureRow {
  std::string measure;
  MeasureResult result;
  double seconds = 0.0;
};

int cmd_measure(const std::string& path, MeasureKind kind, const std::string& which,
                const MeasureConfig& cfg, bool as_json) {
  const BipartiteState state = load_state_file(path);
  std::vector<MeasureRow> rows;
  const auto timed = [&](const std::string& name, auto&& compute) {
    const auto start = std::chrono::steady_clock::now();
    MeasureResult result = compute();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back({name, std::move(result), seconds});
  };

  const DensityMatrix rho_a =
      state.dim_b() == 1 ? state.density() : partial_trace(state, Keep::A);
  if (which == "bd" || which == "all") {
    timed("bd", [&] { return bd_measure(state, kind, cfg); });
  }
  if (which == "coherence" || which == "all") {
    timed("coherence", [&] { return coherence(rho_a, kind, cfg); });
  }
  if (which == "discord" || which == "all") {
    timed("discord", [&] { return discord(state, kind, cfg); });
  }
  if (which == "entanglement" || which == "all") {
    timed("entanglement", [&] { return entanglement(state, kind, cfg); });
  }

  if (as_json) {
    json doc;
    doc["state"] = path;
    doc["dims"] = {state.dim_a(), state.dim_b()};
    doc["kind"] = kind_name(kind);
    doc["config"] = config_json(cfg);
    json results = json::array();
    for (const MeasureRow& row : rows) {
      const auto [cert_type, digest] = certificate_digest(row.result.certificate);
      results.push_back({{"measure", row.measure},
                         {"value", row.result.value},
                         {"bound_type",
                          row.result.bound_type == BoundType::Exact ? "exact" : "upper-bound"},
                         {"certificate", {{"type", cert_type}, {"digest", digest}}},
                         {"evaluations", row.result.evaluations},
                         {"best_restart", row.result.best_restart},
                         {"seconds", row.seconds}});
    }
    doc["results"] = std::move(results);
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "state " << path << "  dims [" << state.dim_a() << ", " << state.dim_b()
              << "]  kind " << kind_name(kind) << "\n";
    std::cout << std::left << std::setw(14) << "measure" << std::right << std::setw(16)
              << "value" << std::setw(13) << "bound" << std::setw(12) << "time" << '\n';
    for (const MeasureRow& row : rows) {
      std::cout << std::left << std::setw(14) << row.measure << std::right << std::fixed
                << std::setprecision(9) << std::setw(16) << row.result.value << std::setw(13)
                << (row.result.bound_type == BoundType::Exact ? "exact" : "upper-bound")
                << std::setprecision(3) << std::setw(11) << row.seconds << "s\n";
    }
  }
  return kExitSuccess;
}

int cmd_axioms(const std::string& suite, const SuiteOptions& options, bool as_json) {
  const std::vector<SuiteReport> reports = run_suites(suite, options);
  bool ok = true;
  for (const SuiteReport& report : reports) ok = ok && report.passed();
  if (as_json) {
    std::cout << serialize_suite_reports(reports) << '\n';
  } else {
    for (const SuiteReport& report : reports) {
      std::cout << std::left << std::setw(14) << report.suite << " trials " << std::setw(5)
                << report.trials << " checks " << std::setw(6) << report.checks
                << (report.passed() ? " PASS" : " FAIL") << '\n';
      for (const SuiteFailure& f : report.failures) {
        std::cout << "  failure: " << f.property << "  seed " << f.seed << "  " << f.detail
                  << '\n';
      }
    }
  }
  return ok ? kExitSuccess : kExitSuiteFailure;
}

int cmd_qkd(const std::string& path, const std::vector<double>& bell_errors, bool as_json) {
  BipartiteState state = bell_errors.empty()
                             ? load_state_file(path)
                             : bb84_bell_diagonal(bell_errors[0], bell_errors[1]);
  const KeyRateReport report = devetak_winter_rate(QkdSetup(std::move(state)));
  if (as_json) {
    json doc = {{"key_rate", report.key_rate},
                {"s_za_e", report.s_za_e},
                {"s_za_zb", report.s_za_zb},
                {"route_gap", report.route_gap}};
    if (!bell_errors.empty()) doc["bell_diagonal"] = {bell_errors[0], bell_errors[1]};
    if (!path.empty()) doc["state"] = path;
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << std::fixed << std::setprecision(9);
    std::cout << "S(Z_A|E)   " << std::setw(14) << report.s_za_e << '\n';
    std::cout << "S(Z_A|Z_B) " << std::setw(14) << report.s_za_zb << '\n';
    std::cout << "key rate   " << std::setw(14) << report.key_rate << '\n';
    std::cout << "route gap  " << std::scientific << std::setprecision(3) << std::setw(14)
              << report.route_gap << '\n';
  }
  return kExitSuccess;
}

int cmd_demo(bool as_json) {
  const std::vector<CriterionResult> rows = run_acceptance();
  if (as_json) {
    std::cout << acceptance_json(rows) << '\n';
  } else {
    for (const CriterionResult& row : rows) std::cout << format_criterion_line(row) << '\n';
    const bool ok = all_passed(rows);
    std::cout << (ok ? "all criteria passed" : "some criteria failed") << '\n';
  }
  return all_passed(rows) ? kExitSuccess : kExitSuiteFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unified quantum-resource measures: basis-dependent discord, coherence, "
               "discord, entanglement, and key rates"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit machine-readable JSON instead of tables");

  MeasureConfig cfg;
  SuiteOptions suite_options;

  // measure
  auto* measure = app.add_subcommand("measure", "evaluate measures on a state file");
  measure->fallthrough();
  std::string state_path;
  std::string kind_name_arg = "relative-entropy";
  std::string which = "bd";
  measure->add_option("state", state_path, "state file (JSON)")->required();
  measure->add_option("--kind", kind_name_arg, "measure kind")
      ->check(CLI::IsMember({"relative-entropy", "l1", "geometric", "fidelity", "convex-roof"}));
  measure->add_option("--measure", which, "which measure(s) to compute")
      ->check(CLI::IsMember({"bd", "coherence", "discord", "entanglement", "all"}));
  measure->add_option("--restarts", cfg.opt.restarts, "optimizer restarts");
  measure->add_option("--max-iters", cfg.opt.max_iterations, "simplex iteration cap");
  measure->add_option("--tol", cfg.opt.tolerance, "simplex convergence tolerance");
  measure->add_option("--seed", cfg.opt.seed, "optimizer seed");

  // axioms
  auto* axioms = app.add_subcommand("axioms", "run the seeded property suites");
  axioms->fallthrough();
  std::string suite = "all";
  axioms->add_option("--suite", suite, "suite to run")
      ->check(CLI::IsMember({"bd", "coherence", "discord", "entanglement", "lemmas", "all"}));
  axioms->add_option("--trials", suite_options.trials, "trial count (closed-form checks)")
      ->check(CLI::PositiveNumber);
  axioms->add_option("--seed", suite_options.seed, "base seed");
  axioms->add_option("--restarts", suite_options.opt.restarts, "optimizer restarts");
  axioms->add_option("--max-iters", suite_options.opt.max_iterations, "simplex iteration cap");
  axioms->add_option("--tol", suite_options.opt.tolerance, "simplex convergence tolerance");

  // qkd
  auto* qkd = app.add_subcommand("qkd", "Devetak-Winter key rate of a state");
  qkd->fallthrough();
  std::string qkd_path;
  std::vector<double> bell_errors;
  auto* qkd_state = qkd->add_option("state", qkd_path, "state file (JSON)");
  qkd->add_option("--bell-diagonal", bell_errors,
                  "bit and phase error rates of the Bell-diagonal family")
      ->expected(2)
      ->excludes(qkd_state);

  // demo
  app.add_subcommand("demo", "recompute the acceptance table")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? kExitSuccess : kExitValidation;
  }

  try {
    if (measure->parsed()) {
      return cmd_measure(state_path, kKindNames.at(kind_name_arg), which, cfg, as_json);
    }
    if (axioms->parsed()) return cmd_axioms(suite, suite_options, as_json);
    if (qkd->parsed()) {
      if (qkd_path.empty() && bell_errors.empty()) {
        throw validation_error("qkd: provide a state file or --bell-diagonal e_b e_p");
      }
      return cmd_qkd(qkd_path, bell_errors, as_json);
    }
    return cmd_demo(as_json);
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const optimizer_error& e) {
    std::cerr << "optimizer error: " << e.what() << '\n';
    return kExitOptimizer;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}
