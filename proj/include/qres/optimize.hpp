// SPDX-License-Identifier: MIT
//
// Derivative-free multi-restart minimization over the unitary group, the IQ
// convex set, and pure-state decompositions (mixing-unitary parameterization).

#pragma once

#include "qres/core.hpp"

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

namespace qres {

struct OptimizerConfig {
  int restarts = 16;
  int max_iterations = 2000;
  double tolerance = 1e-7;
  std::uint64_t seed = 20260814u;
};

// A convex decomposition rho = sum_e p_e |psi_e><psi_e| (components normalized).
struct Decomposition {
  RealVector probabilities;
  std::vector<ComplexVector> components;
};

struct OptimizationOutcome {
  double value = 0.0;
  RealVector parameters;  // argmin coordinates of the winning restart
  std::variant<std::monostate, ComplexMatrix, BipartiteState, Decomposition> certificate;
  int best_restart = -1;
  int restarts_used = 0;
  long long evaluations = 0;
  bool converged = false;
};

struct LocalSearchResult {
  RealVector x;
  double value = 0.0;
  long long evaluations = 0;
  bool converged = false;
};

using ScalarObjective = std::function<double(const RealVector&)>;

// splitmix64 finalizer: decorrelates per-restart (or per-stage) seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

// Nelder-Mead simplex descent; deterministic given (x0, options).
LocalSearchResult local_search(const ScalarObjective& f, const RealVector& x0,
                               int max_iterations, double tolerance,
                               double initial_step = 0.5);

// Multi-restart driver over R^n: restart r uses warm_starts[r] when present,
// otherwise a Gaussian start seeded by mix_seed(cfg.seed, r).  The certificate
// is left empty; callers that need one rebuild it from parameters.
OptimizationOutcome minimize_generic(Eigen::Index n, const ScalarObjective& objective,
                                     const OptimizerConfig& cfg,
                                     const std::vector<RealVector>& warm_starts = {},
                                     double random_scale = 1.0, double initial_step = 0.4);

// U = exp(iH) from d^2 real coordinates (d diagonal entries, then re/im pairs
// of the strict upper triangle).
ComplexMatrix unitary_from_params(const RealVector& h, Eigen::Index d);

// Inverse map (principal matrix log of a unitary); used for warm starts.
RealVector params_from_unitary(const ComplexMatrix& u);

// First r columns of exp(iH) on C^m from m^2 real coordinates.
ComplexMatrix isometry_from_params(const RealVector& h, Eigen::Index m, Eigen::Index r);

OptimizationOutcome minimize_over_unitary(
    Eigen::Index d, const std::function<double(const ComplexMatrix&)>& objective,
    const OptimizerConfig& cfg = {});

// sigma = blockdiag(W_j W_j^dag) / sum_j tr(W_j W_j^dag) over free d_b x d_b
// complex W_j; certificate always satisfies the block-diagonal structure.
OptimizationOutcome minimize_over_iq(
    Eigen::Index dim_a, Eigen::Index dim_b,
    const std::function<double(const BipartiteState&)>& objective,
    const OptimizerConfig& cfg = {});

// Convex-roof search: decompositions of size m >= rank(rho) reached through
// an m x rank mixing isometry applied to the spectral decomposition.  Each
// restart stages a rank-sized descent and embeds its optimum as the start of
// the m-sized descent.  ensemble_size == 0 selects m = rank^2.
OptimizationOutcome minimize_over_decompositions(
    const BipartiteState& rho, const std::function<double(const ComplexVector&)>& per_pure,
    Eigen::Index ensemble_size = 0, const OptimizerConfig& cfg = {});

// Decomposition realized by a given isometry (exposed for tests/diagnostics).
Decomposition decomposition_from_isometry(const SpectralDecomposition& sd, Eigen::Index rank,
                                          const ComplexMatrix& isometry);

}  // namespace qres
