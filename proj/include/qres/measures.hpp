// SPDX-License-Identifier: MIT
//
// The unified measure family: basis-dependent discord over the IQ free set,
// coherence as its product-state restriction, discord as its basis
// minimization, and entanglement as the convex roof of the pure-state value.
// Includes the two-qubit concurrence oracle.

#pragma once

#include "qres/core.hpp"
#include "qres/optimize.hpp"

#include <optional>

namespace qres {

enum class MeasureKind { RelativeEntropy, L1, Geometric, FidelityBased, ConvexRoofRandomness };
enum class BoundType { Exact, UpperBound };
enum class L1Mode { ClosedForm, Numeric };
enum class RoofMode { Nested, Joint };

using Certificate = std::variant<std::monostate, ComplexMatrix, BipartiteState, Decomposition>;

struct MeasureResult {
  double value = 0.0;
  BoundType bound_type = BoundType::Exact;
  Certificate certificate;
  long long evaluations = 0;
  int best_restart = -1;
};

struct MeasureConfig {
  OptimizerConfig opt;
  Eigen::Index ensemble_size = 0;  // 0 -> rank(rho)^2
  RoofMode roof_mode = RoofMode::Nested;
  bool numeric_inner = false;  // force the numeric inner basis search in the roof
};

// S(dephase_A(rho)) - S(rho); exact, certificate is the dephased state.
MeasureResult bd_relative_entropy(const BipartiteState& rho);

// Closed form: sum of entry moduli over the off-diagonal A-blocks (the
// entrywise distance to the block-matching free state, which is optimal).
// Numeric mode searches the IQ set directly and must agree within 1e-4.
MeasureResult bd_l1(const BipartiteState& rho, L1Mode mode = L1Mode::ClosedForm,
                    const MeasureConfig& cfg = {});

// 1 - max_sigma F(rho, sigma) over the IQ set (numeric upper bound).
MeasureResult bd_geometric(const BipartiteState& rho, const MeasureConfig& cfg = {});

// 1 - max_sigma sqrt(F(rho, sigma)) (numeric upper bound).
MeasureResult bd_fidelity(const BipartiteState& rho, const MeasureConfig& cfg = {});

// Shannon entropy of the A-marginal diagonal of a pure bipartite state.
double local_randomness(const PureStateVector& psi, Eigen::Index dim_a, Eigen::Index dim_b);

// Entropy of the reduced state of a pure bipartite state.
double schmidt_entropy(const PureStateVector& psi, Eigen::Index dim_a, Eigen::Index dim_b);

// Convex roof of local_randomness over decompositions (numeric upper bound).
MeasureResult bd_convex_roof_randomness(const BipartiteState& rho, const MeasureConfig& cfg = {});

// Dispatch on kind.
MeasureResult bd_measure(const BipartiteState& rho, MeasureKind kind,
                         const MeasureConfig& cfg = {});

// Coherence of rho_A as the basis-dependent value of rho_A (x) rho_B; rho_B
// defaults to the trivial one-dimensional state and never changes the value.
MeasureResult coherence(const DensityMatrix& rho_a, MeasureKind kind,
                        const MeasureConfig& cfg = {},
                        const std::optional<DensityMatrix>& rho_b = std::nullopt);

// min over local bases U_A of the basis-dependent value of (U_A (x) I) rho.
MeasureResult discord(const BipartiteState& rho, MeasureKind kind, const MeasureConfig& cfg = {});

// Convex roof of the per-component basis minimum.  For the RelativeEntropy
// kind the inner minimum is the component's Schmidt entropy (exact); the
// numeric inner search is available via cfg.numeric_inner.  Joint mode folds
// the per-component bases into a single parameter search (closed-form kinds).
MeasureResult entanglement(const BipartiteState& rho, MeasureKind kind,
                           const MeasureConfig& cfg = {});

// Two-qubit concurrence / entanglement of formation (spin-flip closed form).
double wootters_concurrence(const BipartiteState& rho);
double wootters_eof(const BipartiteState& rho);

struct UnifiedReport {
  MeasureResult coherence;
  MeasureResult bd;
  MeasureResult discord;
  MeasureResult entanglement;
};

UnifiedReport unified_table(const DensityMatrix& rho_a, const BipartiteState& rho_ab,
                            MeasureKind kind, const MeasureConfig& cfg = {});

// Binary entropy in bits (shared by the concurrence oracle and the QKD module).
double binary_entropy(double x);

}  // namespace qres
