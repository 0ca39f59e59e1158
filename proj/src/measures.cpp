// SPDX-License-Identifier: MIT

#include "qres/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qres {

namespace {

// Reduced budgets for searches nested inside an outer objective.
OptimizerConfig inner_config(const OptimizerConfig& outer) {
  OptimizerConfig inner = outer;
  inner.restarts = std::max(2, outer.restarts / 4);
  inner.max_iterations = std::max(300, outer.max_iterations / 4);
  inner.seed = mix_seed(outer.seed, 0x1ee7u);
  return inner;
}

double cross_block_l1(const ComplexMatrix& m, Eigen::Index dim_a, Eigen::Index dim_b) {
  double sum = 0.0;
  for (Eigen::Index ja = 0; ja < dim_a; ++ja) {
    for (Eigen::Index ka = 0; ka < dim_a; ++ka) {
      if (ja == ka) continue;
      sum += m.block(ja * dim_b, ka * dim_b, dim_b, dim_b).cwiseAbs().sum();
    }
  }
  return sum;
}

// A-marginal of a pure bipartite vector as a Gram matrix: psi reshaped into a
// dim_a x dim_b matrix P gives rho_A = P P^dagger.
ComplexMatrix reduced_a_of_pure(const ComplexVector& psi, Eigen::Index dim_a,
                                Eigen::Index dim_b) {
  ComplexMatrix p(dim_a, dim_b);
  for (Eigen::Index ja = 0; ja < dim_a; ++ja) {
    for (Eigen::Index jb = 0; jb < dim_b; ++jb) p(ja, jb) = psi(ja * dim_b + jb);
  }
  ComplexMatrix rho = p * p.adjoint();
  return ComplexMatrix(0.5 * (rho + rho.adjoint()));
}

// Probabilities of the A-basis outcomes on a pure bipartite vector.
RealVector a_outcome_probabilities(const ComplexVector& psi, Eigen::Index dim_a,
                                   Eigen::Index dim_b) {
  RealVector p = RealVector::Zero(dim_a);
  for (Eigen::Index ja = 0; ja < dim_a; ++ja) {
    for (Eigen::Index jb = 0; jb < dim_b; ++jb) p(ja) += std::norm(psi(ja * dim_b + jb));
  }
  return p;
}

MeasureResult from_outcome(OptimizationOutcome out, double value) {
  MeasureResult result;
  result.value = value;
  result.bound_type = BoundType::UpperBound;
  result.certificate = std::move(out.certificate);
  result.evaluations = out.evaluations;
  result.best_restart = out.best_restart;
  return result;
}

BipartiteState rotate_a(const ComplexMatrix& m, const ComplexMatrix& u, Eigen::Index dim_a,
                        Eigen::Index dim_b) {
  ComplexMatrix lift = kron(u, ComplexMatrix::Identity(dim_b, dim_b));
  ComplexMatrix rotated = lift * m * lift.adjoint();
  rotated = 0.5 * (rotated + rotated.adjoint());
  return BipartiteState(dim_a, dim_b, DensityMatrix::trusted(std::move(rotated)));
}

}  // namespace

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

MeasureResult bd_relative_entropy(const BipartiteState& rho) {
  BipartiteState dephased = dephase_a(rho);
  MeasureResult result;
  result.value = entropy_of_hermitian(dephased.matrix()) - entropy_of_hermitian(rho.matrix());
  result.bound_type = BoundType::Exact;
  result.certificate = std::move(dephased);
  return result;
}

MeasureResult bd_l1(const BipartiteState& rho, L1Mode mode, const MeasureConfig& cfg) {
  if (mode == L1Mode::ClosedForm) {
    MeasureResult result;
    result.value = cross_block_l1(rho.matrix(), rho.dim_a(), rho.dim_b());
    result.bound_type = BoundType::Exact;
    result.certificate = dephase_a(rho);
    return result;
  }
  const ComplexMatrix& m = rho.matrix();
  auto objective = [&](const BipartiteState& sigma) {
    return l1_entrywise_distance(m, sigma.matrix());
  };
  OptimizationOutcome out = minimize_over_iq(rho.dim_a(), rho.dim_b(), objective, cfg.opt);
  const double value = out.value;
  return from_outcome(std::move(out), value);
}

MeasureResult bd_geometric(const BipartiteState& rho, const MeasureConfig& cfg) {
  auto objective = [&](const BipartiteState& sigma) {
    return -fidelity(rho.density(), sigma.density());
  };
  OptimizationOutcome out = minimize_over_iq(rho.dim_a(), rho.dim_b(), objective, cfg.opt);
  const double value = 1.0 + out.value;
  return from_outcome(std::move(out), value);
}

MeasureResult bd_fidelity(const BipartiteState& rho, const MeasureConfig& cfg) {
  auto objective = [&](const BipartiteState& sigma) {
    return -std::sqrt(std::max(0.0, fidelity(rho.density(), sigma.density())));
  };
  OptimizationOutcome out = minimize_over_iq(rho.dim_a(), rho.dim_b(), objective, cfg.opt);
  const double value = 1.0 + out.value;
  return from_outcome(std::move(out), value);
}

double local_randomness(const PureStateVector& psi, Eigen::Index dim_a, Eigen::Index dim_b) {
  if (psi.dim() != dim_a * dim_b) throw validation_error("vector does not match dimensions");
  return shannon_entropy(a_outcome_probabilities(psi.vector(), dim_a, dim_b));
}

double schmidt_entropy(const PureStateVector& psi, Eigen::Index dim_a, Eigen::Index dim_b) {
  if (psi.dim() != dim_a * dim_b) throw validation_error("vector does not match dimensions");
  return entropy_of_hermitian(reduced_a_of_pure(psi.vector(), dim_a, dim_b));
}

MeasureResult bd_convex_roof_randomness(const BipartiteState& rho, const MeasureConfig& cfg) {
  const Eigen::Index da = rho.dim_a();
  const Eigen::Index db = rho.dim_b();
  auto per_pure = [da, db](const ComplexVector& psi) {
    return shannon_entropy(a_outcome_probabilities(psi, da, db));
  };
  OptimizationOutcome out =
      minimize_over_decompositions(rho, per_pure, cfg.ensemble_size, cfg.opt);
  const double value = out.value;
  return from_outcome(std::move(out), value);
}

MeasureResult bd_measure(const BipartiteState& rho, MeasureKind kind, const MeasureConfig& cfg) {
  switch (kind) {
    case MeasureKind::RelativeEntropy:
      return bd_relative_entropy(rho);
    case MeasureKind::L1:
      return bd_l1(rho, L1Mode::ClosedForm, cfg);
    case MeasureKind::Geometric:
      return bd_geometric(rho, cfg);
    case MeasureKind::FidelityBased:
      return bd_fidelity(rho, cfg);
    case MeasureKind::ConvexRoofRandomness:
      return bd_convex_roof_randomness(rho, cfg);
  }
  throw std::invalid_argument("unknown measure kind");
}

MeasureResult coherence(const DensityMatrix& rho_a, MeasureKind kind, const MeasureConfig& cfg,
                        const std::optional<DensityMatrix>& rho_b) {
  DensityMatrix aux = rho_b.has_value()
                          ? *rho_b
                          : DensityMatrix::trusted(ComplexMatrix::Identity(1, 1));
  BipartiteState joint = tensor_product(rho_a, aux);
  return bd_measure(joint, kind, cfg);
}

MeasureResult discord(const BipartiteState& rho, MeasureKind kind, const MeasureConfig& cfg) {
  const Eigen::Index da = rho.dim_a();
  const Eigen::Index db = rho.dim_b();
  const ComplexMatrix& m = rho.matrix();

  std::function<double(const BipartiteState&)> rotated_value;
  switch (kind) {
    case MeasureKind::RelativeEntropy: {
      // S(rho) is basis-invariant; precompute it once.
      const double base_entropy = entropy_of_hermitian(m);
      rotated_value = [base_entropy](const BipartiteState& rotated) {
        return entropy_of_hermitian(dephase_a(rotated).matrix()) - base_entropy;
      };
      break;
    }
    case MeasureKind::L1:
      rotated_value = [](const BipartiteState& rotated) {
        return cross_block_l1(rotated.matrix(), rotated.dim_a(), rotated.dim_b());
      };
      break;
    default: {
      MeasureConfig inner = cfg;
      inner.opt = inner_config(cfg.opt);
      rotated_value = [inner, kind](const BipartiteState& rotated) {
        return bd_measure(rotated, kind, inner).value;
      };
      break;
    }
  }

  auto objective = [&](const ComplexMatrix& u) {
    return rotated_value(rotate_a(m, u, da, db));
  };
  OptimizationOutcome out = minimize_over_unitary(da, objective, cfg.opt);
  const double value = out.value;
  return from_outcome(std::move(out), value);
}

namespace {

MeasureResult entanglement_joint(const BipartiteState& rho, MeasureKind kind,
                                 const MeasureConfig& cfg) {
  if (kind != MeasureKind::RelativeEntropy && kind != MeasureKind::L1) {
    throw std::invalid_argument("joint roof mode requires a closed-form kind");
  }
  const Eigen::Index da = rho.dim_a();
  const Eigen::Index db = rho.dim_b();

  // One parameter vector: an m x rank mixing isometry selecting the ensemble
  // plus one local basis per component, scored by the closed-form value.
  SpectralDecomposition sd = eig_hermitian(rho.matrix());
  Eigen::Index rank = 0;
  while (rank < sd.eigenvalues.size() && sd.eigenvalues(rank) > kEntropyFloor) ++rank;
  if (rank == 0) throw optimizer_error("joint roof: zero-rank state");
  Eigen::Index m = cfg.ensemble_size > 0 ? cfg.ensemble_size : rank * rank;
  m = std::max(m, rank);
  const Eigen::Index iso_params = m * m;
  const Eigen::Index basis_params = da * da;
  const Eigen::Index total = iso_params + m * basis_params;

  auto objective = [&](const RealVector& x) {
    const ComplexMatrix iso = isometry_from_params(x.head(iso_params), m, rank);
    const Decomposition dec = decomposition_from_isometry(sd, rank, iso);
    double value = 0.0;
    for (Eigen::Index e = 0; e < dec.probabilities.size(); ++e) {
      const ComplexMatrix u = unitary_from_params(
          x.segment(iso_params + e * basis_params, basis_params), da);
      const ComplexVector psi = kron(u, ComplexMatrix::Identity(db, db)) * dec.components[e];
      if (kind == MeasureKind::RelativeEntropy) {
        value += dec.probabilities(e) * shannon_entropy(a_outcome_probabilities(psi, da, db));
      } else {
        value += dec.probabilities(e) * cross_block_l1(psi * psi.adjoint(), da, db);
      }
    }
    return value;
  };

  std::vector<RealVector> warm = {RealVector::Zero(total)};
  OptimizationOutcome out =
      minimize_generic(total, objective, cfg.opt, warm, /*random_scale=*/0.7,
                       /*initial_step=*/0.3);
  out.certificate = decomposition_from_isometry(
      sd, rank, isometry_from_params(out.parameters.head(iso_params), m, rank));
  const double value = out.value;
  return from_outcome(std::move(out), value);
}

}  // namespace

MeasureResult entanglement(const BipartiteState& rho, MeasureKind kind,
                           const MeasureConfig& cfg) {
  if (cfg.roof_mode == RoofMode::Joint) return entanglement_joint(rho, kind, cfg);

  const Eigen::Index da = rho.dim_a();
  const Eigen::Index db = rho.dim_b();

  std::function<double(const ComplexVector&)> per_pure;
  if (kind == MeasureKind::RelativeEntropy && !cfg.numeric_inner) {
    // On a pure component the basis minimum of the dephased-vs-state entropy
    // gap is attained in the eigenbasis of the reduced state, so the inner
    // search collapses to the reduced-state entropy.
    per_pure = [da, db](const ComplexVector& psi) {
      return entropy_of_hermitian(reduced_a_of_pure(psi, da, db));
    };
  } else {
    const OptimizerConfig inner = inner_config(cfg.opt);
    MeasureConfig innermost = cfg;
    innermost.opt = inner_config(inner);
    per_pure = [da, db, inner, innermost, kind](const ComplexVector& psi) {
      auto basis_objective = [&](const ComplexMatrix& u) {
        const ComplexVector rotated = kron(u, ComplexMatrix::Identity(db, db)) * psi;
        switch (kind) {
          case MeasureKind::RelativeEntropy:
          case MeasureKind::ConvexRoofRandomness:
            // Both reduce to the rotated A-outcome entropy on pure states.
            return shannon_entropy(a_outcome_probabilities(rotated, da, db));
          case MeasureKind::L1:
            return cross_block_l1(rotated * rotated.adjoint(), da, db);
          case MeasureKind::Geometric:
          case MeasureKind::FidelityBased: {
            ComplexMatrix proj = rotated * rotated.adjoint();
            proj = 0.5 * (proj + proj.adjoint());
            BipartiteState state(da, db, DensityMatrix::trusted(std::move(proj)));
            return kind == MeasureKind::Geometric ? bd_geometric(state, innermost).value
                                                  : bd_fidelity(state, innermost).value;
          }
        }
        return 0.0;
      };
      return minimize_over_unitary(da, basis_objective, inner).value;
    };
  }

  OptimizationOutcome out =
      minimize_over_decompositions(rho, per_pure, cfg.ensemble_size, cfg.opt);
  const double value = out.value;
  return from_outcome(std::move(out), value);
}

double wootters_concurrence(const BipartiteState& rho) {
  if (rho.dim_a() != 2 || rho.dim_b() != 2) {
    throw validation_error("concurrence requires a two-qubit state");
  }
  const ComplexMatrix& m = rho.matrix();
  // (sigma_y (x) sigma_y) is real: antidiagonal (-1, 1, 1, -1).
  ComplexMatrix flip = ComplexMatrix::Zero(4, 4);
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const ComplexMatrix tilde = flip * m.conjugate() * flip;

  const SpectralDecomposition spec = eig_hermitian(m);
  ComplexMatrix sqrt_rho = ComplexMatrix::Zero(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    sqrt_rho += std::sqrt(std::max(0.0, spec.eigenvalues(i))) * spec.eigenvectors.col(i) *
                spec.eigenvectors.col(i).adjoint();
  }
  ComplexMatrix core = sqrt_rho * tilde * sqrt_rho;
  core = 0.5 * (core + core.adjoint());
  const SpectralDecomposition core_spec = eig_hermitian(core);
  double c = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i) {
    const double lam = std::sqrt(std::max(0.0, core_spec.eigenvalues(i)));
    c += (i == 0) ? lam : -lam;
  }
  return std::max(0.0, c);
}

double wootters_eof(const BipartiteState& rho) {
  const double c = wootters_concurrence(rho);
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

UnifiedReport unified_table(const DensityMatrix& rho_a, const BipartiteState& rho_ab,
                            MeasureKind kind, const MeasureConfig& cfg) {
  UnifiedReport report;
  report.coherence = coherence(rho_a, kind, cfg);
  report.bd = bd_measure(rho_ab, kind, cfg);
  report.discord = discord(rho_ab, kind, cfg);
  report.entanglement = entanglement(rho_ab, kind, cfg);
  return report;
}

}  // namespace qres
