// SPDX-License-Identifier: MIT
//
// Constructors and samplers for the free-state hierarchy (incoherent, II, IC,
// IQ, CQ, separable), Bell-family states, and seeded random states/unitaries.

#pragma once

#include "qres/core.hpp"

#include <cstdint>
#include <vector>

namespace qres {

enum class FreeStateClass { Incoherent, II, IC, IQ, CQ, Separable };

// Seeded Ginibre sampling spec; rank in [1, dim].
struct RandomSpec {
  Eigen::Index dim = 2;
  Eigen::Index rank = 2;
  std::uint64_t seed = 0;
};

// diag(p) for a probability vector p.
DensityMatrix incoherent_state(const RealVector& p);

// (1/sqrt(d)) sum_j e^{i phi_j} |j>; phases default to zero.
PureStateVector maximally_coherent(Eigen::Index d, const RealVector& phases = RealVector());

// sum_{j_a j_b} P(j_a, j_b) |j_a j_b><j_a j_b| for a joint probability table.
BipartiteState ii_state(const RealMatrix& joint_p);

// (I (x) U_B) sigma_II (I (x) U_B)^dagger.
BipartiteState ic_state(const RealMatrix& joint_p, const ComplexMatrix& u_b);

// blockdiag(p_j * rho_B^j): the free set of the basis-dependent theory.
BipartiteState iq_state(const RealVector& p, const std::vector<ComplexMatrix>& blocks);

// sum_n p_n |n><n| (x) rho_B^n for an orthonormal family {|n>} on A.
BipartiteState cq_state(const RealVector& p, const std::vector<ComplexVector>& basis,
                        const std::vector<ComplexMatrix>& blocks);

// sum_n w_n rho_A^n (x) rho_B^n.
BipartiteState separable_state(const RealVector& w, const std::vector<ComplexMatrix>& rho_a,
                               const std::vector<ComplexMatrix>& rho_b);

// k = 0..3 -> Phi+, Phi-, Psi+, Psi- on 2x2.
PureStateVector bell_state(int k);

// Mixture of the four Bell projectors with weights lambda (4-simplex).
BipartiteState bell_diagonal(const Eigen::Vector4d& lambda);

// p |Phi+><Phi+| + (1-p) I/4 via the Bell-diagonal constructor.
BipartiteState werner_state(double p);

// G G^dagger / tr with G a dim x rank complex Ginibre matrix.
DensityMatrix random_density(const RandomSpec& spec);

PureStateVector random_pure(Eigen::Index dim, std::uint64_t seed);

// QR of a complex Gaussian matrix with the R diagonal phase-fixed.
ComplexMatrix haar_unitary(Eigen::Index dim, std::uint64_t seed);

// Entrywise block tests for membership in the IQ / II sets.
bool is_iq(const BipartiteState& state, double tol = 1e-8);
bool is_ii(const BipartiteState& state, double tol = 1e-8);

// Random bipartite state of the given local dimensions (full rank by default;
// rank = 0 means d_a*d_b).
BipartiteState random_bipartite(Eigen::Index dim_a, Eigen::Index dim_b, std::uint64_t seed,
                                Eigen::Index rank = 0);

// Seeded sampler for each free-state class (used by the property suites).
BipartiteState sample_free_state(FreeStateClass cls, Eigen::Index dim_a, Eigen::Index dim_b,
                                 std::uint64_t seed);

// Random probability vector on the simplex (flat Dirichlet).
RealVector random_simplex(Eigen::Index n, std::uint64_t seed);

}  // namespace qres
