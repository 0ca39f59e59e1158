// SPDX-License-Identifier: MIT
//
// Core types and linear-algebra primitives for finite-dimensional quantum
// states: validated density matrices, bipartite wrappers, spectral
// decompositions, entropies, fidelity and purification.

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace qres {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

// Validation tolerances shared across the library.
inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kUnitNormTol = 1e-9;
inline constexpr double kEntropyFloor = 1e-12;
inline constexpr Eigen::Index kMaxCompositeDim = 64;

// Thrown when an input violates a state/channel invariant.  The message names
// the invariant and the offending magnitude.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a numerical search cannot produce a usable result.
class optimizer_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A square complex matrix validated to be Hermitian (1e-9), positive
// semidefinite (eigenvalues >= -1e-9) and unit trace (1e-9).
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  // Skips validation; for internal construction of states that are valid by
  // construction (e.g. spectral reassembly, dephasing output).
  static DensityMatrix trusted(ComplexMatrix m);

  Eigen::Index dim() const { return mat_.rows(); }
  const ComplexMatrix& matrix() const { return mat_; }

 private:
  struct trusted_tag {};
  DensityMatrix(ComplexMatrix m, trusted_tag) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

// A density matrix on H_A (x) H_B with the flat index (j_a, j_b) = j_a*d_b + j_b.
class BipartiteState {
 public:
  BipartiteState(Eigen::Index dim_a, Eigen::Index dim_b, DensityMatrix rho);

  Eigen::Index dim_a() const { return dim_a_; }
  Eigen::Index dim_b() const { return dim_b_; }
  Eigen::Index dim() const { return rho_.dim(); }
  const DensityMatrix& density() const { return rho_; }
  const ComplexMatrix& matrix() const { return rho_.matrix(); }

 private:
  Eigen::Index dim_a_;
  Eigen::Index dim_b_;
  DensityMatrix rho_;
};

// A unit-norm (1e-9) complex vector.
class PureStateVector {
 public:
  explicit PureStateVector(ComplexVector v);

  Eigen::Index dim() const { return vec_.size(); }
  const ComplexVector& vector() const { return vec_; }

 private:
  ComplexVector vec_;
};

// Eigenvalues in descending order with matching orthonormal eigenvector
// columns.  Reconstruction and orthonormality hold to 1e-8; ordering within a
// degenerate group is made deterministic by echelon reduction and phase fixing.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

enum class Keep { A, B };

// Plain Kronecker product (no dimension cap; callers validate).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// rho_A (x) rho_B as a bipartite state; throws if d_a*d_b exceeds max_dim.
BipartiteState tensor_product(const DensityMatrix& a, const DensityMatrix& b,
                              Eigen::Index max_dim = kMaxCompositeDim);

DensityMatrix partial_trace(const BipartiteState& state, Keep keep);

// Hermitian eigendecomposition (input checked Hermitian to 1e-9).
SpectralDecomposition eig_hermitian(const ComplexMatrix& m);

// -sum lambda log2 lambda, eigenvalues below 1e-12 dropped.  Bits.
double von_neumann_entropy(const DensityMatrix& rho);

// Shannon entropy (bits) of a probability vector (entries >= -1e-9,
// sum within 1e-9 of 1); 0 log 0 = 0.
double shannon_entropy(const RealVector& p);

// Zeroes every block <j_a| . |j_a'> with j_a != j_a'.
BipartiteState dephase_a(const BipartiteState& state);

// Squared convention: F = (tr sqrt(sqrt(a) b sqrt(a)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

// Sum of |a_ij - b_ij| over all entries.
double l1_entrywise_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// |Psi> = sum_k sqrt(lambda_k) |v_k>|k>, environment dimension = rank
// (eigenvalues above 1e-12); flat index i_sys * rank + k_env.
PureStateVector purify(const DensityMatrix& rho);

// Convenience constructors.
DensityMatrix pure_density(const PureStateVector& psi);
BipartiteState bipartite(Eigen::Index dim_a, Eigen::Index dim_b, ComplexMatrix m);
BipartiteState bipartite_pure(Eigen::Index dim_a, Eigen::Index dim_b,
                              const PureStateVector& psi);

// Entropy of a numerically PSD Hermitian matrix without re-validation
// (internal hot path; floors eigenvalues like von_neumann_entropy).
double entropy_of_hermitian(const ComplexMatrix& m);

}  // namespace qres
