// SPDX-License-Identifier: MIT
//
// Kraus channels, the two-sided free operations of the basis-dependent theory
// (incoherent on A, arbitrary on B), incoherent unitaries, and seeded samplers.

#pragma once

#include "qres/core.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qres {

// CPTP map given by Kraus operators; completeness enforced to 1e-9.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> ops);

  Eigen::Index input_dim() const { return in_; }
  Eigen::Index output_dim() const { return out_; }
  const std::vector<ComplexMatrix>& operators() const { return ops_; }

 private:
  Eigen::Index in_ = 0;
  Eigen::Index out_ = 0;
  std::vector<ComplexMatrix> ops_;
};

// Permutation-with-phases unitary: matrix()(perm[j], j) = e^{i phase[j]}.
class IncoherentUnitary {
 public:
  IncoherentUnitary(std::vector<Eigen::Index> perm, RealVector phases);

  Eigen::Index dim() const { return phases_.size(); }
  const std::vector<Eigen::Index>& permutation() const { return perm_; }
  const RealVector& phases() const { return phases_; }
  ComplexMatrix matrix() const;

 private:
  std::vector<Eigen::Index> perm_;
  RealVector phases_;
};

// Product-form channel sum_n (A_n (x) B_n) rho (A_n (x) B_n)^dagger with every
// A_n an incoherent Kraus operator and joint completeness
// sum_n A_n^dag A_n (x) B_n^dag B_n = I.
class SqiChannel {
 public:
  explicit SqiChannel(std::vector<std::pair<ComplexMatrix, ComplexMatrix>> terms);

  Eigen::Index dim_a() const { return da_; }
  Eigen::Index dim_b() const { return db_; }
  const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& terms() const { return terms_; }

 private:
  Eigen::Index da_ = 0;
  Eigen::Index db_ = 0;
  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> terms_;
};

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho);

// Channel acting on the full AB space (dims preserved).
BipartiteState apply_channel(const KrausChannel& channel, const BipartiteState& state);

BipartiteState apply_channel(const SqiChannel& channel, const BipartiteState& state);

// Every column has at most one entry of modulus > tol.
bool is_incoherent_kraus(const ComplexMatrix& k, double tol = 1e-10);

// Unitary to 1e-9 and incoherent as a Kraus operator.
bool is_incoherent_unitary(const ComplexMatrix& u, double unitary_tol = 1e-9,
                           double entry_tol = 1e-10);

// Inverse permutation with negated phases; an involution-compatible exact form.
IncoherentUnitary invert(const IncoherentUnitary& u);

IncoherentUnitary random_incoherent_unitary(Eigen::Index d, std::uint64_t seed);

// Random free operation: incoherent unitary on A tensored with a random Kraus
// channel on B (partial-isometry columns of a Haar unitary), optionally mixed
// with basis-permutation terms on A.
SqiChannel random_sqi_channel(Eigen::Index dim_a, Eigen::Index dim_b, std::uint64_t seed);

// One measurement round: Kraus terms M_k (x) U_k with {M_k} a POVM sampled by
// projecting the ancilla of a Haar unitary and U_k Haar unitaries on B.
KrausChannel random_one_round_locc(Eigen::Index dim_a, Eigen::Index dim_b, std::uint64_t seed);

// Random single-party incoherent channel (every Kraus operator incoherent).
KrausChannel random_incoherent_channel(Eigen::Index d, int terms, std::uint64_t seed);

}  // namespace qres
