// SPDX-License-Identifier: MIT

#include "qres/channels.hpp"

#include "qres/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace qres {

namespace {

double completeness_defect(const ComplexMatrix& sum, Eigen::Index d) {
  return (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw validation_error("kraus channel: no operators");
  out_ = ops_[0].rows();
  in_ = ops_[0].cols();
  if (in_ < 1 || out_ < 1) throw validation_error("kraus channel: empty operator");
  ComplexMatrix sum = ComplexMatrix::Zero(in_, in_);
  for (const auto& k : ops_) {
    if (k.rows() != out_ || k.cols() != in_) {
      throw validation_error("kraus channel: inconsistent operator shapes");
    }
    if (!k.allFinite()) throw validation_error("kraus channel: non-finite entry");
    sum += k.adjoint() * k;
  }
  const double defect = completeness_defect(sum, in_);
  if (defect > kHermitianTol) {
    throw validation_error("kraus channel: completeness violated by " + std::to_string(defect));
  }
}

IncoherentUnitary::IncoherentUnitary(std::vector<Eigen::Index> perm, RealVector phases)
    : perm_(std::move(perm)), phases_(std::move(phases)) {
  const Eigen::Index d = phases_.size();
  if (d == 0 || perm_.size() != static_cast<std::size_t>(d)) {
    throw validation_error("incoherent unitary: permutation/phase size mismatch");
  }
  std::vector<bool> seen(d, false);
  for (const Eigen::Index t : perm_) {
    if (t < 0 || t >= d || seen[t]) {
      throw validation_error("incoherent unitary: not a permutation");
    }
    seen[t] = true;
  }
}

ComplexMatrix IncoherentUnitary::matrix() const {
  const Eigen::Index d = dim();
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    u(perm_[j], j) = Complex(std::cos(phases_(j)), std::sin(phases_(j)));
  }
  return u;
}

SqiChannel::SqiChannel(std::vector<std::pair<ComplexMatrix, ComplexMatrix>> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) throw validation_error("sqi channel: no terms");
  da_ = terms_[0].first.rows();
  db_ = terms_[0].second.rows();
  ComplexMatrix sum = ComplexMatrix::Zero(da_ * db_, da_ * db_);
  for (const auto& [a, b] : terms_) {
    if (a.rows() != da_ || a.cols() != da_ || b.rows() != db_ || b.cols() != db_) {
      throw validation_error("sqi channel: inconsistent term shapes");
    }
    if (!is_incoherent_kraus(a)) {
      throw validation_error("sqi channel: A-side operator is not incoherent");
    }
    sum += kron(ComplexMatrix(a.adjoint() * a), ComplexMatrix(b.adjoint() * b));
  }
  const double defect = completeness_defect(sum, da_ * db_);
  if (defect > kHermitianTol) {
    throw validation_error("sqi channel: joint completeness violated by " +
                           std::to_string(defect));
  }
}

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho) {
  if (rho.dim() != channel.input_dim()) {
    throw validation_error("apply channel: input dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(channel.output_dim(), channel.output_dim());
  for (const auto& k : channel.operators()) out += k * rho.matrix() * k.adjoint();
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix::trusted(std::move(out));
}

BipartiteState apply_channel(const KrausChannel& channel, const BipartiteState& state) {
  if (channel.input_dim() != state.dim() || channel.output_dim() != state.dim()) {
    throw validation_error("apply channel: bipartite dimension mismatch");
  }
  return BipartiteState(state.dim_a(), state.dim_b(), apply_channel(channel, state.density()));
}

BipartiteState apply_channel(const SqiChannel& channel, const BipartiteState& state) {
  if (channel.dim_a() != state.dim_a() || channel.dim_b() != state.dim_b()) {
    throw validation_error("apply channel: sqi dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(state.dim(), state.dim());
  for (const auto& [a, b] : channel.terms()) {
    const ComplexMatrix k = kron(a, b);
    out += k * state.matrix() * k.adjoint();
  }
  out = 0.5 * (out + out.adjoint());
  return BipartiteState(state.dim_a(), state.dim_b(), DensityMatrix::trusted(std::move(out)));
}

bool is_incoherent_kraus(const ComplexMatrix& k, double tol) {
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    int nonzero = 0;
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      if (std::abs(k(i, j)) > tol && ++nonzero > 1) return false;
    }
  }
  return true;
}

bool is_incoherent_unitary(const ComplexMatrix& u, double unitary_tol, double entry_tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  const double defect =
      (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
  return defect <= unitary_tol && is_incoherent_kraus(u, entry_tol);
}

IncoherentUnitary invert(const IncoherentUnitary& u) {
  const Eigen::Index d = u.dim();
  std::vector<Eigen::Index> inv(d);
  RealVector phases(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    inv[u.permutation()[j]] = j;
    phases(u.permutation()[j]) = -u.phases()(j);
  }
  return IncoherentUnitary(std::move(inv), std::move(phases));
}

IncoherentUnitary random_incoherent_unitary(Eigen::Index d, std::uint64_t seed) {
  if (d < 1) throw validation_error("random incoherent unitary: dimension < 1");
  std::mt19937_64 rng(seed);
  std::vector<Eigen::Index> perm(d);
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  RealVector phases(d);
  for (Eigen::Index j = 0; j < d; ++j) phases(j) = angle(rng);
  return IncoherentUnitary(std::move(perm), std::move(phases));
}

namespace {

// Kraus family {B_n} from the first block column of a Haar unitary on
// H (x) C^terms: B_n = (I (x) <n|) U (I (x) |0>), complete by unitarity.
std::vector<ComplexMatrix> isometry_kraus(Eigen::Index d, Eigen::Index terms,
                                          std::uint64_t seed) {
  const ComplexMatrix u = haar_unitary(d * terms, seed);
  std::vector<ComplexMatrix> ops;
  ops.reserve(terms);
  for (Eigen::Index n = 0; n < terms; ++n) {
    ComplexMatrix b(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        b(i, j) = u(i * terms + n, j * terms + 0);
      }
    }
    ops.push_back(std::move(b));
  }
  return ops;
}

}  // namespace

SqiChannel random_sqi_channel(Eigen::Index dim_a, Eigen::Index dim_b, std::uint64_t seed) {
  if (dim_a < 1 || dim_b < 1) throw validation_error("random sqi channel: dimension < 1");
  std::mt19937_64 rng(seed);
  const std::uint64_t s_unitary = rng();
  const std::uint64_t s_kraus = rng();
  const ComplexMatrix ui = random_incoherent_unitary(dim_a, s_unitary).matrix();
  const Eigen::Index b_terms = 1 + static_cast<Eigen::Index>(rng() % 3);  // 1..3
  const std::vector<ComplexMatrix> bops = isometry_kraus(dim_b, b_terms, s_kraus);

  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> terms;
  if (rng() % 2 == 0) {
    for (const auto& b : bops) terms.emplace_back(ui, b);
  } else {
    // Mix in a second permutation branch on A with probability weights (q, 1-q).
    std::uniform_real_distribution<double> unit(0.1, 0.9);
    const double q = unit(rng);
    const ComplexMatrix p2 = random_incoherent_unitary(dim_a, rng()).matrix();
    for (const auto& b : bops) {
      terms.emplace_back(std::sqrt(q) * ui, b);
      terms.emplace_back(std::sqrt(1.0 - q) * (p2 * ui), b);
    }
  }
  return SqiChannel(std::move(terms));
}

KrausChannel random_one_round_locc(Eigen::Index dim_a, Eigen::Index dim_b, std::uint64_t seed) {
  if (dim_a < 1 || dim_b < 1) throw validation_error("random locc: dimension < 1");
  std::mt19937_64 rng(seed);
  const Eigen::Index outcomes = 2 + static_cast<Eigen::Index>(rng() % 3);  // 2..4
  const ComplexMatrix u = haar_unitary(dim_a * outcomes, rng());
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index k = 0; k < outcomes; ++k) {
    ComplexMatrix m(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i) {
      for (Eigen::Index j = 0; j < dim_a; ++j) {
        m(i, j) = u(i * outcomes + k, j * outcomes + 0);
      }
    }
    ops.push_back(kron(m, haar_unitary(dim_b, rng())));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel random_incoherent_channel(Eigen::Index d, int terms, std::uint64_t seed) {
  if (d < 1) throw validation_error("random incoherent channel: dimension < 1");
  if (terms < 1) throw validation_error("random incoherent channel: terms < 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // Term n routes column j to row pi_n(j) with amplitude a_n(j); the per-term
  // permutations keep each K_n incoherent and make the cross terms of
  // sum_n K_n^dag K_n vanish exactly, so completeness reduces to the
  // per-column normalization sum_n |a_n(j)|^2 = 1.
  std::vector<ComplexMatrix> ops(terms, ComplexMatrix::Zero(d, d));
  std::vector<std::vector<Eigen::Index>> targets;
  for (int n = 0; n < terms; ++n) {
    std::vector<Eigen::Index> perm(d);
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    targets.push_back(std::move(perm));
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    ComplexVector amp(terms);
    for (int n = 0; n < terms; ++n) amp(n) = Complex(gauss(rng), gauss(rng));
    amp /= amp.norm();
    for (int n = 0; n < terms; ++n) ops[n](targets[n][j], j) = amp(n);
  }
  return KrausChannel(std::move(ops));
}

}  // namespace qres
