// SPDX-License-Identifier: MIT

#include "qres/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace qres {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << std::scientific << x;
  return os.str();
}

void check_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw validation_error(std::string(what) + ": non-finite entry");
  }
}

double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Shannon term with the spectral floor; lambda <= floor contributes zero.
double entropy_term(double lambda) {
  if (lambda < kEntropyFloor) return 0.0;
  return -lambda * std::log2(lambda);
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() == 0) {
    throw validation_error("density matrix: not square");
  }
  check_finite(mat_, "density matrix");
  const double herm = hermiticity_defect(mat_);
  if (herm > kHermitianTol) {
    throw validation_error("density matrix: hermiticity violated by " + fmt(herm));
  }
  const double tr_err = std::abs(mat_.trace() - Complex(1.0, 0.0));
  if (tr_err > kTraceTol) {
    throw validation_error("density matrix: trace deviates from 1 by " + fmt(tr_err));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat_, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kPsdTol) {
    throw validation_error("density matrix: negative eigenvalue " + fmt(min_eig));
  }
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) {
  return DensityMatrix(std::move(m), trusted_tag{});
}

BipartiteState::BipartiteState(Eigen::Index dim_a, Eigen::Index dim_b, DensityMatrix rho)
    : dim_a_(dim_a), dim_b_(dim_b), rho_(std::move(rho)) {
  if (dim_a_ < 1 || dim_b_ < 1) {
    throw validation_error("bipartite state: nonpositive local dimension");
  }
  if (dim_a_ * dim_b_ != rho_.dim()) {
    throw validation_error("bipartite state: d_a*d_b = " + std::to_string(dim_a_ * dim_b_) +
                           " does not match matrix dimension " + std::to_string(rho_.dim()));
  }
}

PureStateVector::PureStateVector(ComplexVector v) : vec_(std::move(v)) {
  if (vec_.size() == 0) throw validation_error("pure state: empty vector");
  if (!vec_.allFinite()) throw validation_error("pure state: non-finite entry");
  const double norm_err = std::abs(vec_.norm() - 1.0);
  if (norm_err > kUnitNormTol) {
    throw validation_error("pure state: norm deviates from 1 by " + fmt(norm_err));
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

BipartiteState tensor_product(const DensityMatrix& a, const DensityMatrix& b,
                              Eigen::Index max_dim) {
  const Eigen::Index d = a.dim() * b.dim();
  if (d > max_dim) {
    throw validation_error("tensor product: composite dimension " + std::to_string(d) +
                           " exceeds maximum " + std::to_string(max_dim));
  }
  return BipartiteState(a.dim(), b.dim(), DensityMatrix::trusted(kron(a.matrix(), b.matrix())));
}

DensityMatrix partial_trace(const BipartiteState& state, Keep keep) {
  const Eigen::Index da = state.dim_a();
  const Eigen::Index db = state.dim_b();
  const ComplexMatrix& m = state.matrix();
  if (keep == Keep::A) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i) {
      for (Eigen::Index j = 0; j < da; ++j) {
        Complex s = 0.0;
        for (Eigen::Index b = 0; b < db; ++b) s += m(i * db + b, j * db + b);
        out(i, j) = s;
      }
    }
    return DensityMatrix::trusted(std::move(out));
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < db; ++i) {
    for (Eigen::Index j = 0; j < db; ++j) {
      Complex s = 0.0;
      for (Eigen::Index a = 0; a < da; ++a) s += m(a * db + i, a * db + j);
      out(i, j) = s;
    }
  }
  return DensityMatrix::trusted(std::move(out));
}

namespace {

// Deterministic basis inside a degenerate eigenspace: column-echelon form via
// QR of the adjoint block, pivots made real positive, columns ordered by pivot
// row.  Rotating inside a group perturbs reconstruction by at most the group
// width, which is far below the 1e-8 contract.
void canonicalize_group(ComplexMatrix& vectors, Eigen::Index begin, Eigen::Index len) {
  if (len < 2) return;
  const ComplexMatrix block = vectors.middleCols(begin, len);
  Eigen::HouseholderQR<ComplexMatrix> qr(block.adjoint());
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  vectors.middleCols(begin, len) = r.adjoint();
}

void fix_phase(ComplexMatrix& vectors, Eigen::Index col) {
  const Eigen::Index d = vectors.rows();
  Eigen::Index pivot = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double a = std::abs(vectors(i, col));
    if (a > best + 1e-12) {
      best = a;
      pivot = i;
    }
  }
  const Complex z = vectors(pivot, col);
  if (std::abs(z) > 0) vectors.col(col) *= std::conj(z) / std::abs(z);
  const double n = vectors.col(col).norm();
  if (n > 0) vectors.col(col) /= n;
}

}  // namespace

SpectralDecomposition eig_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw validation_error("eig: not square");
  }
  check_finite(m, "eig");
  const double herm = hermiticity_defect(m);
  if (herm > kHermitianTol) {
    throw validation_error("eig: hermiticity violated by " + fmt(herm));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success) {
    throw validation_error("eig: eigensolver failed to converge");
  }
  const Eigen::Index d = m.rows();
  SpectralDecomposition out;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {  // ascending -> descending
    out.eigenvalues(i) = es.eigenvalues()(d - 1 - i);
    out.eigenvectors.col(i) = es.eigenvectors().col(d - 1 - i);
  }
  const double scale = std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());
  const double group_tol = 1e-10 * scale;
  Eigen::Index begin = 0;
  while (begin < d) {
    Eigen::Index end = begin + 1;
    while (end < d && out.eigenvalues(begin) - out.eigenvalues(end) <= group_tol) ++end;
    canonicalize_group(out.eigenvectors, begin, end - begin);
    begin = end;
  }
  for (Eigen::Index i = 0; i < d; ++i) fix_phase(out.eigenvectors, i);
  return out;
}

double entropy_of_hermitian(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    s += entropy_term(es.eigenvalues()(i));
  }
  return std::max(0.0, s);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_hermitian(rho.matrix());
}

double shannon_entropy(const RealVector& p) {
  if (p.size() == 0) throw validation_error("shannon entropy: empty vector");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i))) throw validation_error("shannon entropy: non-finite entry");
    if (p(i) < -kPsdTol) {
      throw validation_error("shannon entropy: negative probability " + fmt(p(i)));
    }
    sum += p(i);
  }
  if (std::abs(sum - 1.0) > kTraceTol) {
    throw validation_error("shannon entropy: probabilities sum to 1 off by " + fmt(sum - 1.0));
  }
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) s += entropy_term(p(i));
  return std::max(0.0, s);
}

BipartiteState dephase_a(const BipartiteState& state) {
  const Eigen::Index da = state.dim_a();
  const Eigen::Index db = state.dim_b();
  ComplexMatrix out = ComplexMatrix::Zero(state.dim(), state.dim());
  for (Eigen::Index j = 0; j < da; ++j) {
    out.block(j * db, j * db, db, db) = state.matrix().block(j * db, j * db, db, db);
  }
  return BipartiteState(da, db, DensityMatrix::trusted(std::move(out)));
}

namespace {

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  RealVector lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw validation_error("fidelity: dimension mismatch " + std::to_string(a.dim()) + " vs " +
                           std::to_string(b.dim()));
  }
  const ComplexMatrix ra = psd_sqrt(a.matrix());
  const ComplexMatrix inner = ra * b.matrix() * ra;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (inner + inner.adjoint()),
                                                  Eigen::EigenvaluesOnly);
  double root_sum = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    root_sum += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  }
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

double l1_entrywise_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw validation_error("l1 distance: shape mismatch");
  }
  return (a - b).cwiseAbs().sum();
}

PureStateVector purify(const DensityMatrix& rho) {
  const SpectralDecomposition sd = eig_hermitian(rho.matrix());
  const Eigen::Index d = rho.dim();
  Eigen::Index rank = 0;
  while (rank < d && sd.eigenvalues(rank) > kEntropyFloor) ++rank;
  if (rank == 0) throw validation_error("purify: zero-rank input");
  ComplexVector psi = ComplexVector::Zero(d * rank);
  for (Eigen::Index k = 0; k < rank; ++k) {
    const double amp = std::sqrt(sd.eigenvalues(k));
    for (Eigen::Index i = 0; i < d; ++i) {
      psi(i * rank + k) = amp * sd.eigenvectors(i, k);
    }
  }
  psi /= psi.norm();
  return PureStateVector(std::move(psi));
}

DensityMatrix pure_density(const PureStateVector& psi) {
  return DensityMatrix::trusted(psi.vector() * psi.vector().adjoint());
}

BipartiteState bipartite(Eigen::Index dim_a, Eigen::Index dim_b, ComplexMatrix m) {
  return BipartiteState(dim_a, dim_b, DensityMatrix(std::move(m)));
}

BipartiteState bipartite_pure(Eigen::Index dim_a, Eigen::Index dim_b,
                              const PureStateVector& psi) {
  return BipartiteState(dim_a, dim_b, pure_density(psi));
}

}  // namespace qres
