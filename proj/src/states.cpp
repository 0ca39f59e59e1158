// SPDX-License-Identifier: MIT

#include "qres/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qres {

namespace {

void check_simplex(const RealVector& p, const char* what) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) < -kPsdTol) {
      throw validation_error(std::string(what) + ": negative weight " + std::to_string(p(i)));
    }
    sum += p(i);
  }
  if (std::abs(sum - 1.0) > kTraceTol) {
    throw validation_error(std::string(what) + ": weights sum to " + std::to_string(sum));
  }
}

void check_unitary(const ComplexMatrix& u, const char* what) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw validation_error(std::string(what) + ": not square");
  }
  const double err =
      (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
  if (err > kHermitianTol) {
    throw validation_error(std::string(what) + ": unitarity violated by " + std::to_string(err));
  }
}

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

DensityMatrix incoherent_state(const RealVector& p) {
  if (p.size() == 0) throw validation_error("incoherent state: empty distribution");
  check_simplex(p, "incoherent state");
  ComplexMatrix m = ComplexMatrix::Zero(p.size(), p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) m(i, i) = std::max(0.0, p(i));
  m /= m.trace().real();
  return DensityMatrix::trusted(std::move(m));
}

PureStateVector maximally_coherent(Eigen::Index d, const RealVector& phases) {
  if (d < 1) throw validation_error("maximally coherent: dimension < 1");
  if (phases.size() != 0 && phases.size() != d) {
    throw validation_error("maximally coherent: phase count mismatch");
  }
  ComplexVector v(d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index j = 0; j < d; ++j) {
    const double phi = phases.size() ? phases(j) : 0.0;
    v(j) = amp * Complex(std::cos(phi), std::sin(phi));
  }
  return PureStateVector(std::move(v));
}

BipartiteState ii_state(const RealMatrix& joint_p) {
  const Eigen::Index da = joint_p.rows();
  const Eigen::Index db = joint_p.cols();
  if (da < 1 || db < 1) throw validation_error("ii state: empty table");
  double sum = 0.0;
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index b = 0; b < db; ++b) {
      if (joint_p(a, b) < -kPsdTol) {
        throw validation_error("ii state: negative probability");
      }
      sum += joint_p(a, b);
    }
  }
  if (std::abs(sum - 1.0) > kTraceTol) {
    throw validation_error("ii state: table sums to " + std::to_string(sum));
  }
  ComplexMatrix m = ComplexMatrix::Zero(da * db, da * db);
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index b = 0; b < db; ++b) {
      m(a * db + b, a * db + b) = std::max(0.0, joint_p(a, b));
    }
  }
  m /= m.trace().real();
  return BipartiteState(da, db, DensityMatrix::trusted(std::move(m)));
}

BipartiteState ic_state(const RealMatrix& joint_p, const ComplexMatrix& u_b) {
  check_unitary(u_b, "ic state");
  const BipartiteState ii = ii_state(joint_p);
  if (u_b.rows() != ii.dim_b()) throw validation_error("ic state: U_B dimension mismatch");
  const ComplexMatrix u = kron(ComplexMatrix::Identity(ii.dim_a(), ii.dim_a()), u_b);
  return BipartiteState(ii.dim_a(), ii.dim_b(),
                        DensityMatrix::trusted(u * ii.matrix() * u.adjoint()));
}

BipartiteState iq_state(const RealVector& p, const std::vector<ComplexMatrix>& blocks) {
  const Eigen::Index da = p.size();
  if (da == 0 || blocks.size() != static_cast<std::size_t>(da)) {
    throw validation_error("iq state: weight/block count mismatch");
  }
  check_simplex(p, "iq state");
  const Eigen::Index db = blocks[0].rows();
  ComplexMatrix m = ComplexMatrix::Zero(da * db, da * db);
  for (Eigen::Index j = 0; j < da; ++j) {
    DensityMatrix block(blocks[j]);  // validates each conditional state
    if (block.dim() != db) throw validation_error("iq state: block dimension mismatch");
    m.block(j * db, j * db, db, db) = std::max(0.0, p(j)) * block.matrix();
  }
  m /= m.trace().real();
  return BipartiteState(da, db, DensityMatrix::trusted(std::move(m)));
}

BipartiteState cq_state(const RealVector& p, const std::vector<ComplexVector>& basis,
                        const std::vector<ComplexMatrix>& blocks) {
  const Eigen::Index n = p.size();
  if (n == 0 || basis.size() != static_cast<std::size_t>(n) ||
      blocks.size() != static_cast<std::size_t>(n)) {
    throw validation_error("cq state: component count mismatch");
  }
  check_simplex(p, "cq state");
  const Eigen::Index da = basis[0].size();
  const Eigen::Index db = blocks[0].rows();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex ip = basis[i].adjoint() * basis[j];
      const double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - target) > kHermitianTol) {
        throw validation_error("cq state: basis not orthonormal, overlap error " +
                               std::to_string(std::abs(ip - target)));
      }
    }
  }
  ComplexMatrix m = ComplexMatrix::Zero(da * db, da * db);
  for (Eigen::Index k = 0; k < n; ++k) {
    DensityMatrix block(blocks[k]);
    if (block.dim() != db) throw validation_error("cq state: block dimension mismatch");
    m += std::max(0.0, p(k)) * kron(ComplexMatrix(basis[k] * basis[k].adjoint()), block.matrix());
  }
  m /= m.trace().real();
  return BipartiteState(da, db, DensityMatrix::trusted(std::move(m)));
}

BipartiteState separable_state(const RealVector& w, const std::vector<ComplexMatrix>& rho_a,
                               const std::vector<ComplexMatrix>& rho_b) {
  const Eigen::Index n = w.size();
  if (n == 0 || rho_a.size() != static_cast<std::size_t>(n) ||
      rho_b.size() != static_cast<std::size_t>(n)) {
    throw validation_error("separable state: component count mismatch");
  }
  check_simplex(w, "separable state");
  const Eigen::Index da = rho_a[0].rows();
  const Eigen::Index db = rho_b[0].rows();
  ComplexMatrix m = ComplexMatrix::Zero(da * db, da * db);
  for (Eigen::Index k = 0; k < n; ++k) {
    DensityMatrix a(rho_a[k]);
    DensityMatrix b(rho_b[k]);
    if (a.dim() != da || b.dim() != db) {
      throw validation_error("separable state: component dimension mismatch");
    }
    m += std::max(0.0, w(k)) * kron(a.matrix(), b.matrix());
  }
  m /= m.trace().real();
  return BipartiteState(da, db, DensityMatrix::trusted(std::move(m)));
}

PureStateVector bell_state(int k) {
  if (k < 0 || k > 3) throw validation_error("bell state: index out of range");
  ComplexVector v = ComplexVector::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  switch (k) {
    case 0: v(0) = r; v(3) = r; break;   // Phi+
    case 1: v(0) = r; v(3) = -r; break;  // Phi-
    case 2: v(1) = r; v(2) = r; break;   // Psi+
    default: v(1) = r; v(2) = -r; break; // Psi-
  }
  return PureStateVector(std::move(v));
}

BipartiteState bell_diagonal(const Eigen::Vector4d& lambda) {
  RealVector p = lambda;
  check_simplex(p, "bell diagonal");
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    const ComplexVector v = bell_state(k).vector();
    m += std::max(0.0, lambda(k)) * (v * v.adjoint());
  }
  m /= m.trace().real();
  return BipartiteState(2, 2, DensityMatrix::trusted(std::move(m)));
}

BipartiteState werner_state(double p) {
  if (p < 0.0 || p > 1.0) throw validation_error("werner state: p outside [0, 1]");
  const double rest = (1.0 - p) / 4.0;
  return bell_diagonal(Eigen::Vector4d(p + rest, rest, rest, rest));
}

DensityMatrix random_density(const RandomSpec& spec) {
  if (spec.dim < 1) throw validation_error("random density: dimension < 1");
  if (spec.rank < 1 || spec.rank > spec.dim) {
    throw validation_error("random density: rank outside [1, dim]");
  }
  std::mt19937_64 rng(spec.seed);
  const ComplexMatrix g = ginibre(spec.dim, spec.rank, rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint());
  return DensityMatrix::trusted(std::move(m));
}

PureStateVector random_pure(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 1) throw validation_error("random pure: dimension < 1");
  std::mt19937_64 rng(seed);
  ComplexVector v = ginibre(dim, 1, rng).col(0);
  v /= v.norm();
  return PureStateVector(std::move(v));
}

ComplexMatrix haar_unitary(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 1) throw validation_error("haar unitary: dimension < 1");
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

bool is_iq(const BipartiteState& state, double tol) {
  const Eigen::Index da = state.dim_a();
  const Eigen::Index db = state.dim_b();
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      if (i == j) continue;
      if (state.matrix().block(i * db, j * db, db, db).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

bool is_ii(const BipartiteState& state, double tol) {
  const Eigen::Index d = state.dim();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i != j && std::abs(state.matrix()(i, j)) > tol) return false;
    }
  }
  return true;
}

BipartiteState random_bipartite(Eigen::Index dim_a, Eigen::Index dim_b, std::uint64_t seed,
                                Eigen::Index rank) {
  const Eigen::Index d = dim_a * dim_b;
  if (rank == 0) rank = d;
  return BipartiteState(dim_a, dim_b, random_density({d, rank, seed}));
}

RealVector random_simplex(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp_dist(1.0);
  RealVector p(n);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    p(i) = exp_dist(rng);
    sum += p(i);
  }
  return p / sum;
}

BipartiteState sample_free_state(FreeStateClass cls, Eigen::Index dim_a, Eigen::Index dim_b,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint64_t s1 = rng();
  const std::uint64_t s2 = rng();
  const std::uint64_t s3 = rng();
  switch (cls) {
    case FreeStateClass::Incoherent:
    case FreeStateClass::II: {
      const RealVector p = random_simplex(dim_a * dim_b, s1);
      RealMatrix table(dim_a, dim_b);
      for (Eigen::Index a = 0; a < dim_a; ++a) {
        for (Eigen::Index b = 0; b < dim_b; ++b) table(a, b) = p(a * dim_b + b);
      }
      return ii_state(table);
    }
    case FreeStateClass::IC: {
      const RealVector p = random_simplex(dim_a * dim_b, s1);
      RealMatrix table(dim_a, dim_b);
      for (Eigen::Index a = 0; a < dim_a; ++a) {
        for (Eigen::Index b = 0; b < dim_b; ++b) table(a, b) = p(a * dim_b + b);
      }
      return ic_state(table, haar_unitary(dim_b, s2));
    }
    case FreeStateClass::IQ: {
      const RealVector p = random_simplex(dim_a, s1);
      std::vector<ComplexMatrix> blocks;
      for (Eigen::Index j = 0; j < dim_a; ++j) {
        blocks.push_back(random_density({dim_b, dim_b, s2 + static_cast<std::uint64_t>(j)}).matrix());
      }
      return iq_state(p, blocks);
    }
    case FreeStateClass::CQ: {
      const RealVector p = random_simplex(dim_a, s1);
      const ComplexMatrix u = haar_unitary(dim_a, s2);
      std::vector<ComplexVector> basis;
      std::vector<ComplexMatrix> blocks;
      for (Eigen::Index j = 0; j < dim_a; ++j) {
        basis.push_back(u.col(j));
        blocks.push_back(random_density({dim_b, dim_b, s3 + static_cast<std::uint64_t>(j)}).matrix());
      }
      return cq_state(p, basis, blocks);
    }
    case FreeStateClass::Separable: {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(s1 % 3);  // 2..4 components
      const RealVector w = random_simplex(n, s2);
      std::vector<ComplexMatrix> as;
      std::vector<ComplexMatrix> bs;
      for (Eigen::Index k = 0; k < n; ++k) {
        const auto sk = s3 + 2 * static_cast<std::uint64_t>(k);
        as.push_back(pure_density(random_pure(dim_a, sk)).matrix());
        bs.push_back(pure_density(random_pure(dim_b, sk + 1)).matrix());
      }
      return separable_state(w, as, bs);
    }
  }
  throw validation_error("sample_free_state: unknown class");
}

}  // namespace qres
