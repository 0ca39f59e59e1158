// SPDX-License-Identifier: MIT

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qres/states.hpp"

#include <cmath>

using namespace qres;

TEST_CASE("incoherent and maximally coherent constructors") {
  RealVector p(3);
  p << 0.5, 0.3, 0.2;
  const DensityMatrix diag = incoherent_state(p);
  CHECK(diag.matrix()(0, 0).real() == doctest::Approx(0.5));
  CHECK(std::abs(diag.matrix()(0, 1)) == 0.0);

  RealVector bad(2);
  bad << 0.7, 0.6;
  CHECK_THROWS_AS(incoherent_state(bad), validation_error);

  const PureStateVector plus = maximally_coherent(4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    CHECK(std::abs(plus.vector()(i) - Complex(0.5, 0.0)) < 1e-14);
  }

  RealVector phases(2);
  phases << 0.0, 3.14159;
  const PureStateVector phased = maximally_coherent(2, phases);
  CHECK(phased.vector()(1).real() < 0.0);
}

TEST_CASE("free-state constructors land in their classes") {
  RealMatrix table(2, 2);
  table << 0.4, 0.1, 0.2, 0.3;
  const BipartiteState ii = ii_state(table);
  CHECK(is_ii(ii));
  CHECK(is_iq(ii));
  CHECK(ii.matrix()(3, 3).real() == doctest::Approx(0.3));

  const BipartiteState ic = ic_state(table, haar_unitary(2, 5));
  CHECK(is_iq(ic));
  CHECK_FALSE(is_ii(ic));

  RealVector p(2);
  p << 0.6, 0.4;
  std::vector<ComplexMatrix> blocks = {random_density({2, 2, 6}).matrix(),
                                       random_density({2, 2, 7}).matrix()};
  const BipartiteState iq = iq_state(p, blocks);
  CHECK(is_iq(iq));
  CHECK((iq.matrix().block(0, 0, 2, 2) - 0.6 * blocks[0]).cwiseAbs().maxCoeff() < 1e-12);

  // CQ with the computational basis is IQ; with a rotated basis it is not.
  std::vector<ComplexVector> comp_basis = {ComplexVector::Unit(2, 0), ComplexVector::Unit(2, 1)};
  CHECK(is_iq(cq_state(p, comp_basis, blocks)));
  const ComplexMatrix u = haar_unitary(2, 8);
  std::vector<ComplexVector> rotated_basis = {u.col(0), u.col(1)};
  CHECK_FALSE(is_iq(cq_state(p, rotated_basis, blocks)));

  // Non-orthonormal A bases are rejected.
  std::vector<ComplexVector> slanted = {ComplexVector::Unit(2, 0),
                                        (ComplexVector::Unit(2, 0) + ComplexVector::Unit(2, 1)) /
                                            std::sqrt(2.0)};
  CHECK_THROWS_AS(cq_state(p, slanted, blocks), validation_error);

  const BipartiteState sep = separable_state(
      p, {pure_density(random_pure(2, 9)).matrix(), pure_density(random_pure(2, 10)).matrix()},
      {pure_density(random_pure(2, 11)).matrix(), pure_density(random_pure(2, 12)).matrix()});
  CHECK(sep.dim() == 4);
  CHECK(std::abs(sep.matrix().trace().real() - 1.0) < 1e-12);
}

TEST_CASE("bell family and werner states") {
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      const Complex overlap = bell_state(k).vector().adjoint() * bell_state(l).vector();
      CHECK(std::abs(overlap - (k == l ? Complex(1, 0) : Complex(0, 0))) < 1e-14);
    }
  }
  // Ordering pin: Phi+ has support on |00>, |11>; Psi+ on |01>, |10>.
  CHECK(std::abs(bell_state(0).vector()(0)) > 0.5);
  CHECK(std::abs(bell_state(2).vector()(1)) > 0.5);

  Eigen::Vector4d lambda(0.4, 0.3, 0.2, 0.1);
  const BipartiteState mix = bell_diagonal(lambda);
  const SpectralDecomposition sd = eig_hermitian(mix.matrix());
  CHECK(sd.eigenvalues(0) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(sd.eigenvalues(3) == doctest::Approx(0.1).epsilon(1e-12));

  const BipartiteState pure = werner_state(1.0);
  CHECK((pure.matrix() - bell_state(0).vector() * bell_state(0).vector().adjoint())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  const BipartiteState mixed = werner_state(0.0);
  CHECK((mixed.matrix() - 0.25 * ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("random generators are valid, seeded, and rank-aware") {
  const DensityMatrix full = random_density({4, 4, 100});
  const SpectralDecomposition sd_full = eig_hermitian(full.matrix());
  CHECK(sd_full.eigenvalues(3) > 1e-12);

  const DensityMatrix low = random_density({4, 2, 100});
  const SpectralDecomposition sd_low = eig_hermitian(low.matrix());
  CHECK(sd_low.eigenvalues(1) > 1e-12);
  CHECK(std::abs(sd_low.eigenvalues(2)) < 1e-12);

  const ComplexMatrix u = haar_unitary(3, 200);
  CHECK((u.adjoint() * u - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((haar_unitary(3, 200) - u).cwiseAbs().maxCoeff() == 0.0);  // deterministic
  CHECK((haar_unitary(3, 201) - u).cwiseAbs().maxCoeff() > 1e-3);

  CHECK(std::abs(random_pure(5, 300).vector().norm() - 1.0) < 1e-12);

  const RealVector simplex = random_simplex(6, 400);
  CHECK(simplex.minCoeff() >= 0.0);
  CHECK(simplex.sum() == doctest::Approx(1.0).epsilon(1e-12));

  const BipartiteState rho = random_bipartite(3, 2, 500);
  CHECK(rho.dim_a() == 3);
  CHECK(rho.dim_b() == 2);
}

TEST_CASE("sampled free states satisfy their membership predicates") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    CHECK(is_ii(sample_free_state(FreeStateClass::II, 2, 3, seed)));
    CHECK(is_iq(sample_free_state(FreeStateClass::IC, 3, 2, seed)));
    CHECK(is_iq(sample_free_state(FreeStateClass::IQ, 2, 2, seed)));
    const BipartiteState cq = sample_free_state(FreeStateClass::CQ, 2, 2, seed);
    CHECK(std::abs(cq.matrix().trace().real() - 1.0) < 1e-10);
    const BipartiteState sep = sample_free_state(FreeStateClass::Separable, 2, 2, seed);
    CHECK(std::abs(sep.matrix().trace().real() - 1.0) < 1e-10);
  }
}

TEST_CASE("membership predicates reject correlated states") {
  const BipartiteState bell = bipartite_pure(2, 2, bell_state(0));
  CHECK_FALSE(is_iq(bell));
  CHECK_FALSE(is_ii(bell));
}
