// SPDX-License-Identifier: MIT

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qres/channels.hpp"
#include "qres/states.hpp"

#include <cmath>

using namespace qres;

namespace {

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  return h;
}

}  // namespace

TEST_CASE("kraus channel validation enforces completeness") {
  CHECK_NOTHROW(KrausChannel({hadamard()}));
  CHECK_THROWS_AS(KrausChannel({0.9 * hadamard()}), validation_error);
  CHECK_THROWS_AS(KrausChannel(std::vector<ComplexMatrix>{}), validation_error);

  // Amplitude damping: a textbook two-operator channel.
  const double gamma = 0.3;
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(gamma);
  const KrausChannel damp({k0, k1});
  const DensityMatrix out = apply_channel(damp, pure_density(random_pure(2, 3)));
  CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-12);
}

TEST_CASE("incoherent unitaries expose permutation structure") {
  IncoherentUnitary u({1, 2, 0}, RealVector::Zero(3));
  const ComplexMatrix m = u.matrix();
  CHECK(std::abs(m(1, 0) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(m(2, 1) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(m(0, 2) - Complex(1, 0)) < 1e-15);
  CHECK(is_incoherent_unitary(m));

  CHECK_THROWS_AS(IncoherentUnitary({0, 0, 1}, RealVector::Zero(3)), validation_error);

  const IncoherentUnitary sampled = random_incoherent_unitary(4, 9);
  const IncoherentUnitary inverse = invert(sampled);
  CHECK((sampled.matrix() * inverse.matrix() - ComplexMatrix::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  CHECK(is_incoherent_unitary(inverse.matrix()));
}

TEST_CASE("incoherence predicates classify the classics") {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  CHECK(is_incoherent_kraus(x));
  CHECK(is_incoherent_unitary(x));
  CHECK_FALSE(is_incoherent_kraus(hadamard()));
  CHECK_FALSE(is_incoherent_unitary(hadamard()));
  ComplexMatrix damp_tail = ComplexMatrix::Zero(2, 2);
  damp_tail(0, 1) = 0.5;  // one entry per column: incoherent but not unitary
  CHECK(is_incoherent_kraus(damp_tail));
  CHECK_FALSE(is_incoherent_unitary(damp_tail));
}

TEST_CASE("product-form free channels reject coherent A factors and fix the free set") {
  const ComplexMatrix eye = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(SqiChannel({{hadamard(), eye}}), validation_error);
  CHECK_NOTHROW(SqiChannel({{eye, hadamard()}}));

  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const SqiChannel channel = random_sqi_channel(2, 3, seed);
    const BipartiteState iq = sample_free_state(FreeStateClass::IQ, 2, 3, seed + 50);
    const BipartiteState out = apply_channel(channel, iq);
    CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-10);
    CHECK(is_iq(out));  // free operations cannot leave the free set
  }
}

TEST_CASE("sampled measurement rounds and incoherent channels are trace preserving") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const KrausChannel locc = random_one_round_locc(2, 2, seed);
    const BipartiteState rho = random_bipartite(2, 2, seed + 1);
    const BipartiteState out = apply_channel(locc, rho);
    CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-10);

    const KrausChannel inc = random_incoherent_channel(3, 2 + static_cast<int>(seed % 2), seed);
    const DensityMatrix diag = incoherent_state(random_simplex(3, seed + 2));
    const DensityMatrix mapped = apply_channel(inc, diag);
    // Incoherent operators keep diagonal states diagonal.
    ComplexMatrix off = mapped.matrix();
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("unitary channels act by conjugation") {
  const ComplexMatrix u = haar_unitary(3, 77);
  const KrausChannel channel({u});
  const DensityMatrix rho = random_density({3, 3, 78});
  const DensityMatrix out = apply_channel(channel, rho);
  CHECK((out.matrix() - u * rho.matrix() * u.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}
