// SPDX-License-Identifier: MIT

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qres/measures.hpp"
#include "qres/qkd.hpp"
#include "qres/states.hpp"

#include <cmath>

using namespace qres;

namespace {

constexpr double kBdBellDiagonal = 0.034851554559677125;  // weights (0.4, 0.3, 0.2, 0.1)
constexpr double kH025 = 0.81127812445913286;             // h(1/4)
constexpr double kBb84RateAt5Percent = 0.42720608576808774;

BipartiteState bell() { return bipartite_pure(2, 2, bell_state(0)); }

}  // namespace

TEST_CASE("environment conditional entropy has two agreeing routes") {
  const ConditionalEntropy on_bell = conditional_entropy_za_e(bell());
  CHECK(on_bell.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(on_bell.gap < 1e-8);

  Eigen::Vector4d weights;
  weights << 0.4, 0.3, 0.2, 0.1;
  const ConditionalEntropy on_mixed = conditional_entropy_za_e(bell_diagonal(weights));
  CHECK(on_mixed.value == doctest::Approx(kBdBellDiagonal).epsilon(1e-12));
  CHECK(on_mixed.gap < 1e-8);

  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Eigen::Index da = 2 + static_cast<Eigen::Index>(seed % 2);
    const Eigen::Index db = 2 + static_cast<Eigen::Index>((seed / 2) % 2);
    const BipartiteState rho = random_bipartite(da, db, 300 + seed);
    const ConditionalEntropy ce = conditional_entropy_za_e(rho);
    CHECK(ce.gap < 1e-8);
    // Same identity as the basis-dependent value, same arithmetic.
    CHECK(std::abs(ce.value - bd_relative_entropy(rho).value) < 1e-14);
  }
}

TEST_CASE("measured-register conditional entropy is classical") {
  CHECK(conditional_entropy_za_zb(bell()) < 1e-12);  // perfectly correlated keys

  const BipartiteState uniform =
      bipartite(2, 2, ComplexMatrix::Identity(4, 4) * 0.25);
  CHECK(conditional_entropy_za_zb(uniform) == doctest::Approx(1.0).epsilon(1e-12));

  // A bit-error weight of 1/4 costs exactly h(1/4) bits of reconciliation.
  const BipartiteState noisy = bb84_bell_diagonal(0.25, 0.1);
  CHECK(conditional_entropy_za_zb(noisy) == doctest::Approx(kH025).epsilon(1e-12));
}

TEST_CASE("key-rate bound reproduces the reference curve") {
  const KeyRateReport ideal = devetak_winter_rate(QkdSetup(bell()));
  CHECK(ideal.key_rate == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ideal.route_gap < 1e-8);

  // The maximally mixed state has a negative bound; it is reported, not clamped.
  const BipartiteState uniform =
      bipartite(2, 2, ComplexMatrix::Identity(4, 4) * 0.25);
  CHECK(devetak_winter_rate(QkdSetup(uniform)).key_rate ==
        doctest::Approx(-1.0).epsilon(1e-10));

  const KeyRateReport noisy = devetak_winter_rate(QkdSetup(bb84_bell_diagonal(0.05, 0.05)));
  CHECK(noisy.key_rate == doctest::Approx(kBb84RateAt5Percent).epsilon(1e-9));
  CHECK(noisy.key_rate == doctest::Approx(bb84_reference_rate(0.05, 0.05)).epsilon(1e-9));

  for (int i = 0; i <= 10; ++i) {
    const double e = 0.05 * i;
    const KeyRateReport report = devetak_winter_rate(QkdSetup(bb84_bell_diagonal(e, e)));
    CHECK(std::abs(report.key_rate - bb84_reference_rate(e, e)) < 1e-8);
  }
}

TEST_CASE("measurement bases rotate the state as advertised") {
  const BipartiteState rho = random_bipartite(2, 2, 320);
  const ComplexMatrix ua = haar_unitary(2, 321);
  const ComplexMatrix ub = haar_unitary(2, 322);

  // Measuring in basis U on the rotated state (U (x) V) rho (U (x) V)^dagger
  // is the same experiment as measuring rho in the computational bases.
  const ComplexMatrix lift = kron(ua, ub);
  const BipartiteState moved =
      bipartite(2, 2, ComplexMatrix(lift * rho.matrix() * lift.adjoint()));
  const KeyRateReport base = devetak_winter_rate(QkdSetup(rho));
  const KeyRateReport covariant = devetak_winter_rate(QkdSetup(moved, ua, ub));
  CHECK(std::abs(base.key_rate - covariant.key_rate) < 1e-10);
  CHECK(std::abs(base.s_za_e - covariant.s_za_e) < 1e-10);
  CHECK(std::abs(base.s_za_zb - covariant.s_za_zb) < 1e-10);

  const BipartiteState back = rotated_state(QkdSetup(moved, ua, ub));
  CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("reference formula endpoints and validation") {
  CHECK(bb84_reference_rate(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bb84_reference_rate(0.5, 0.5) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK_THROWS_AS(bb84_reference_rate(-0.01, 0.1), validation_error);
  CHECK_THROWS_AS(bb84_reference_rate(0.1, 0.51), validation_error);
  CHECK_THROWS_AS(bb84_bell_diagonal(0.6, 0.1), validation_error);

  // Weight bookkeeping: the phase-error pair carries weight e_b.
  const BipartiteState state = bb84_bell_diagonal(0.3, 0.2);
  const RealVector diag = state.matrix().diagonal().real();
  CHECK(diag(0) == doctest::Approx(0.35).epsilon(1e-12));  // (1 - e_b) / 2 on |00>
  CHECK(diag(1) == doctest::Approx(0.15).epsilon(1e-12));  // e_b / 2 on |01>
}

TEST_CASE("malformed setups are rejected") {
  ComplexMatrix not_unitary = ComplexMatrix::Identity(2, 2);
  not_unitary(0, 0) = 0.5;
  CHECK_THROWS_AS(rotated_state(QkdSetup(bell(), not_unitary, ComplexMatrix())),
                  validation_error);
  CHECK_THROWS_AS(
      rotated_state(QkdSetup(bell(), haar_unitary(3, 1), ComplexMatrix())),
      validation_error);
}
