// SPDX-License-Identifier: MIT

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qres/optimize.hpp"
#include "qres/states.hpp"

#include <cmath>

using namespace qres;

TEST_CASE("local search solves rosenbrock from the classic start") {
  const ScalarObjective rosenbrock = [](const RealVector& x) {
    const double a = 1.0 - x(0);
    const double b = x(1) - x(0) * x(0);
    return a * a + 100.0 * b * b;
  };
  RealVector x0(2);
  x0 << -1.2, 1.0;
  const LocalSearchResult res = local_search(rosenbrock, x0, 20000, 1e-12);
  CHECK(res.value < 1e-8);
  CHECK(std::abs(res.x(0) - 1.0) < 1e-3);
  CHECK(std::abs(res.x(1) - 1.0) < 1e-3);
}

TEST_CASE("unitary parameterisation is exact and invertible") {
  for (Eigen::Index d = 2; d <= 4; ++d) {
    const ComplexMatrix u = haar_unitary(d, 31 + static_cast<std::uint64_t>(d));
    const RealVector params = params_from_unitary(u);
    const ComplexMatrix back = unitary_from_params(params, d);
    CHECK((back - u).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((back.adjoint() * back - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("isometry construction gives orthonormal columns") {
  RealVector params = RealVector::LinSpaced(4 * 4, -0.7, 0.9);
  const ComplexMatrix v = isometry_from_params(params, 4, 2);
  CHECK(v.rows() == 4);
  CHECK(v.cols() == 2);
  CHECK((v.adjoint() * v - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("unitary minimisation finds the identity via its warm start") {
  OptimizerConfig cfg;
  cfg.restarts = 2;
  cfg.max_iterations = 400;
  const auto objective = [](const ComplexMatrix& u) {
    return (u - ComplexMatrix::Identity(u.rows(), u.cols())).squaredNorm();
  };
  const OptimizationOutcome out = minimize_over_unitary(3, objective, cfg);
  CHECK(out.value < 1e-9);
  CHECK(out.evaluations > 0);
  const auto* u = std::get_if<ComplexMatrix>(&out.certificate);
  REQUIRE(u != nullptr);
  CHECK((*u - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("free-state minimisation recovers a planted target") {
  const BipartiteState target = sample_free_state(FreeStateClass::IQ, 2, 2, 404);
  const auto objective = [&](const BipartiteState& sigma) {
    return (sigma.matrix() - target.matrix()).cwiseAbs().sum();
  };
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.max_iterations = 4000;
  const OptimizationOutcome out = minimize_over_iq(2, 2, objective, cfg);
  CHECK(out.value < 5e-3);
  const auto* sigma = std::get_if<BipartiteState>(&out.certificate);
  REQUIRE(sigma != nullptr);
  CHECK(is_iq(*sigma, 1e-6));
}

TEST_CASE("decomposition search handles constant and planted objectives") {
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.max_iterations = 800;

  SUBCASE("constant per-component score is reproduced exactly") {
    const BipartiteState rho = random_bipartite(2, 2, 11, 2);
    const auto constant = [](const ComplexVector&) { return 0.625; };
    const OptimizationOutcome out = minimize_over_decompositions(rho, constant, 0, cfg);
    CHECK(out.value == doctest::Approx(0.625).epsilon(1e-12));
    const auto* dec = std::get_if<Decomposition>(&out.certificate);
    REQUIRE(dec != nullptr);
    // The certificate must actually decompose rho.
    ComplexMatrix rebuilt = ComplexMatrix::Zero(4, 4);
    for (std::size_t i = 0; i < dec->components.size(); ++i) {
      rebuilt += dec->probabilities(static_cast<Eigen::Index>(i)) * dec->components[i] *
                 dec->components[i].adjoint();
    }
    CHECK((rebuilt - rho.matrix()).cwiseAbs().maxCoeff() < 1e-8);
  }

  SUBCASE("eigenbasis warm start is exact for sector-pure mixtures") {
    // diag(1/2, 1/2) x |0><0| in a 2x2 composite: every eigenvector is a
    // product vector, so the A-marginal of each component is pure.
    RealMatrix table = RealMatrix::Zero(2, 2);
    table(0, 0) = 0.5;
    table(1, 0) = 0.5;
    const BipartiteState iq = ii_state(table);
    const auto a_purity_gap = [](const ComplexVector& psi) {
      ComplexMatrix amp(2, 2);
      amp.row(0) = psi.segment(0, 2).transpose();
      amp.row(1) = psi.segment(2, 2).transpose();
      const ComplexMatrix red = amp * amp.adjoint();
      return 1.0 - (red * red).trace().real();
    };
    const OptimizationOutcome out = minimize_over_decompositions(iq, a_purity_gap, 0, cfg);
    CHECK(out.value < 1e-7);
  }

  SUBCASE("requesting fewer components than the rank is rejected") {
    const BipartiteState rho = random_bipartite(2, 2, 12, 3);
    const auto constant = [](const ComplexVector&) { return 1.0; };
    CHECK_THROWS_AS(minimize_over_decompositions(rho, constant, 2, cfg),
                    std::invalid_argument);
  }
}

TEST_CASE("restart schedule is monotone and deterministic") {
  const ComplexMatrix a = haar_unitary(3, 500);
  const ComplexMatrix b = haar_unitary(3, 501);
  const auto objective = [&](const ComplexMatrix& u) {
    return (a * u * b * u.adjoint()).trace().real();
  };

  OptimizerConfig few;
  few.restarts = 4;
  few.max_iterations = 600;
  OptimizerConfig more = few;
  more.restarts = 8;

  const OptimizationOutcome lo = minimize_over_unitary(3, objective, few);
  const OptimizationOutcome hi = minimize_over_unitary(3, objective, more);
  CHECK(hi.value <= lo.value + 1e-12);  // restarts are a prefix-monotone schedule
  CHECK(lo.restarts_used == 4);
  CHECK(hi.restarts_used == 8);

  const OptimizationOutcome again = minimize_over_unitary(3, objective, few);
  CHECK(again.value == lo.value);
  CHECK(again.evaluations == lo.evaluations);
  CHECK(again.best_restart == lo.best_restart);
}

TEST_CASE("seed mixing separates salted streams") {
  CHECK(mix_seed(1, 2) != mix_seed(1, 3));
  CHECK(mix_seed(1, 2) != mix_seed(2, 2));
  CHECK(mix_seed(7, 9) == mix_seed(7, 9));
}
