// SPDX-License-Identifier: MIT
//
// Secret-key analysis: the conditional entropy of the measured key register
// given the purifying environment equals the dephasing entropy gap
// S(dephase_A(rho)) - S(rho), i.e. the basis-dependent value, which yields
// the one-way key-rate lower bound K = S(Z_A|E) - S(Z_A|Z_B).

#pragma once

#include "qres/core.hpp"

namespace qres {

// Measurement bases as unitaries whose columns are the basis vectors; the
// analysis rotates rho -> (Z_A (x) Z_B)^dagger rho (Z_A (x) Z_B) and then
// works in the computational basis.  Defaults are the computational bases.
struct QkdSetup {
  BipartiteState state;
  ComplexMatrix z_a;  // empty -> identity
  ComplexMatrix z_b;  // empty -> identity

  explicit QkdSetup(BipartiteState s) : state(std::move(s)) {}
  QkdSetup(BipartiteState s, ComplexMatrix za, ComplexMatrix zb)
      : state(std::move(s)), z_a(std::move(za)), z_b(std::move(zb)) {}
};

// Basis-rotated copy of the setup's state.
BipartiteState rotated_state(const QkdSetup& setup);

struct ConditionalEntropy {
  double value = 0.0;  // dephasing route: S(dephase_A(rho)) - S(rho)
  double gap = 0.0;    // |dephasing route - purification route|
};

// S(Z_A|E) for the purifying environment E of rho_AB, computed two ways: the
// dephasing identity and an explicit purification with E traced in.  The gap
// between the routes is reported as a cross-check diagnostic.
ConditionalEntropy conditional_entropy_za_e(const BipartiteState& rho);

// S(Z_A|Z_B) of the diagonal (classical) joint distribution.
double conditional_entropy_za_zb(const BipartiteState& rho);

struct KeyRateReport {
  double key_rate = 0.0;
  double s_za_e = 0.0;
  double s_za_zb = 0.0;
  double route_gap = 0.0;  // purification cross-check for S(Z_A|E)
};

// Devetak-Winter one-way lower bound for the setup's state and bases.
KeyRateReport devetak_winter_rate(const QkdSetup& setup);

// 1 - h(e_p) - h(e_b); error rates validated to lie in [0, 1/2].
double bb84_reference_rate(double bit_error, double phase_error);

// Bell-diagonal state with independent bit/phase error weights
// ((1-e_b)(1-e_p), (1-e_b)e_p, e_b(1-e_p), e_b e_p); its key rate in the
// computational bases reproduces the reference formula.
BipartiteState bb84_bell_diagonal(double bit_error, double phase_error);

}  // namespace qres
