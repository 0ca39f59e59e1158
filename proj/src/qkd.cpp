// SPDX-License-Identifier: MIT

#include "qres/qkd.hpp"

#include "qres/measures.hpp"
#include "qres/states.hpp"

#include <cmath>

namespace qres {

namespace {

// Trace out the middle factor of an (A x B x E)-indexed matrix
// (flat index (j_a * d_b + j_b) * d_e + k_e).
ComplexMatrix trace_middle(const ComplexMatrix& m, Eigen::Index da, Eigen::Index db,
                           Eigen::Index de) {
  ComplexMatrix out = ComplexMatrix::Zero(da * de, da * de);
  for (Eigen::Index ja = 0; ja < da; ++ja) {
    for (Eigen::Index ka = 0; ka < da; ++ka) {
      for (Eigen::Index je = 0; je < de; ++je) {
        for (Eigen::Index ke = 0; ke < de; ++ke) {
          Complex sum = 0.0;
          for (Eigen::Index jb = 0; jb < db; ++jb) {
            sum += m((ja * db + jb) * de + je, (ka * db + jb) * de + ke);
          }
          out(ja * de + je, ka * de + ke) = sum;
        }
      }
    }
  }
  return out;
}

}  // namespace

BipartiteState rotated_state(const QkdSetup& setup) {
  const Eigen::Index da = setup.state.dim_a();
  const Eigen::Index db = setup.state.dim_b();
  ComplexMatrix za = setup.z_a.size() == 0 ? ComplexMatrix::Identity(da, da) : setup.z_a;
  ComplexMatrix zb = setup.z_b.size() == 0 ? ComplexMatrix::Identity(db, db) : setup.z_b;
  if (za.rows() != da || za.cols() != da || zb.rows() != db || zb.cols() != db) {
    throw validation_error("basis unitary dimensions do not match the state");
  }
  if ((za.adjoint() * za - ComplexMatrix::Identity(da, da)).cwiseAbs().maxCoeff() > 1e-8 ||
      (zb.adjoint() * zb - ComplexMatrix::Identity(db, db)).cwiseAbs().maxCoeff() > 1e-8) {
    throw validation_error("basis matrices must be unitary");
  }
  const ComplexMatrix lift = kron(za, zb);
  ComplexMatrix rotated = lift.adjoint() * setup.state.matrix() * lift;
  rotated = 0.5 * (rotated + rotated.adjoint());
  return BipartiteState(da, db, DensityMatrix::trusted(std::move(rotated)));
}

ConditionalEntropy conditional_entropy_za_e(const BipartiteState& rho) {
  const Eigen::Index da = rho.dim_a();
  const Eigen::Index db = rho.dim_b();

  // Route 1: the dephasing identity on rho_AB alone.
  const double via_dephasing =
      entropy_of_hermitian(dephase_a(rho).matrix()) - entropy_of_hermitian(rho.matrix());

  // Route 2: explicit purification |Psi>_ABE, pinch A, trace out B, and take
  // S(Z_A, E) - S(E).
  const PureStateVector psi = purify(rho.density());
  const Eigen::Index de = psi.dim() / (da * db);
  const ComplexMatrix full = psi.vector() * psi.vector().adjoint();
  const BipartiteState tripartite(da, db * de,
                                  DensityMatrix::trusted(0.5 * (full + full.adjoint())));
  const BipartiteState pinched = dephase_a(tripartite);
  const ComplexMatrix rho_zae = trace_middle(pinched.matrix(), da, db, de);
  const BipartiteState ae(da, de, DensityMatrix::trusted(rho_zae));
  const ComplexMatrix rho_e = partial_trace(ae, Keep::B).matrix();
  const double via_purification =
      entropy_of_hermitian(rho_zae) - entropy_of_hermitian(rho_e);

  ConditionalEntropy out;
  out.value = via_dephasing;
  out.gap = std::abs(via_dephasing - via_purification);
  return out;
}

double conditional_entropy_za_zb(const BipartiteState& rho) {
  const Eigen::Index da = rho.dim_a();
  const Eigen::Index db = rho.dim_b();
  const RealVector joint = rho.matrix().diagonal().real();
  RealVector marginal_b = RealVector::Zero(db);
  for (Eigen::Index ja = 0; ja < da; ++ja) {
    for (Eigen::Index jb = 0; jb < db; ++jb) marginal_b(jb) += joint(ja * db + jb);
  }
  return shannon_entropy(joint) - shannon_entropy(marginal_b);
}

KeyRateReport devetak_winter_rate(const QkdSetup& setup) {
  const BipartiteState rho = rotated_state(setup);
  const ConditionalEntropy za_e = conditional_entropy_za_e(rho);
  KeyRateReport report;
  report.s_za_e = za_e.value;
  report.route_gap = za_e.gap;
  report.s_za_zb = conditional_entropy_za_zb(rho);
  report.key_rate = report.s_za_e - report.s_za_zb;
  return report;
}

double bb84_reference_rate(double bit_error, double phase_error) {
  if (!(phase_error >= 0.0 && phase_error <= 0.5) ||
      !(bit_error >= 0.0 && bit_error <= 0.5)) {
    throw validation_error("error rates must lie in [0, 1/2]");
  }
  return 1.0 - binary_entropy(phase_error) - binary_entropy(bit_error);
}

BipartiteState bb84_bell_diagonal(double bit_error, double phase_error) {
  if (!(phase_error >= 0.0 && phase_error <= 0.5) ||
      !(bit_error >= 0.0 && bit_error <= 0.5)) {
    throw validation_error("error rates must lie in [0, 1/2]");
  }
  // Independent bit/phase weights: bit error = Psi weight, phase error = the
  // (Phi-, Psi-) weight; factorized so both marginals come out right.
  Eigen::Vector4d lambda;
  lambda << (1.0 - bit_error) * (1.0 - phase_error), (1.0 - bit_error) * phase_error,
      bit_error * (1.0 - phase_error), bit_error * phase_error;
  return bell_diagonal(lambda);
}

}  // namespace qres
