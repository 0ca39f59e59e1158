// SPDX-License-Identifier: MIT

#include "qres/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace qres {

// splitmix64 finalizer.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

RealVector random_start(Eigen::Index n, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, scale);
  RealVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = gauss(rng);
  return x;
}

// Shared multi-restart driver around local_search.
template <typename MakeCertificate>
OptimizationOutcome run_restarts(Eigen::Index n, const ScalarObjective& f,
                                 const OptimizerConfig& cfg,
                                 const std::vector<RealVector>& warm_starts,
                                 double random_scale, double step,
                                 MakeCertificate&& make_certificate) {
  if (cfg.restarts < 1) throw optimizer_error("optimizer: restarts < 1");
  OptimizationOutcome out;
  out.value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    RealVector x0;
    if (static_cast<std::size_t>(r) < warm_starts.size()) {
      x0 = warm_starts[r];
    } else {
      x0 = random_start(n, mix_seed(cfg.seed, static_cast<std::uint64_t>(r)), random_scale);
    }
    const LocalSearchResult res = local_search(f, x0, cfg.max_iterations, cfg.tolerance, step);
    out.evaluations += res.evaluations;
    out.converged = out.converged || res.converged;
    if (res.value < out.value) {
      out.value = res.value;
      out.parameters = res.x;
      out.best_restart = r;
    }
  }
  out.restarts_used = cfg.restarts;
  out.certificate = make_certificate(out.parameters);
  return out;
}

}  // namespace

LocalSearchResult local_search(const ScalarObjective& f, const RealVector& x0,
                               int max_iterations, double tolerance, double initial_step) {
  const Eigen::Index n = x0.size();
  if (n == 0) throw optimizer_error("local search: empty parameter vector");
  LocalSearchResult out;

  // Standard Nelder-Mead with adaptive-free fixed coefficients.
  const double alpha = 1.0, gamma = 2.0, beta = 0.5, delta = 0.5;
  std::vector<RealVector> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  for (Eigen::Index i = 1; i <= n; ++i) xs[i](i - 1) += initial_step;
  for (Eigen::Index i = 0; i <= n; ++i) {
    fs[i] = f(xs[i]);
    ++out.evaluations;
  }

  std::vector<Eigen::Index> order(n + 1);
  for (int iter = 0; iter < max_iterations; ++iter) {
    for (Eigen::Index i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return fs[a] < fs[b]; });
    const Eigen::Index lo = order[0], hi = order[n], second_hi = order[n - 1];
    if (std::abs(fs[hi] - fs[lo]) <= tolerance * (1.0 + std::abs(fs[lo]))) {
      out.converged = true;
      break;
    }

    RealVector centroid = RealVector::Zero(n);
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (i != hi) centroid += xs[i];
    }
    centroid /= static_cast<double>(n);

    const RealVector xr = centroid + alpha * (centroid - xs[hi]);
    const double fr = f(xr);
    ++out.evaluations;
    if (fr < fs[lo]) {
      const RealVector xe = centroid + gamma * (xr - centroid);
      const double fe = f(xe);
      ++out.evaluations;
      if (fe < fr) {
        xs[hi] = xe;
        fs[hi] = fe;
      } else {
        xs[hi] = xr;
        fs[hi] = fr;
      }
    } else if (fr < fs[second_hi]) {
      xs[hi] = xr;
      fs[hi] = fr;
    } else {
      const bool outside = fr < fs[hi];
      const RealVector base = outside ? xr : xs[hi];
      const RealVector xc = centroid + beta * (base - centroid);
      const double fc = f(xc);
      ++out.evaluations;
      if (fc < std::min(fr, fs[hi])) {
        xs[hi] = xc;
        fs[hi] = fc;
      } else {
        for (Eigen::Index i = 0; i <= n; ++i) {  // shrink toward the best vertex
          if (i == lo) continue;
          xs[i] = xs[lo] + delta * (xs[i] - xs[lo]);
          fs[i] = f(xs[i]);
          ++out.evaluations;
        }
      }
    }
  }

  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (fs[i] < fs[best]) best = i;
  }
  out.x = xs[best];
  out.value = fs[best];
  return out;
}

OptimizationOutcome minimize_generic(Eigen::Index n, const ScalarObjective& objective,
                                     const OptimizerConfig& cfg,
                                     const std::vector<RealVector>& warm_starts,
                                     double random_scale, double initial_step) {
  return run_restarts(n, objective, cfg, warm_starts, random_scale, initial_step,
                      [](const RealVector&) { return std::monostate{}; });
}

ComplexMatrix unitary_from_params(const RealVector& h, Eigen::Index d) {
  if (h.size() != d * d) throw optimizer_error("unitary params: expected d^2 coordinates");
  ComplexMatrix hm(d, d);
  for (Eigen::Index i = 0; i < d; ++i) hm(i, i) = h(i);
  Eigen::Index k = d;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      hm(i, j) = Complex(h(k), h(k + 1));
      hm(j, i) = std::conj(hm(i, j));
      k += 2;
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hm);
  ComplexVector phases(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    phases(i) = Complex(std::cos(es.eigenvalues()(i)), std::sin(es.eigenvalues()(i)));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

RealVector params_from_unitary(const ComplexMatrix& u) {
  const Eigen::Index d = u.rows();
  if (u.cols() != d || d == 0) throw optimizer_error("unitary log: not square");
  // Principal log via the Schur-free route: a unitary is normal, so its
  // eigendecomposition comes from the Hermitian parts; use ComplexSchur-less
  // approach through Eigen's ComplexEigenSolver.
  Eigen::ComplexEigenSolver<ComplexMatrix> es(u);
  if (es.info() != Eigen::Success) throw optimizer_error("unitary log: eigensolver failed");
  const ComplexMatrix v = es.eigenvectors();
  ComplexMatrix hm = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double theta = std::arg(es.eigenvalues()(i));
    hm += theta * (v.col(i) * v.col(i).adjoint());
  }
  hm = 0.5 * (hm + hm.adjoint());
  RealVector h(d * d);
  for (Eigen::Index i = 0; i < d; ++i) h(i) = hm(i, i).real();
  Eigen::Index k = d;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      h(k) = hm(i, j).real();
      h(k + 1) = hm(i, j).imag();
      k += 2;
    }
  }
  return h;
}

ComplexMatrix isometry_from_params(const RealVector& h, Eigen::Index m, Eigen::Index r) {
  if (r < 1 || r > m) throw optimizer_error("isometry params: rank outside [1, m]");
  return unitary_from_params(h, m).leftCols(r);
}

OptimizationOutcome minimize_over_unitary(
    Eigen::Index d, const std::function<double(const ComplexMatrix&)>& objective,
    const OptimizerConfig& cfg) {
  const Eigen::Index n = d * d;
  const ScalarObjective f = [&](const RealVector& x) {
    return objective(unitary_from_params(x, d));
  };
  // Restart 0 is the identity: guarantees value <= objective(I).
  std::vector<RealVector> warm = {RealVector::Zero(n)};
  OptimizationOutcome out = run_restarts(
      n, f, cfg, warm, /*random_scale=*/1.0, /*step=*/0.45,
      [&](const RealVector& x) { return unitary_from_params(x, d); });
  out.value = objective(std::get<ComplexMatrix>(out.certificate));  // re-evaluate at certificate
  return out;
}

namespace {

BipartiteState iq_from_params(const RealVector& x, Eigen::Index da, Eigen::Index db) {
  const Eigen::Index per_block = 2 * db * db;
  ComplexMatrix m = ComplexMatrix::Zero(da * db, da * db);
  double trace = 0.0;
  for (Eigen::Index j = 0; j < da; ++j) {
    ComplexMatrix w(db, db);
    const Eigen::Index base = j * per_block;
    for (Eigen::Index r = 0; r < db; ++r) {
      for (Eigen::Index c = 0; c < db; ++c) {
        const Eigen::Index k = base + 2 * (r * db + c);
        w(r, c) = Complex(x(k), x(k + 1));
      }
    }
    ComplexMatrix block = w * w.adjoint();
    m.block(j * db, j * db, db, db) = block;
    trace += block.trace().real();
  }
  if (trace < 1e-12) {
    // Degenerate all-zero parameterization: fall back to the maximally mixed
    // IQ state so the objective stays finite.
    m = ComplexMatrix::Identity(da * db, da * db);
    trace = static_cast<double>(da * db);
  }
  m /= trace;
  return BipartiteState(da, db, DensityMatrix::trusted(std::move(m)));
}

}  // namespace

OptimizationOutcome minimize_over_iq(
    Eigen::Index dim_a, Eigen::Index dim_b,
    const std::function<double(const BipartiteState&)>& objective, const OptimizerConfig& cfg) {
  const Eigen::Index n = dim_a * 2 * dim_b * dim_b;
  const ScalarObjective f = [&](const RealVector& x) {
    return objective(iq_from_params(x, dim_a, dim_b));
  };
  // Restart 0: W_j = identity, i.e. the maximally mixed IQ state.
  RealVector x0 = RealVector::Zero(n);
  for (Eigen::Index j = 0; j < dim_a; ++j) {
    for (Eigen::Index r = 0; r < dim_b; ++r) {
      x0(j * 2 * dim_b * dim_b + 2 * (r * dim_b + r)) = 1.0;
    }
  }
  std::vector<RealVector> warm = {std::move(x0)};
  OptimizationOutcome out = run_restarts(
      n, f, cfg, warm, /*random_scale=*/0.8, /*step=*/0.35,
      [&](const RealVector& x) { return iq_from_params(x, dim_a, dim_b); });
  out.value = objective(std::get<BipartiteState>(out.certificate));
  return out;
}

Decomposition decomposition_from_isometry(const SpectralDecomposition& sd, Eigen::Index rank,
                                          const ComplexMatrix& isometry) {
  const Eigen::Index m = isometry.rows();
  Decomposition dec;
  std::vector<double> probs;
  for (Eigen::Index e = 0; e < m; ++e) {
    ComplexVector psi = ComplexVector::Zero(sd.eigenvectors.rows());
    for (Eigen::Index k = 0; k < rank; ++k) {
      psi += isometry(e, k) * std::sqrt(std::max(0.0, sd.eigenvalues(k))) * sd.eigenvectors.col(k);
    }
    const double p = psi.squaredNorm();
    if (p < 1e-12) continue;  // zero-weight components are dropped
    probs.push_back(p);
    dec.components.emplace_back(psi / std::sqrt(p));
  }
  dec.probabilities = Eigen::Map<RealVector>(probs.data(), static_cast<Eigen::Index>(probs.size()));
  return dec;
}

OptimizationOutcome minimize_over_decompositions(
    const BipartiteState& rho, const std::function<double(const ComplexVector&)>& per_pure,
    Eigen::Index ensemble_size, const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw optimizer_error("optimizer: restarts < 1");
  const SpectralDecomposition sd = eig_hermitian(rho.matrix());
  Eigen::Index rank = 0;
  while (rank < sd.eigenvalues.size() && sd.eigenvalues(rank) > kEntropyFloor) ++rank;
  if (rank == 0) throw optimizer_error("decomposition search: zero-rank state");
  if (ensemble_size != 0 && ensemble_size < rank) {
    throw std::invalid_argument("decomposition search: ensemble size " +
                                std::to_string(ensemble_size) + " below rank " +
                                std::to_string(rank));
  }
  const Eigen::Index m = (ensemble_size == 0) ? rank * rank : ensemble_size;

  const auto roof_value = [&](const Decomposition& dec) {
    double v = 0.0;
    for (Eigen::Index e = 0; e < dec.probabilities.size(); ++e) {
      v += dec.probabilities(e) * per_pure(dec.components[e]);
    }
    return v;
  };
  const auto objective_at = [&](Eigen::Index size, const RealVector& x) {
    return roof_value(decomposition_from_isometry(sd, rank, isometry_from_params(x, size, rank)));
  };

  // Each restart is a pure function of (seed, index): an m'=rank descent whose
  // optimum is embedded as the starting point of the full m-sized descent.
  // This keeps "more restarts never worse" structural while making the
  // 256-coordinate searches start from good mixing unitaries.
  OptimizationOutcome out;
  out.value = std::numeric_limits<double>::infinity();
  const ScalarObjective f_rank = [&](const RealVector& x) { return objective_at(rank, x); };
  const ScalarObjective f_full = [&](const RealVector& x) { return objective_at(m, x); };
  for (int r = 0; r < cfg.restarts; ++r) {
    RealVector x0 = (r == 0) ? RealVector::Zero(rank * rank)
                             : random_start(rank * rank,
                                            mix_seed(cfg.seed, static_cast<std::uint64_t>(r)),
                                            1.0);
    LocalSearchResult best;
    if (m == rank) {
      best = local_search(f_rank, x0, cfg.max_iterations, cfg.tolerance, 0.45);
    } else {
      const LocalSearchResult stage =
          local_search(f_rank, x0, cfg.max_iterations, cfg.tolerance, 0.45);
      ComplexMatrix embedded = ComplexMatrix::Identity(m, m);
      embedded.topLeftCorner(rank, rank) = unitary_from_params(stage.x, rank);
      best = local_search(f_full, params_from_unitary(embedded), cfg.max_iterations,
                          cfg.tolerance, 0.3);
      best.evaluations += stage.evaluations;
      if (stage.value < best.value) {  // embedding round-trip is not bit-exact
        best.value = stage.value;
        best.x = params_from_unitary(embedded);
      }
      best.converged = best.converged || stage.converged;
    }
    out.evaluations += best.evaluations;
    out.converged = out.converged || best.converged;
    if (best.value < out.value) {
      out.value = best.value;
      out.parameters = best.x;
      out.best_restart = r;
    }
  }
  out.restarts_used = cfg.restarts;
  Decomposition cert =
      decomposition_from_isometry(sd, rank, isometry_from_params(out.parameters, m, rank));
  out.value = roof_value(cert);
  out.certificate = std::move(cert);
  return out;
}

}  // namespace qres
