// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file metrology.hpp
 * @brief QFI and QFIM engines with independent oracles.
 *
 * Routes:
 *  - variance:   F = 4 Var(g) for pure states (the closed pure-state formula).
 *  - convexity:  F(rho) = sum_n p_n F(|psi_n>) for ensembles whose branches
 *                are and remain orthogonal (disjoint n_a - n_b diagonals).
 *  - sld:        spectral symmetric-logarithmic-derivative formula on the
 *                assembled density operator; the independent mixed-state
 *                oracle.
 *  - fidelity_fd: F ~ 8(1-|<psi_phi|psi_{phi+d}>|)/d^2, the pure-state
 *                finite-difference oracle with a Richardson residual.
 *
 * The QFIM is the 2x2 matrix over (phi_d, phi_s) with F_ij = 4 cov(g_i, g_j);
 * its phi_s bound is the quantity the SU(1,1) analysis cares about.
 */

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <su11/config.hpp>
#include <su11/errors.hpp>
#include <su11/fock.hpp>
#include <su11/opa.hpp>

namespace su11 {

enum class QfiMethod { variance, sld, fidelity_fd, convexity };

inline const char* to_string(QfiMethod m) {
  switch (m) {
    case QfiMethod::variance: return "variance";
    case QfiMethod::sld: return "sld";
    case QfiMethod::fidelity_fd: return "fidelity_fd";
    case QfiMethod::convexity: return "convexity";
  }
  return "?";
}

/// A QFI value plus provenance: the method, the cutoff it was computed at and
/// a method-specific self-consistency residual.
struct QfiResult {
  double value = 0.0;
  QfiMethod method = QfiMethod::variance;
  FockCutoff cutoff_used;
  double residual = 0.0;
  double norm_deficit = 0.0;  // truncation-loss provenance of the state(s)

  /// Whether the residual is within the method's self-consistency budget.
  bool converged() const noexcept {
    switch (method) {
      case QfiMethod::variance: return true;
      case QfiMethod::convexity: return residual <= 1e-8;
      case QfiMethod::sld: return residual <= 1e-9;
      case QfiMethod::fidelity_fd: return residual <= 1e-4 * std::max(value, 1e-300);
    }
    return true;
  }
};

/// Pure-state QFI for a diagonal generator acting after the first OPA:
/// F = 4 (<g^2> - <g>^2).
inline QfiResult qfi_pure(const TwoModePureState& state, const DiagonalGenerator& gen) {
  return {4.0 * variance(state, gen), QfiMethod::variance, state.cutoff(), 0.0,
          state.norm_deficit()};
}

namespace detail {

/// Worst unaccounted probability weight across an ensemble: dropped total
/// weight or the largest per-branch truncation loss.
inline double ensemble_deficit(const NumberDiagonalEnsemble& ens) {
  double worst = std::max(0.0, 1.0 - ens.total_weight());
  for (const auto& b : ens.branches()) worst = std::max(worst, b.state.norm_deficit());
  return worst;
}

}  // namespace detail

/**
 * Mixture QFI by the convexity decomposition, F = sum_n p_n F(|psi_n>).
 * Valid only while the branches stay orthogonal under the generator's flow;
 * they do here because every branch lives on its own n_a - n_b diagonal and
 * the generators are diagonal. The precondition is enforced, not assumed.
 */
inline QfiResult qfi_ensemble_convexity(const NumberDiagonalEnsemble& ens,
                                        const DiagonalGenerator& gen) {
  const double overlap = ens.max_pairwise_overlap();
  if (overlap > 1e-8)
    throw PreconditionError("qfi_ensemble_convexity: branch overlap " + std::to_string(overlap) +
                            " breaks the orthogonal-decomposition theorem");
  double f = 0.0;
  for (const auto& b : ens.branches()) f += b.weight * 4.0 * variance(b.state, gen);
  return {f, QfiMethod::convexity, ens.cutoff(), overlap, detail::ensemble_deficit(ens)};
}

/**
 * Mixed-state QFI via the SLD spectral formula,
 *   F = sum_{i,j : lambda_i + lambda_j > eps} 2 |<i|drho|j>|^2 / (lambda_i + lambda_j),
 * with drho = i[rho, g] and eigenvalue floor eps = 1e-12. Independent oracle
 * for the convexity route; cost is a dense diagonalization of the full
 * triangular grid, guarded by `dim_limit`.
 */
inline QfiResult qfi_sld(const NumberDiagonalEnsemble& ens, const DiagonalGenerator& gen,
                         std::size_t dim_limit = 4096) {
  const TriangularGrid grid{ens.cutoff().max_total};
  const std::size_t dim = grid.size();
  if (dim > dim_limit)
    throw ResourceError("qfi_sld: density dimension " + std::to_string(dim) +
                        " exceeds the safety limit " + std::to_string(dim_limit));

  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& b : ens.branches()) {
    const auto amps = b.state.amplitudes();
    Eigen::Map<const Eigen::VectorXcd> v(amps.data(), n);
    rho.noalias() += b.weight * (v * v.adjoint());
  }

  Eigen::VectorXd gvals(n);
  grid.for_each([&](int na, int nb, std::size_t idx) {
    gvals[static_cast<Eigen::Index>(idx)] = gen.value(na, nb);
  });

  // drho = i[rho, G] with diagonal G: (drho)_{jk} = i rho_{jk} (g_k - g_j).
  Eigen::MatrixXcd drho(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      drho(j, k) = cplx(0.0, gvals[k] - gvals[j]) * rho(j, k);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
  const Eigen::VectorXd& lam = solver.eigenvalues();
  const Eigen::MatrixXcd m = solver.eigenvectors().adjoint() * drho * solver.eigenvectors();

  constexpr double eps = 1e-12;
  double f = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double s = lam[i] + lam[j];
      if (s > eps) f += 2.0 * std::norm(m(i, j)) / s;
    }

  const double trace_residual = std::abs(lam.sum() - ens.total_weight());
  return {f, QfiMethod::sld, ens.cutoff(), trace_residual, detail::ensemble_deficit(ens)};
}

/**
 * Finite-difference fidelity QFI for a pure parameterized family:
 * central overlap stencil with a Richardson-halving residual.
 */
inline QfiResult qfi_fidelity_fd(const std::function<TwoModePureState(double)>& family,
                                 double phi0, double dphi = 1e-4) {
  if (!(dphi > 0.0)) throw InvalidArgument("qfi_fidelity_fd: dphi must be > 0");
  const auto estimate = [&](double d) {
    const TwoModePureState lo = family(phi0 - d / 2.0);
    const TwoModePureState hi = family(phi0 + d / 2.0);
    const double overlap = std::abs(inner_product(lo, hi));
    // rounding can push the overlap of near-identical states above 1
    return std::max(0.0, 8.0 * (1.0 - overlap) / (d * d));
  };
  const double full = estimate(dphi);
  const double half = estimate(dphi / 2.0);
  const TwoModePureState base = family(phi0);
  return {half, QfiMethod::fidelity_fd, base.cutoff(), std::abs(full - half),
          base.norm_deficit()};
}

/// Symmetric 2x2 quantum Fisher information matrix over (phi_d, phi_s) with
/// the derived Cramer-Rao bounds.
struct QFIMatrix {
  double f_dd = 0.0;
  double f_ds = 0.0;
  double f_sd = 0.0;
  double f_ss = 0.0;
  /// Determinant at or below threshold. When phi_d carries no information at
  /// all (f_dd = f_ds = 0) the problem degenerates to single-parameter
  /// estimation of phi_s and bound_phi_s is still reported as 1/f_ss.
  bool singular = false;
  double bound_phi_s = std::numeric_limits<double>::infinity();
  double bound_phi_d = std::numeric_limits<double>::infinity();

  double determinant() const noexcept { return f_dd * f_ss - f_ds * f_sd; }

  double min_eigenvalue() const noexcept {
    const double tr = f_dd + f_ss;
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * determinant()));
    return 0.5 * (tr - disc);
  }
};

/// QFIM of a pure post-OPA state for the commuting generators g_d, g_s.
inline QFIMatrix qfim(const TwoModePureState& state) {
  const DiagonalGenerator gd = DiagonalGenerator::half_diff();
  const DiagonalGenerator gs = DiagonalGenerator::half_sum();
  QFIMatrix m;
  m.f_dd = 4.0 * covariance(state, gd, gd);
  m.f_ds = 4.0 * covariance(state, gd, gs);
  m.f_sd = 4.0 * covariance(state, gs, gd);
  m.f_ss = 4.0 * covariance(state, gs, gs);

  constexpr double det_floor = 1e-14;
  constexpr double element_floor = 1e-12;
  const double det = m.determinant();
  if (det > det_floor) {
    m.singular = false;
    m.bound_phi_s = m.f_dd / det;
    m.bound_phi_d = m.f_ss / det;
  } else {
    m.singular = true;
    if (std::abs(m.f_dd) <= element_floor && std::abs(m.f_ds) <= element_floor &&
        m.f_ss > element_floor)
      m.bound_phi_s = 1.0 / m.f_ss;
    if (std::abs(m.f_ss) <= element_floor && std::abs(m.f_ds) <= element_floor &&
        m.f_dd > element_floor)
      m.bound_phi_d = 1.0 / m.f_dd;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Configuration-level dispatch
// ---------------------------------------------------------------------------

/// The phase-shift family generated by a diagonal generator, for the
/// finite-difference route.
inline PhaseModel phase_model_for(GeneratorKind kind, double phi) {
  switch (kind) {
    case GeneratorKind::upper:
    case GeneratorKind::number_a: return PhaseModel::upper(phi);
    case GeneratorKind::lower:
    case GeneratorKind::number_b: return PhaseModel::lower(phi);
    case GeneratorKind::half_sum: return PhaseModel::split(phi);
    case GeneratorKind::half_diff: return PhaseModel::two_phase(0.0, phi);
  }
  return PhaseModel::split(phi);
}

/// QFI of a full configuration for the chosen generator model and method,
/// with automatic cutoff escalation. Default method: convexity when
/// averaging is on, variance otherwise.
inline QfiResult qfi_of_config(const InterferometerConfig& cfg, GeneratorKind model,
                               std::optional<QfiMethod> method = std::nullopt) {
  const bool ensemble_path = cfg.averaging || cfg.mode_a.is_mixture() || cfg.mode_b.is_mixture();
  const QfiMethod m =
      method.value_or(ensemble_path ? QfiMethod::convexity : QfiMethod::variance);
  if (ensemble_path && (m == QfiMethod::variance || m == QfiMethod::fidelity_fd))
    throw InvalidArgument(std::string("the ") + to_string(m) +
                          " route needs a pure configuration; drop the averaging or choose "
                          "convexity/sld");
  const DiagonalGenerator gen{model};

  return with_cutoff_escalation(cfg, [&](const FockCutoff& cutoff) -> QfiResult {
    switch (m) {
      case QfiMethod::variance:
        return qfi_pure(post_opa_state(cfg, cutoff), gen);
      case QfiMethod::convexity:
        if (ensemble_path) return qfi_ensemble_convexity(post_opa_ensemble(cfg, cutoff), gen);
        return qfi_ensemble_convexity(
            NumberDiagonalEnsemble({{1.0, 0, post_opa_state(cfg, cutoff)}}), gen);
      case QfiMethod::sld:
        if (ensemble_path) return qfi_sld(post_opa_ensemble(cfg, cutoff), gen);
        return qfi_sld(
            NumberDiagonalEnsemble({{1.0, 0, post_opa_state(cfg, cutoff)}}), gen);
      case QfiMethod::fidelity_fd: {
        const TwoModePureState base = post_opa_state(cfg, cutoff);
        return qfi_fidelity_fd(
            [&](double phi) { return apply_phase(base, phase_model_for(model, phi)); }, 0.0);
      }
    }
    throw InvalidArgument("qfi_of_config: unknown method");
  });
}

/// QFIM of a full configuration (pure inputs), with cutoff escalation.
inline QFIMatrix qfim_of_config(const InterferometerConfig& cfg) {
  return with_cutoff_escalation(
      cfg, [&](const FockCutoff& cutoff) { return qfim(post_opa_state(cfg, cutoff)); });
}

// ---------------------------------------------------------------------------
// Parity detection
// ---------------------------------------------------------------------------

/// One grid point of the parity-detection scan.
struct ParityPoint {
  double phi_s = 0.0;
  double parity = 0.0;       // P = <(-1)^{n_b}> after the second OPA
  double dparity = 0.0;      // central finite-difference dP/dphi_s
  double cfi = 0.0;          // (dP)^2 / (1 - P^2); meaningless if indeterminate
  bool indeterminate = false;  // 1 - P^2 below 1e-10 (fringe extremum)
};

namespace detail {

inline double parity_b(const TwoModePureState& state) {
  const auto amps = state.amplitudes();
  double signed_sum = 0.0, total = 0.0;
  state.grid().for_each([&](int, int nb, std::size_t idx) {
    const double w = std::norm(amps[idx]);
    signed_sum += (nb % 2 == 0 ? w : -w);
    total += w;
  });
  return signed_sum / total;
}

}  // namespace detail

/// Cutoff and truncation-loss provenance of a parity scan.
struct ParityProvenance {
  FockCutoff cutoff_used;
  double norm_deficit = 0.0;
};

/**
 * Simulates the full pipeline (OPA, split phase phi_s, inverted second OPA of
 * equal gain, parity on mode B) on a grid of phi_s values and returns the
 * binary-outcome classical Fisher information per point. Grid points sitting
 * on a fringe extremum (1 - P^2 < 1e-10) are flagged indeterminate.
 */
inline std::vector<ParityPoint> parity_cfi(const InterferometerConfig& cfg,
                                           std::span<const double> phi_grid,
                                           double dphi = 1e-4,
                                           ParityProvenance* provenance = nullptr) {
  if (cfg.mode_a.is_mixture() || cfg.mode_b.is_mixture())
    throw PreconditionError("parity_cfi: parity detection needs pure product inputs");
  return with_cutoff_escalation(cfg, [&](const FockCutoff& cutoff) {
    const TwoModePureState after_first = post_opa_state(cfg, cutoff);
    const OpaParams readout{cfg.g, cfg.theta + std::numbers::pi};
    double worst_deficit = after_first.norm_deficit();
    const auto parity_at = [&](double phi) {
      const TwoModePureState out =
          apply_opa(apply_phase(after_first, PhaseModel::split(phi)), readout);
      worst_deficit = std::max(worst_deficit, out.norm_deficit());
      return detail::parity_b(out);
    };
    std::vector<ParityPoint> points;
    points.reserve(phi_grid.size());
    for (double phi : phi_grid) {
      ParityPoint pt;
      pt.phi_s = phi;
      pt.parity = parity_at(phi);
      pt.dparity = (parity_at(phi + dphi) - parity_at(phi - dphi)) / (2.0 * dphi);
      const double denom = 1.0 - pt.parity * pt.parity;
      if (denom < 1e-10) {
        pt.indeterminate = true;
      } else {
        pt.cfi = pt.dparity * pt.dparity / denom;
      }
      points.push_back(pt);
    }
    if (provenance != nullptr) *provenance = {cutoff, worst_deficit};
    return points;
  });
}

}  // namespace su11
