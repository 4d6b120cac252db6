// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file analytic.hpp
 * @brief Closed-form catalog of the SU(1,1) precision bounds, as pure
 *        functions of named physical parameters.
 *
 * Conventions: n_kappa = 2 sinh^2(g) is the mean photon number the OPA makes
 * from vacuum. In f_gong the non-vacuum coherent input sits in mode B (the
 * lower arm) — that placement is what makes the upper-arm model the least
 * informative one. sinh(4g) is always computed from g directly; the radical
 * identity 4 sqrt(n_k(n_k+1))(2n_k+1) holds only under the n_k = sinh^2(g)
 * convention and is exposed separately for the convention audit.
 */

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <su11/errors.hpp>

namespace su11::analytic {

/// Mean photon number generated by the OPA from vacuum.
inline double n_kappa(double g) {
  const double s = std::sinh(g);
  return 2.0 * s * s;
}

/// Which single-phase model a closed form refers to.
enum class PhaseShiftModel { upper, lower, split };

/// Named physical parameters for the formula catalog. Only the fields a
/// formula consumes need to be set; validate() checks cross-consistency of
/// whatever is present.
struct AnalyticParams {
  double g = 0.0;
  double n_alpha = 0.0;
  double n_beta = 0.0;
  std::complex<double> alpha{0.0, 0.0};
  std::complex<double> beta{0.0, 0.0};
  double r = 0.0;
  double n_chi_bar = 0.0;
  double v_chi = 0.0;
  double n_in = 0.0;

  void validate() const {
    if (!(g >= 0.0)) throw InvalidArgument("AnalyticParams: g must be >= 0");
    if (n_alpha < 0 || n_beta < 0 || r < 0 || n_chi_bar < 0 || v_chi < 0 || n_in < 0)
      throw InvalidArgument("AnalyticParams: photon numbers must be >= 0");
    if (n_alpha > 0 && std::abs(std::norm(alpha) - n_alpha) > 1e-12)
      throw InvalidArgument("AnalyticParams: |alpha|^2 inconsistent with n_alpha");
    if (n_beta > 0 && std::abs(std::norm(beta) - n_beta) > 1e-12)
      throw InvalidArgument("AnalyticParams: |beta|^2 inconsistent with n_beta");
    if (n_in > 0 && (n_alpha > 0 || n_beta > 0) &&
        std::abs(n_in - n_alpha - n_beta) > 1e-12)
      throw InvalidArgument("AnalyticParams: n_in must equal n_alpha + n_beta");
  }
};

/// Vacuum-input QFI, n_k(n_k+2) = sinh^2(2g): the same for every phase model.
inline double f_vacuum(double g) {
  const double nk = n_kappa(g);
  return nk * (nk + 2.0);
}

/// Per-configuration QFIs for vacuum in mode A and coherent |beta> in mode B
/// (no phase averaging): n_b cosh(4g) + sinh^2(2g) + n_b (1 -/+ 2 cosh(2g))
/// for upper/lower; without the last term for split.
inline double f_gong(double g, double n_beta, PhaseShiftModel model) {
  const double base = n_beta * std::cosh(4.0 * g) + std::pow(std::sinh(2.0 * g), 2);
  switch (model) {
    case PhaseShiftModel::upper: return base + n_beta * (1.0 - 2.0 * std::cosh(2.0 * g));
    case PhaseShiftModel::lower: return base + n_beta * (1.0 + 2.0 * std::cosh(2.0 * g));
    case PhaseShiftModel::split: return base;
  }
  return base;
}

/// QFI of the phase-averaged input (any structure, mean photon number
/// n_chi_bar, mode B vacuum): (n_chi_bar + 1) n_k (n_k + 2) for every model.
inline double f_averaged(double g, double n_chi_bar) {
  return (n_chi_bar + 1.0) * f_vacuum(g);
}

/**
 * Two-parameter QCRB on phi_s for |chi> in mode A and vacuum in mode B:
 * 1 / ((n_chi_bar + 1) n_k (n_k + 2)). The photon-number variance of |chi>
 * cancels out of the bound; v_chi is accepted and ignored to document that.
 */
inline double bound_phi_s_one_vacuum(double g, double n_chi_bar, double v_chi = 0.0) {
  (void)v_chi;  // cancels exactly against the off-diagonal QFIM terms
  if (g == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / f_averaged(g, n_chi_bar);
}

/// 1/bound on phi_s for two coherent inputs |alpha> x |beta> at theta = 0.
inline double f_two_coherent(double g, std::complex<double> alpha, std::complex<double> beta) {
  const double na = std::norm(alpha);
  const double nb = std::norm(beta);
  const double n_in = na + nb;
  if (n_in <= 0.0)
    throw InvalidArgument("f_two_coherent: n_in = 0; use f_vacuum for vacuum inputs");
  const double nk = n_kappa(g);
  return (n_in * n_in * nk * (nk + 2.0) + 4.0 * na * nb * (nk + 1.0) * (nk + 1.0)) / n_in +
         nk * (nk + 2.0) + 2.0 * (alpha * beta).real() * std::sinh(4.0 * g);
}

/// Maximum of f_two_coherent over input phases at fixed moduli: equal
/// amplitudes with conjugate phases.
inline double f_two_coherent_max(double g, double n_in) {
  const double nk = n_kappa(g);
  return (n_in + 1.0) * nk * (nk + 2.0) + n_in * (nk + 1.0) * (nk + 1.0) +
         n_in * std::sinh(4.0 * g);
}

/// The radical form quoted in the literature for sinh(4g), evaluated under a
/// given n_kappa convention. Agrees with sinh(4g) only for n_kappa = sinh^2(g).
inline double sinh4g_radical(double nk) {
  return 4.0 * std::sqrt(nk * (nk + 1.0)) * (2.0 * nk + 1.0);
}

/// 1/bound on phi_s for coherent (alpha real) x squeezed vacuum: F_Q^1.
/// The second term is 0 when alpha = 0 or r = 0 (vacuum reductions).
inline double f_coh_sq(double g, double alpha_sq, double r) {
  const double s2g = std::sinh(2.0 * g);
  const double c2g = std::cosh(2.0 * g);
  const double t1 = s2g * s2g * (alpha_sq * std::exp(2.0 * r) + std::pow(std::cosh(r), 2));
  const double s2r = std::sinh(2.0 * r);
  const double num = 8.0 * alpha_sq * s2r * s2r;
  const double den = 4.0 * alpha_sq + 2.0 * s2r * s2r;
  const double t2 = den == 0.0 ? 0.0 : c2g * c2g * num / den;
  return t1 + t2;
}

/// The comparison value from Li et al. for the same input: F_Q^2.
inline double f_li(double g, double alpha_sq, double r) {
  const double s2g = std::sinh(2.0 * g);
  const double c2g = std::cosh(2.0 * g);
  const double s2r = std::sinh(2.0 * r);
  return s2g * s2g * (alpha_sq * std::exp(2.0 * r) + std::pow(std::cosh(r), 2)) +
         c2g * c2g * (alpha_sq + 0.5 * s2r * s2r);
}

/// F_Q^1 - F_Q^2 in closed form; always <= 0. Defined as 0 at the
/// denominator-zero point alpha = 0, r = 0 where the formulas coincide.
inline double f_diff(double g, double alpha_sq, double r) {
  const double c2g = std::cosh(2.0 * g);
  const double bracket = -4.0 * alpha_sq + std::cosh(4.0 * r) - 1.0;
  const double den = 4.0 * (4.0 * alpha_sq + std::cosh(4.0 * r) - 1.0);
  if (den == 0.0) return 0.0;
  return -c2g * c2g * bracket * bracket / den;
}

/// Classical Fisher information of parity detection for coherent x squeezed
/// vacuum: the first term of F_Q^1.
inline double f_parity_cl(double g, double alpha_sq, double r) {
  const double s2g = std::sinh(2.0 * g);
  return s2g * s2g * (alpha_sq * std::exp(2.0 * r) + std::pow(std::cosh(r), 2));
}

/// MZI-style QCRB on phi_d from QFIM elements: F_ss / (F_dd F_ss - F_ds^2).
inline double bound_mzi_phi_d(double f_dd, double f_ss, double f_ds) {
  const double det = f_dd * f_ss - f_ds * f_ds;
  if (det <= 1e-14) return std::numeric_limits<double>::infinity();
  return f_ss / det;
}

}  // namespace su11::analytic
