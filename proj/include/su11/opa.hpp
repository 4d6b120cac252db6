// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file opa.hpp
 * @brief The SU(1,1) optical elements: two-mode squeezer (OPA), the four
 *        phase-shift models, and the inverted second OPA of the readout.
 *
 * apply_opa implements exp[g (e^{i theta} a^dag b^dag - e^{-i theta} a b)].
 * The generator conserves n_a - n_b, so it splits into one tridiagonal block
 * per diagonal. Each block is evolved spectrally (see detail/tridiag.hpp) on
 * a grid extended by the cutoff's guard levels; the guard band is discarded
 * afterwards and its weight charged to the state's norm deficit.
 */

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <su11/detail/tridiag.hpp>
#include <su11/errors.hpp>
#include <su11/fock.hpp>

namespace su11 {

/// Gain and pump phase of one optical parametric amplifier.
struct OpaParams {
  double gain = 0.0;        // dimensionless parametric gain, >= 0
  double pump_phase = 0.0;  // radians

  void validate() const {
    if (!(gain >= 0.0)) throw InvalidArgument("OpaParams: gain must be >= 0");
    if (!std::isfinite(pump_phase)) throw InvalidArgument("OpaParams: pump_phase must be finite");
  }

  /// Mean photon number the OPA generates from vacuum: 2 sinh^2(g).
  double n_kappa() const noexcept {
    const double s = std::sinh(gain);
    return 2.0 * s * s;
  }
};

/// Where the unknown phase sits: upper arm, lower arm, split equally, or two
/// independent phases given as sum/difference.
struct PhaseModel {
  enum class Kind { upper, lower, split, two_phase };

  Kind kind = Kind::split;
  double phi = 0.0;    // upper / lower / split angle
  double phi_s = 0.0;  // two_phase only
  double phi_d = 0.0;  // two_phase only

  static PhaseModel upper(double phi) { return {Kind::upper, phi, 0.0, 0.0}; }
  static PhaseModel lower(double phi) { return {Kind::lower, phi, 0.0, 0.0}; }
  static PhaseModel split(double phi) { return {Kind::split, phi, 0.0, 0.0}; }
  static PhaseModel two_phase(double phi_s, double phi_d) {
    return {Kind::two_phase, 0.0, phi_s, phi_d};
  }

  /// Phase exponent at a grid point: the angle multiplying i in e^{i...}.
  double exponent(int na, int nb) const noexcept {
    switch (kind) {
      case Kind::upper: return phi * na;
      case Kind::lower: return phi * nb;
      case Kind::split: return phi * 0.5 * (na + nb);
      case Kind::two_phase: return phi_s * 0.5 * (na + nb) + phi_d * 0.5 * (na - nb);
    }
    return 0.0;
  }
};

namespace detail {

/// Number of k values with 2k + |d| <= limit (k >= 0); 0 if |d| > limit.
inline int block_length(int d_abs, int limit) {
  if (d_abs > limit) return 0;
  return (limit - d_abs) / 2 + 1;
}

}  // namespace detail

/**
 * Applies the OPA unitary to a state. Amplitudes stay confined to the input's
 * n_a - n_b diagonals (exact zeros elsewhere). The output is renormalized and
 * its norm deficit updated with the weight discarded from the guard band;
 * a deficit above tail_tol raises ConvergenceError naming a larger cutoff.
 */
inline TwoModePureState apply_opa(const TwoModePureState& state, const OpaParams& params) {
  params.validate();
  const FockCutoff& cutoff = state.cutoff();
  const int n = cutoff.max_total;
  const int ext = n + cutoff.guard;
  const TriangularGrid grid = state.grid();
  const auto amps = state.amplitudes();

  const cplx step_phase =
      std::exp(cplx(0.0, params.pump_phase + std::numbers::pi / 2.0));

  std::vector<cplx> out(grid.size(), cplx{0.0, 0.0});
  for (int d = -ext; d <= ext; ++d) {
    const int d_abs = d < 0 ? -d : d;
    const int len_ext = detail::block_length(d_abs, ext);
    if (len_ext == 0) continue;
    const int len_kept = detail::block_length(d_abs, n);
    if (len_kept == 0) continue;  // block entirely in the guard band: input is zero there

    Eigen::VectorXcd vec = Eigen::VectorXcd::Zero(len_ext);
    for (int k = 0; k < len_kept; ++k) {
      const int na = k + (d > 0 ? d : 0);
      const int nb = k + (d < 0 ? -d : 0);
      vec[k] = amps[grid.index(na, nb)];
    }
    if (vec.isZero(0.0)) continue;

    const auto eig = su11::detail::cached_block(su11::detail::BlockFamily::opa, d_abs, len_ext);
    const Eigen::VectorXcd res =
        su11::detail::evolve_block(*eig, params.gain, step_phase, std::move(vec));

    for (int k = 0; k < len_kept; ++k) {
      const int na = k + (d > 0 ? d : 0);
      const int nb = k + (d < 0 ? -d : 0);
      out[grid.index(na, nb)] = res[k];
    }
  }

  return TwoModePureState::from_raw(cutoff, std::move(out), state.norm_deficit());
}

/// Branchwise OPA on a number-diagonal ensemble; weights and labels are
/// untouched, and branch orthogonality is preserved (disjoint diagonals).
inline NumberDiagonalEnsemble apply_opa_ensemble(const NumberDiagonalEnsemble& ens,
                                                 const OpaParams& params) {
  std::vector<EnsembleBranch> out;
  out.reserve(ens.size());
  for (const auto& b : ens.branches())
    out.push_back({b.weight, b.label_n, apply_opa(b.state, params)});
  return NumberDiagonalEnsemble(std::move(out));
}

/// Multiplies each amplitude by the diagonal phase factor of the selected
/// model. Exactly norm-preserving.
inline TwoModePureState apply_phase(const TwoModePureState& state, const PhaseModel& model) {
  const auto amps = state.amplitudes();
  std::vector<cplx> out(amps.size());
  state.grid().for_each([&](int na, int nb, std::size_t idx) {
    out[idx] = amps[idx] * std::exp(cplx(0.0, model.exponent(na, nb)));
  });
  return TwoModePureState::from_raw(state.cutoff(), std::move(out), state.norm_deficit());
}

inline NumberDiagonalEnsemble apply_phase(const NumberDiagonalEnsemble& ens,
                                          const PhaseModel& model) {
  std::vector<EnsembleBranch> out;
  out.reserve(ens.size());
  for (const auto& b : ens.branches())
    out.push_back({b.weight, b.label_n, apply_phase(b.state, model)});
  return NumberDiagonalEnsemble(std::move(out));
}

/// The readout OPA: same gain, pump phase shifted by pi — the inverse
/// squeezer when no phase was accumulated in between.
inline TwoModePureState second_opa(const TwoModePureState& state, const OpaParams& params) {
  return apply_opa(state, OpaParams{params.gain, params.pump_phase + std::numbers::pi});
}

}  // namespace su11
