// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file states.hpp
 * @brief Input-state preparation: vacuum, Fock, coherent, squeezed vacuum and
 *        number-diagonal mixtures, plus two-mode assembly and phase averaging.
 *
 * Squeezed vacuum is prepared by numerically exponentiating the squeeze
 * generator (r/2)(e^{i phi} a^dag^2 - e^{-i phi} a^2) on the truncated ladder
 * with guard levels; the closed-form amplitudes serve as a test oracle only,
 * so there is one construction path for all Gaussian preparations.
 */

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include <su11/detail/tridiag.hpp>
#include <su11/errors.hpp>
#include <su11/fock.hpp>

namespace su11 {

/// Description of one input mode.
struct ModeSpec {
  enum class Kind { vacuum, fock, coherent, squeezed_vacuum, number_mixture };

  Kind kind = Kind::vacuum;
  int fock_n = 0;
  cplx alpha{0.0, 0.0};
  double squeeze_r = 0.0;
  double squeeze_phase = 0.0;           // phi_xi, defaults to 0
  std::vector<double> mixture;          // p_0, p_1, ...

  static ModeSpec vacuum() { return {}; }
  static ModeSpec fock(int n) {
    ModeSpec m;
    m.kind = Kind::fock;
    m.fock_n = n;
    return m;
  }
  static ModeSpec coherent(cplx a) {
    ModeSpec m;
    m.kind = Kind::coherent;
    m.alpha = a;
    return m;
  }
  static ModeSpec squeezed_vacuum(double r, double phase = 0.0) {
    ModeSpec m;
    m.kind = Kind::squeezed_vacuum;
    m.squeeze_r = r;
    m.squeeze_phase = phase;
    return m;
  }
  static ModeSpec number_mixture(std::vector<double> probs) {
    ModeSpec m;
    m.kind = Kind::number_mixture;
    m.mixture = std::move(probs);
    return m;
  }

  bool is_mixture() const noexcept { return kind == Kind::number_mixture; }
  bool is_vacuum() const noexcept {
    return kind == Kind::vacuum || (kind == Kind::fock && fock_n == 0) ||
           (kind == Kind::coherent && alpha == cplx{0.0, 0.0}) ||
           (kind == Kind::squeezed_vacuum && squeeze_r == 0.0);
  }

  /// Mean photon number of the described mode (exact).
  double mean_photon() const {
    switch (kind) {
      case Kind::vacuum: return 0.0;
      case Kind::fock: return static_cast<double>(fock_n);
      case Kind::coherent: return std::norm(alpha);
      case Kind::squeezed_vacuum: {
        const double s = std::sinh(squeeze_r);
        return s * s;
      }
      case Kind::number_mixture: {
        double n = 0.0;
        for (std::size_t i = 0; i < mixture.size(); ++i) n += static_cast<double>(i) * mixture[i];
        return n;
      }
    }
    return 0.0;
  }

  void validate() const {
    switch (kind) {
      case Kind::fock:
        if (fock_n < 0) throw InvalidArgument("ModeSpec: fock(n) needs n >= 0");
        break;
      case Kind::squeezed_vacuum:
        if (!(squeeze_r >= 0.0)) throw InvalidArgument("ModeSpec: sqvac needs r >= 0");
        break;
      case Kind::number_mixture: {
        if (mixture.empty()) throw InvalidArgument("ModeSpec: empty mixture");
        double total = 0.0;
        for (double p : mixture) {
          if (p < 0.0) throw InvalidArgument("ModeSpec: mixture probability < 0");
          total += p;
        }
        if (std::abs(total - 1.0) > 1e-12)
          throw InvalidArgument("ModeSpec: mixture probabilities sum to " + std::to_string(total));
        break;
      }
      default: break;
    }
  }
};

/// A prepared single-mode amplitude vector (levels 0..max_total) plus the
/// probability weight lost to its own truncation.
struct PreparedMode {
  std::vector<cplx> amplitudes;
  double deficit = 0.0;
};

namespace detail {

inline std::vector<cplx> coherent_amplitudes(cplx alpha, int n_max) {
  // c_n = e^{-|a|^2/2} a^n / sqrt(n!)
  std::vector<cplx> c(static_cast<std::size_t>(n_max) + 1);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= n_max; ++n)
    c[static_cast<std::size_t>(n)] =
        c[static_cast<std::size_t>(n) - 1] * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

/// exp[(r/2)(e^{i phi} a^dag^2 - e^{-i phi} a^2)] |0> on levels 0..n_max,
/// computed with `guard` extra levels that are discarded afterwards.
inline std::vector<cplx> squeezed_vacuum_amplitudes(double r, double phase, int n_max,
                                                    int guard) {
  const int ext = n_max + guard;
  const int len = ext / 2 + 1;  // even levels 0, 2, ..., <= ext
  const auto eig = su11::detail::cached_block(su11::detail::BlockFamily::squeeze, 0, len);
  Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(len);
  v0[0] = 1.0;
  const cplx step_phase = std::exp(cplx(0.0, phase + std::numbers::pi / 2.0));
  const Eigen::VectorXcd res = su11::detail::evolve_block(*eig, r, step_phase, std::move(v0));
  std::vector<cplx> c(static_cast<std::size_t>(n_max) + 1, cplx{0.0, 0.0});
  for (int j = 0; 2 * j <= n_max; ++j) c[static_cast<std::size_t>(2 * j)] = res[j];
  return c;
}

}  // namespace detail

/**
 * Prepares a pure single-mode state as an amplitude vector over levels
 * 0..max_total. Mixtures are rejected (use product_state). The vector is
 * normalized; the truncation loss is reported in the result and must stay
 * within tail_tol.
 */
inline PreparedMode prepare_pure(const ModeSpec& spec, const FockCutoff& cutoff) {
  spec.validate();
  cutoff.validate();
  const int n_max = cutoff.max_total;
  std::vector<cplx> c;
  switch (spec.kind) {
    case ModeSpec::Kind::vacuum:
      c.assign(static_cast<std::size_t>(n_max) + 1, cplx{0.0, 0.0});
      c[0] = 1.0;
      break;
    case ModeSpec::Kind::fock:
      if (spec.fock_n > n_max)
        throw CutoffError("prepare_pure: fock(" + std::to_string(spec.fock_n) +
                          ") exceeds max_total " + std::to_string(n_max));
      c.assign(static_cast<std::size_t>(n_max) + 1, cplx{0.0, 0.0});
      c[static_cast<std::size_t>(spec.fock_n)] = 1.0;
      break;
    case ModeSpec::Kind::coherent:
      c = detail::coherent_amplitudes(spec.alpha, n_max);
      break;
    case ModeSpec::Kind::squeezed_vacuum:
      c = detail::squeezed_vacuum_amplitudes(spec.squeeze_r, spec.squeeze_phase, n_max,
                                             cutoff.guard);
      break;
    case ModeSpec::Kind::number_mixture:
      throw PreconditionError("prepare_pure: number_mixture is not a pure kind");
  }
  double nrm2 = 0.0;
  for (const cplx& a : c) nrm2 += std::norm(a);
  const double deficit = std::max(0.0, 1.0 - nrm2);
  if (deficit > cutoff.tail_tol)
    throw ConvergenceError("prepare_pure: mode loses " + su11::detail::sci(deficit) +
                               " probability weight at max_total " + std::to_string(n_max) +
                               "; retry with max_total >= " + std::to_string(2 * n_max),
                           2 * n_max);
  const double inv = 1.0 / std::sqrt(nrm2);
  for (cplx& a : c) a *= inv;
  return {std::move(c), deficit};
}

/// Result of assembling a two-mode input: either a pure product or a
/// number-diagonal ensemble (when one factor is a number mixture).
using InputState = std::variant<TwoModePureState, NumberDiagonalEnsemble>;

namespace detail {

inline TwoModePureState tensor_product(const PreparedMode& a, const PreparedMode& b,
                                       const FockCutoff& cutoff) {
  TriangularGrid grid{cutoff.max_total};
  std::vector<cplx> amps(grid.size(), cplx{0.0, 0.0});
  grid.for_each([&](int na, int nb, std::size_t idx) {
    amps[idx] = a.amplitudes[static_cast<std::size_t>(na)] *
                b.amplitudes[static_cast<std::size_t>(nb)];
  });
  // Combined loss: each mode's own tail plus the cross corner cut off by the
  // triangular restriction.
  const double prior = 1.0 - (1.0 - a.deficit) * (1.0 - b.deficit);
  return TwoModePureState::from_raw(cutoff, std::move(amps), prior);
}

}  // namespace detail

/**
 * Assembles the two-mode input. pure x pure gives a TwoModePureState on the
 * triangular grid; number_mixture x pure gives a NumberDiagonalEnsemble with
 * one branch per retained mixture level. Two mixtures are unsupported.
 */
inline InputState product_state(const ModeSpec& a, const ModeSpec& b, const FockCutoff& cutoff) {
  a.validate();
  b.validate();
  cutoff.validate();
  if (a.is_mixture() && b.is_mixture())
    throw UnsupportedError("product_state: at most one mode may be a number mixture");

  if (!a.is_mixture() && !b.is_mixture())
    return detail::tensor_product(prepare_pure(a, cutoff), prepare_pure(b, cutoff), cutoff);

  const bool mix_in_a = a.is_mixture();
  const ModeSpec& mix = mix_in_a ? a : b;
  const ModeSpec& pure = mix_in_a ? b : a;
  const PreparedMode prepared = prepare_pure(pure, cutoff);

  std::vector<EnsembleBranch> branches;
  for (int n = 0; n < static_cast<int>(mix.mixture.size()); ++n) {
    const double p = mix.mixture[static_cast<std::size_t>(n)];
    if (p == 0.0) continue;
    if (n > cutoff.max_total)
      throw CutoffError("product_state: mixture level " + std::to_string(n) +
                        " exceeds max_total " + std::to_string(cutoff.max_total));
    PreparedMode level{std::vector<cplx>(static_cast<std::size_t>(cutoff.max_total) + 1,
                                         cplx{0.0, 0.0}),
                       0.0};
    level.amplitudes[static_cast<std::size_t>(n)] = 1.0;
    branches.push_back({p, n,
                        mix_in_a ? detail::tensor_product(level, prepared, cutoff)
                                 : detail::tensor_product(prepared, level, cutoff)});
  }
  return NumberDiagonalEnsemble(std::move(branches));
}

/**
 * Phase-averages a pure input whose mode B is vacuum, BEFORE the OPA:
 * returns the number-diagonal ensemble with p_n = |c_n|^2 and branches |n,0>.
 * Off-diagonal information is discarded by construction. Branches with
 * exactly zero weight (and numerically negligible ones, < 1e-18) are dropped.
 */
inline NumberDiagonalEnsemble phase_average(const TwoModePureState& state) {
  const TriangularGrid grid = state.grid();
  const auto amps = state.amplitudes();
  double off_b = 0.0;
  grid.for_each([&](int, int nb, std::size_t idx) {
    if (nb > 0) off_b = std::max(off_b, std::abs(amps[idx]));
  });
  if (off_b > 1e-12)
    throw PreconditionError(
        "phase_average: mode B must be vacuum (largest offending amplitude " +
        std::to_string(off_b) + ")");

  std::vector<EnsembleBranch> branches;
  for (int n = 0; n <= state.max_total(); ++n) {
    const double p = std::norm(state.amplitude(n, 0));
    if (p < 1e-18) continue;
    branches.push_back({p, n, TwoModePureState::basis_state(state.cutoff(), n, 0)});
  }
  return NumberDiagonalEnsemble(std::move(branches));
}

/// Branchwise phase averaging of an already number-diagonal ensemble.
/// Idempotent: every branch is a single Fock level in mode A, so averaging
/// changes nothing.
inline NumberDiagonalEnsemble phase_average(const NumberDiagonalEnsemble& ens) {
  std::vector<EnsembleBranch> branches;
  for (const auto& b : ens.branches()) {
    NumberDiagonalEnsemble averaged = phase_average(b.state);
    for (const auto& sub : averaged.branches())
      branches.push_back({b.weight * sub.weight, sub.label_n, sub.state});
  }
  return NumberDiagonalEnsemble(std::move(branches));
}

}  // namespace su11
