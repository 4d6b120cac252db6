// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file config.hpp
 * @brief Interferometer run configuration, cutoff policy, and input pipelines.
 *
 * Cutoff policy: for the OPA acting on vacuum the truncation tail is the
 * thermal sum over pairs, sum_{k>K} tanh^{2k}(g)/cosh^2(g) = tanh^{2(K+1)}(g),
 * so the default max_total makes that analytic tail smaller than tail_tol and
 * adds per-mode allowances for the input photons. For everything beyond the
 * analytic reach, callers double the cutoff until the reported norm deficit
 * is within tail_tol (with_cutoff_escalation).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include <su11/errors.hpp>
#include <su11/fock.hpp>
#include <su11/opa.hpp>
#include <su11/states.hpp>

namespace su11 {

/// Largest max_total the automatic escalation will try.
inline constexpr int kMaxAutoMaxTotal = 2048;

/// A full run description: inputs, OPA, phase model, truncation overrides.
struct InterferometerConfig {
  ModeSpec mode_a = ModeSpec::vacuum();
  ModeSpec mode_b = ModeSpec::vacuum();
  double g = 0.0;
  double theta = 0.0;
  PhaseModel phase_model = PhaseModel::split(0.0);
  bool averaging = false;

  std::optional<int> max_total;   // pinned cutoff: disables escalation
  std::optional<int> guard;
  std::optional<double> tail_tol;

  OpaParams opa() const { return {g, theta}; }
};

namespace detail {

/// Photon pairs needed so that ratio^{2(K+1)} < tail_tol.
inline int pairs_for_tail(double ratio, double tail_tol) {
  if (!(ratio > 0.0)) return 1;
  if (ratio >= 1.0) throw InvalidArgument("pairs_for_tail: ratio must be < 1");
  const int k = static_cast<int>(std::ceil(std::log(tail_tol) / (2.0 * std::log(ratio))));
  return std::max(k, 1);
}

/// Extra total-photon levels a mode's own distribution occupies.
inline int mode_allowance(const ModeSpec& spec, double tail_tol) {
  switch (spec.kind) {
    case ModeSpec::Kind::vacuum: return 0;
    case ModeSpec::Kind::fock: return spec.fock_n;
    case ModeSpec::Kind::coherent: {
      const double lam = std::norm(spec.alpha);
      return static_cast<int>(std::ceil(lam + 12.0 * std::sqrt(lam + 1.0) + 25.0));
    }
    case ModeSpec::Kind::squeezed_vacuum:
      if (spec.squeeze_r == 0.0) return 0;
      return 2 * pairs_for_tail(std::tanh(spec.squeeze_r), tail_tol) + 8;
    case ModeSpec::Kind::number_mixture:
      return static_cast<int>(spec.mixture.size()) - 1;
  }
  return 0;
}

}  // namespace detail

/// Default total-photon cutoff for the given inputs and gain.
inline int default_max_total(const ModeSpec& a, const ModeSpec& b, double g, double tail_tol) {
  const int opa_pairs = g > 0.0 ? detail::pairs_for_tail(std::tanh(g), tail_tol) : 1;
  int n = 2 * opa_pairs + detail::mode_allowance(a, tail_tol) +
          detail::mode_allowance(b, tail_tol) + 4;
  n = std::max(n, 8);
  if (n % 2 != 0) ++n;
  return std::min(n, kMaxAutoMaxTotal);
}

/// Resolves the effective cutoff of a configuration (overrides > policy).
inline FockCutoff resolve_cutoff(const InterferometerConfig& cfg) {
  FockCutoff c;
  c.tail_tol = cfg.tail_tol.value_or(1e-10);
  c.guard = cfg.guard.value_or(12);
  c.max_total = cfg.max_total.value_or(
      default_max_total(cfg.mode_a, cfg.mode_b, cfg.g, c.tail_tol));
  c.validate();
  return c;
}

/**
 * Runs fn(cutoff), doubling max_total on ConvergenceError until it fits or the
 * auto limit is reached. A pinned cutoff is never escalated.
 */
template <typename F>
auto with_cutoff_escalation(const InterferometerConfig& cfg, F&& fn) {
  FockCutoff cutoff = resolve_cutoff(cfg);
  const bool pinned = cfg.max_total.has_value();
  for (;;) {
    try {
      return fn(cutoff);
    } catch (const ConvergenceError& e) {
      if (pinned || cutoff.max_total >= kMaxAutoMaxTotal) throw;
      cutoff.max_total =
          std::min(std::max(e.suggested_max_total(), 2 * cutoff.max_total), kMaxAutoMaxTotal);
    }
  }
}

/// The pure two-mode input of a configuration (throws on mixtures).
inline TwoModePureState prepare_pure_input(const InterferometerConfig& cfg,
                                           const FockCutoff& cutoff) {
  if (cfg.mode_a.is_mixture() || cfg.mode_b.is_mixture())
    throw PreconditionError("configuration with a number mixture has no pure input state");
  return std::get<TwoModePureState>(product_state(cfg.mode_a, cfg.mode_b, cutoff));
}

/// The phase-averaged (or mixture) input ensemble. Requires mode B vacuum,
/// matching the averaging derivation.
inline NumberDiagonalEnsemble prepare_averaged_input(const InterferometerConfig& cfg,
                                                     const FockCutoff& cutoff) {
  InputState input = product_state(cfg.mode_a, cfg.mode_b, cutoff);
  if (std::holds_alternative<TwoModePureState>(input))
    return phase_average(std::get<TwoModePureState>(input));
  // Already number-diagonal; averaging is idempotent branchwise.
  return phase_average(std::get<NumberDiagonalEnsemble>(input));
}

/// Input evolved through the first OPA (pure path).
inline TwoModePureState post_opa_state(const InterferometerConfig& cfg,
                                       const FockCutoff& cutoff) {
  return apply_opa(prepare_pure_input(cfg, cutoff), cfg.opa());
}

/// Phase-averaged input evolved through the first OPA (ensemble path).
inline NumberDiagonalEnsemble post_opa_ensemble(const InterferometerConfig& cfg,
                                                const FockCutoff& cutoff) {
  return apply_opa_ensemble(prepare_averaged_input(cfg, cutoff), cfg.opa());
}

}  // namespace su11
