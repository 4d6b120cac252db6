// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Truncated two-mode Fock space: states, diagonal operators, moments.
 *
 * States live on the triangular index set n_a + n_b <= max_total (a total-photon
 * cutoff). The two-mode squeezer couples amplitudes along constant n_a - n_b
 * diagonals, so the triangular set bounds energy uniformly and keeps every
 * coupling block contiguous.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <su11/errors.hpp>

namespace su11 {

using cplx = std::complex<double>;

/// Truncation policy for the two-mode Fock grid.
///
/// `guard` extra total-photon levels are used internally while building
/// unitaries and discarded afterwards; the discarded weight is charged to
/// the state's norm deficit. `tail_tol` is the maximum admissible
/// probability weight outside the retained grid.
struct FockCutoff {
  int max_total = 1;
  int guard = 12;
  double tail_tol = 1e-10;

  void validate() const {
    if (max_total < 1) throw InvalidArgument("FockCutoff: max_total must be >= 1");
    if (guard < 0) throw InvalidArgument("FockCutoff: guard must be >= 0");
    if (!(tail_tol > 0.0 && tail_tol < 1.0))
      throw InvalidArgument("FockCutoff: tail_tol must lie in (0,1)");
  }
};

/// Index bookkeeping for the triangular set n_a + n_b <= max_total.
/// Amplitudes are stored lexicographically by (n_a + n_b, n_b).
struct TriangularGrid {
  int max_total = 0;

  std::size_t size() const noexcept {
    const auto n = static_cast<std::size_t>(max_total);
    return (n + 1) * (n + 2) / 2;
  }

  std::size_t index(int na, int nb) const noexcept {
    const int t = na + nb;
    return static_cast<std::size_t>(t) * (t + 1) / 2 + static_cast<std::size_t>(nb);
  }

  bool contains(int na, int nb) const noexcept {
    return na >= 0 && nb >= 0 && na + nb <= max_total;
  }

  /// Visits every grid point as fn(na, nb, flat_index).
  template <typename F>
  void for_each(F&& fn) const {
    std::size_t idx = 0;
    for (int t = 0; t <= max_total; ++t)
      for (int nb = 0; nb <= t; ++nb, ++idx) fn(t - nb, nb, idx);
  }
};

/// Which diagonal phase-shift generator a value grid represents.
enum class GeneratorKind { upper, lower, half_sum, half_diff, number_a, number_b };

inline const char* to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::upper: return "u";
    case GeneratorKind::lower: return "l";
    case GeneratorKind::half_sum: return "s";
    case GeneratorKind::half_diff: return "d";
    case GeneratorKind::number_a: return "number_a";
    case GeneratorKind::number_b: return "number_b";
  }
  return "?";
}

/// A real operator diagonal in the two-mode Fock basis. The value at each
/// grid point is an exact integer or half-integer:
///   u -> n_a, l -> n_b, s -> (n_a+n_b)/2, d -> (n_a-n_b)/2.
struct DiagonalGenerator {
  GeneratorKind kind = GeneratorKind::upper;

  double value(int na, int nb) const noexcept {
    switch (kind) {
      case GeneratorKind::upper:
      case GeneratorKind::number_a: return static_cast<double>(na);
      case GeneratorKind::lower:
      case GeneratorKind::number_b: return static_cast<double>(nb);
      case GeneratorKind::half_sum: return 0.5 * (na + nb);
      case GeneratorKind::half_diff: return 0.5 * (na - nb);
    }
    return 0.0;
  }

  static DiagonalGenerator upper() { return {GeneratorKind::upper}; }
  static DiagonalGenerator lower() { return {GeneratorKind::lower}; }
  static DiagonalGenerator half_sum() { return {GeneratorKind::half_sum}; }
  static DiagonalGenerator half_diff() { return {GeneratorKind::half_diff}; }
  static DiagonalGenerator number_a() { return {GeneratorKind::number_a}; }
  static DiagonalGenerator number_b() { return {GeneratorKind::number_b}; }
};

/**
 * A pure two-mode state on the triangular grid.
 *
 * Amplitudes are normalized at construction; `norm_deficit()` accumulates the
 * probability weight lost to truncation over the state's whole history and is
 * never reset. Construction fails with ConvergenceError once the cumulative
 * deficit exceeds the cutoff's tail_tol.
 *
 * Immutable after construction; all operations on states are pure functions.
 */
class TwoModePureState {
 public:
  /// Normalizes `raw` and charges 1 - ||raw||^2 (relative to a unit input
  /// carrying `prior_deficit`) to the deficit.
  static TwoModePureState from_raw(const FockCutoff& cutoff, std::vector<cplx> raw,
                                   double prior_deficit = 0.0) {
    cutoff.validate();
    TriangularGrid grid{cutoff.max_total};
    if (raw.size() != grid.size())
      throw DimensionMismatch("TwoModePureState: amplitude vector has size " +
                              std::to_string(raw.size()) + ", grid needs " +
                              std::to_string(grid.size()));
    double nrm2 = 0.0;
    for (const cplx& a : raw) nrm2 += std::norm(a);
    if (!(nrm2 > 0.0))
      throw InvalidArgument("TwoModePureState: zero amplitude vector");
    const double retained = std::min(nrm2, 1.0);
    const double deficit = 1.0 - (1.0 - prior_deficit) * retained;
    if (deficit > cutoff.tail_tol)
      throw ConvergenceError(
          "truncation lost " + detail::sci(deficit) + " probability weight (tail_tol " +
              detail::sci(cutoff.tail_tol) + "); retry with max_total >= " +
              std::to_string(2 * cutoff.max_total),
          2 * cutoff.max_total);
    const double inv = 1.0 / std::sqrt(nrm2);
    for (cplx& a : raw) a *= inv;
    return TwoModePureState(cutoff, std::move(raw), deficit);
  }

  /// The basis state |na, nb>.
  static TwoModePureState basis_state(const FockCutoff& cutoff, int na, int nb) {
    cutoff.validate();
    TriangularGrid grid{cutoff.max_total};
    if (!grid.contains(na, nb))
      throw CutoffError("basis_state: (" + std::to_string(na) + "," + std::to_string(nb) +
                        ") outside max_total " + std::to_string(cutoff.max_total));
    std::vector<cplx> amps(grid.size(), cplx{0.0, 0.0});
    amps[grid.index(na, nb)] = 1.0;
    return TwoModePureState(cutoff, std::move(amps), 0.0);
  }

  const FockCutoff& cutoff() const noexcept { return cutoff_; }
  int max_total() const noexcept { return cutoff_.max_total; }
  TriangularGrid grid() const noexcept { return TriangularGrid{cutoff_.max_total}; }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  double norm_deficit() const noexcept { return norm_deficit_; }

  cplx amplitude(int na, int nb) const noexcept {
    const TriangularGrid g = grid();
    return g.contains(na, nb) ? amps_[g.index(na, nb)] : cplx{0.0, 0.0};
  }

  /// Sum of |amplitude|^2 over the grid (1 up to rounding).
  double retained_norm() const noexcept {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return s;
  }

 private:
  TwoModePureState(const FockCutoff& cutoff, std::vector<cplx> amps, double deficit)
      : cutoff_(cutoff), amps_(std::move(amps)), norm_deficit_(deficit) {}

  FockCutoff cutoff_;
  std::vector<cplx> amps_;
  double norm_deficit_ = 0.0;
};

/// One branch of a number-diagonal mixture: weight p_n and the pure state the
/// branch has evolved into. `label_n` is the photon-number branch index of the
/// averaging decomposition.
struct EnsembleBranch {
  double weight = 0.0;
  int label_n = 0;
  TwoModePureState state;
};

/**
 * A weighted list of mutually orthogonal pure states — the phase-averaged
 * mixture. Branch n starts as |n,0> and stays confined to the n_a - n_b = n
 * diagonal under the OPA and the diagonal phase shifts, so pairwise
 * orthogonality survives every evolution in this library.
 */
class NumberDiagonalEnsemble {
 public:
  explicit NumberDiagonalEnsemble(std::vector<EnsembleBranch> branches)
      : branches_(std::move(branches)) {
    double total = 0.0;
    for (const auto& b : branches_) {
      if (b.weight < 0.0)
        throw InvalidArgument("NumberDiagonalEnsemble: negative branch weight");
      total += b.weight;
    }
    if (total > 1.0 + 1e-12)
      throw InvalidArgument("NumberDiagonalEnsemble: weights sum to " + std::to_string(total));
    if (branches_.empty())
      throw InvalidArgument("NumberDiagonalEnsemble: no branches");
  }

  const std::vector<EnsembleBranch>& branches() const noexcept { return branches_; }
  std::size_t size() const noexcept { return branches_.size(); }

  double total_weight() const noexcept {
    double s = 0.0;
    for (const auto& b : branches_) s += b.weight;
    return s;
  }

  const FockCutoff& cutoff() const noexcept { return branches_.front().state.cutoff(); }

  /// Largest |<i|j>| over branch pairs; 0 for a single branch.
  double max_pairwise_overlap() const;

 private:
  std::vector<EnsembleBranch> branches_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// <x|y> over the shared triangular grid. Both states must share max_total.
inline cplx inner_product(const TwoModePureState& x, const TwoModePureState& y) {
  if (x.max_total() != y.max_total())
    throw DimensionMismatch("inner_product: cutoffs differ (" +
                            std::to_string(x.max_total()) + " vs " +
                            std::to_string(y.max_total()) + ")");
  const auto ax = x.amplitudes();
  const auto ay = y.amplitudes();
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < ax.size(); ++i) s += std::conj(ax[i]) * ay[i];
  return s;
}

inline double NumberDiagonalEnsemble::max_pairwise_overlap() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < branches_.size(); ++i)
    for (std::size_t j = i + 1; j < branches_.size(); ++j)
      worst = std::max(worst, std::abs(inner_product(branches_[i].state, branches_[j].state)));
  return worst;
}

/// <gen> = sum values * |amplitudes|^2, renormalized by the retained norm so
/// truncation bias enters at O(tail_tol).
inline double expectation(const TwoModePureState& state, const DiagonalGenerator& gen) {
  const auto amps = state.amplitudes();
  double weighted = 0.0, total = 0.0;
  state.grid().for_each([&](int na, int nb, std::size_t idx) {
    const double w = std::norm(amps[idx]);
    weighted += gen.value(na, nb) * w;
    total += w;
  });
  return weighted / total;
}

/// <gen^2> - <gen>^2, clamped to 0 when rounding puts it within 1e-12 below 0.
inline double variance(const TwoModePureState& state, const DiagonalGenerator& gen) {
  const auto amps = state.amplitudes();
  double w1 = 0.0, w2 = 0.0, total = 0.0;
  state.grid().for_each([&](int na, int nb, std::size_t idx) {
    const double w = std::norm(amps[idx]);
    const double v = gen.value(na, nb);
    w1 += v * w;
    w2 += v * v * w;
    total += w;
  });
  const double mean = w1 / total;
  const double raw = w2 / total - mean * mean;
  if (raw < 0.0 && raw > -1e-12) return 0.0;
  return raw;
}

/// <g1 g2> - <g1><g2>. Both generators are diagonal, hence commuting, so the
/// symmetric ordering is unambiguous.
inline double covariance(const TwoModePureState& state, const DiagonalGenerator& g1,
                         const DiagonalGenerator& g2) {
  const auto amps = state.amplitudes();
  double w1 = 0.0, w2 = 0.0, w12 = 0.0, total = 0.0;
  state.grid().for_each([&](int na, int nb, std::size_t idx) {
    const double w = std::norm(amps[idx]);
    const double v1 = g1.value(na, nb);
    const double v2 = g2.value(na, nb);
    w1 += v1 * w;
    w2 += v2 * w;
    w12 += v1 * v2 * w;
    total += w;
  });
  return w12 / total - (w1 / total) * (w2 / total);
}

}  // namespace su11
