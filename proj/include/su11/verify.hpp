// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file verify.hpp
 * @brief The verification grid: every closed form in the catalog checked
 *        against the numeric engines at pinned tolerances.
 *
 * Each check reports the sub-comparison that came closest to (or crossed) its
 * tolerance. Numeric cutoffs come from the tail policy at the options'
 * tail_tol with automatic doubling, except where a check pins its own cutoff.
 * Cross-route identity checks (convexity vs SLD) run at a reduced cutoff:
 * the identity holds at any truncation, and the dense SLD diagonalization is
 * the only expensive piece of the suite.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <su11/analytic.hpp>
#include <su11/config.hpp>
#include <su11/metrology.hpp>

namespace su11::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;  // deviation of the binding sub-comparison
  double tolerance = 0.0;      // its tolerance (after tol_scale)
  std::string note;            // which sub-comparison was binding
};

struct VerifyOptions {
  double tail_tol = 1e-12;  // truncation budget driving the cutoff policy
  int guard = 12;
  double tol_scale = 1.0;   // multiplies every tolerance
  int sld_max_total = 28;   // reduced cutoff for the dense SLD cross-checks
  int qfim_pinned_max_total = 100;  // pinned cutoff for the non-vacuum QFIM grids
};

namespace detail {

inline double rel_dev(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

/// Tracks the binding sub-comparison of a criterion.
struct Tracker {
  double worst_ratio = -1.0;
  double dev = 0.0;
  double tol = 1.0;
  std::string what;

  void add(double d, double t, const std::string& w) {
    const double ratio = t > 0.0 ? d / t : (d > 0.0 ? 1e300 : 0.0);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      dev = d;
      tol = t;
      what = w;
    }
  }

  CheckResult result(const std::string& name) const {
    return {name, worst_ratio <= 1.0, dev, tol, what};
  }
};

inline InterferometerConfig make_config(const VerifyOptions& opt, ModeSpec a, ModeSpec b,
                                        double g, bool averaging = false) {
  InterferometerConfig cfg;
  cfg.mode_a = std::move(a);
  cfg.mode_b = std::move(b);
  cfg.g = g;
  cfg.averaging = averaging;
  cfg.guard = opt.guard;
  cfg.tail_tol = opt.tail_tol;
  return cfg;
}

inline std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// The four mode-A inputs of the phase-averaging criteria, with their mean
// photon numbers. The mixture's pure counterpart (same number distribution)
// is assembled on demand for the QFIM route.
struct AveragedInput {
  const char* label;
  ModeSpec spec;
  double n_bar;
};

inline std::vector<AveragedInput> averaged_inputs() {
  return {{"coherent(1)", ModeSpec::coherent(1.0), 1.0},
          {"fock(1)", ModeSpec::fock(1), 1.0},
          {"fock(3)", ModeSpec::fock(3), 3.0},
          {"mix(1/2,1/2)", ModeSpec::number_mixture({0.5, 0.5}), 0.5}};
}

/// A pure mode-A state with the same photon-number distribution as the given
/// mixture, tensored with vacuum: sum_n sqrt(p_n) |n, 0>.
inline TwoModePureState mixture_pure_counterpart(const std::vector<double>& probs,
                                                 const FockCutoff& cutoff) {
  TriangularGrid grid{cutoff.max_total};
  std::vector<cplx> amps(grid.size(), cplx{0.0, 0.0});
  for (std::size_t n = 0; n < probs.size(); ++n)
    amps[grid.index(static_cast<int>(n), 0)] = std::sqrt(probs[n]);
  return TwoModePureState::from_raw(cutoff, std::move(amps));
}

inline double qfim_inv_bound_of_input(const VerifyOptions& opt, const AveragedInput& input,
                                      double g) {
  if (input.spec.is_mixture()) {
    auto cfg = make_config(opt, ModeSpec::fock(1), ModeSpec::vacuum(), g);
    return with_cutoff_escalation(cfg, [&](const FockCutoff& cutoff) {
      const auto pure = mixture_pure_counterpart(input.spec.mixture, cutoff);
      return 1.0 / qfim(apply_opa(pure, OpaParams{g, 0.0})).bound_phi_s;
    });
  }
  return 1.0 / qfim_of_config(make_config(opt, input.spec, ModeSpec::vacuum(), g)).bound_phi_s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

/// Vacuum inputs: every phase model reproduces n_k(n_k+2).
inline CheckResult check_vacuum_qfi(const VerifyOptions& opt) {
  detail::Tracker t;
  const double tol = 1e-8 * opt.tol_scale;
  for (double g : {0.25, 0.5, 1.0, 1.5}) {
    const double want = analytic::f_vacuum(g);
    for (auto kind : {GeneratorKind::upper, GeneratorKind::lower, GeneratorKind::half_sum}) {
      const auto cfg = detail::make_config(opt, ModeSpec::vacuum(), ModeSpec::vacuum(), g);
      const double got = qfi_of_config(cfg, kind).value;
      t.add(detail::rel_dev(got, want), tol,
            detail::fmt("g=%.2f model=", g) + to_string(kind));
    }
  }
  return t.result("vacuum-qfi-universality");
}

/// Un-averaged coherent state in the lower arm: the three per-model forms.
inline CheckResult check_single_arm_qfis(const VerifyOptions& opt) {
  detail::Tracker t;
  const double tol = 1e-7 * opt.tol_scale;
  for (double n_beta : {0.5, 1.0, 2.0}) {
    for (double g : {0.3, 0.7}) {
      const auto cfg = detail::make_config(
          opt, ModeSpec::vacuum(), ModeSpec::coherent(std::sqrt(n_beta)), g);
      const struct {
        GeneratorKind kind;
        analytic::PhaseShiftModel model;
      } cases[] = {{GeneratorKind::upper, analytic::PhaseShiftModel::upper},
                   {GeneratorKind::lower, analytic::PhaseShiftModel::lower},
                   {GeneratorKind::half_sum, analytic::PhaseShiftModel::split}};
      for (const auto& c : cases) {
        const double want = analytic::f_gong(g, n_beta, c.model);
        const double got = qfi_of_config(cfg, c.kind).value;
        t.add(detail::rel_dev(got, want), tol,
              detail::fmt("n_beta=%.1f g=%.1f model=", n_beta, g) + to_string(c.kind));
      }
    }
  }
  return t.result("single-arm-qfis-lower-input");
}

/// Phase-averaged inputs: u/l/s agree with each other and with
/// (n_bar + 1) n_k (n_k + 2), independent of the input's structure.
inline CheckResult check_averaged_universality(const VerifyOptions& opt) {
  detail::Tracker t;
  const double tol = 1e-8 * opt.tol_scale;
  for (double g : {0.5, 1.0}) {
    double coherent_value = 0.0, fock1_value = 0.0;
    for (const auto& input : detail::averaged_inputs()) {
      const double want = analytic::f_averaged(g, input.n_bar);
      const auto cfg = detail::make_config(opt, input.spec, ModeSpec::vacuum(), g, true);
      double first = 0.0;
      for (auto kind :
           {GeneratorKind::upper, GeneratorKind::lower, GeneratorKind::half_sum}) {
        const double got = qfi_of_config(cfg, kind).value;
        if (kind == GeneratorKind::upper) first = got;
        t.add(detail::rel_dev(got, want), tol,
              std::string(input.label) + detail::fmt(" g=%.1f model=", g) + to_string(kind));
        t.add(detail::rel_dev(got, first), tol,
              std::string(input.label) + detail::fmt(" g=%.1f model agreement", g));
      }
      if (std::string(input.label) == "coherent(1)") coherent_value = first;
      if (std::string(input.label) == "fock(1)") fock1_value = first;
    }
    // structure independence at equal mean photon number
    t.add(detail::rel_dev(coherent_value, fock1_value), tol,
          detail::fmt("coherent(1) vs fock(1) structure independence, g=%.1f", g));
  }
  return t.result("phase-averaged-universality");
}

/// The two-parameter bound reproduces the phase-averaged QFI, including the
/// cancellation of the input's photon-number variance.
inline CheckResult check_two_parameter_equivalence(const VerifyOptions& opt) {
  detail::Tracker t;
  const double tol = 1e-8 * opt.tol_scale;
  for (double g : {0.5, 1.0}) {
    double coherent_bound = 0.0, fock1_bound = 0.0;
    for (const auto& input : detail::averaged_inputs()) {
      const double averaged =
          qfi_of_config(detail::make_config(opt, input.spec, ModeSpec::vacuum(), g, true),
                        GeneratorKind::upper)
              .value;
      const double inv_bound = detail::qfim_inv_bound_of_input(opt, input, g);
      t.add(detail::rel_dev(inv_bound, averaged), tol,
            std::string(input.label) + detail::fmt(" g=%.1f qfim vs averaged", g));
      if (std::string(input.label) == "coherent(1)") coherent_bound = inv_bound;
      if (std::string(input.label) == "fock(1)") fock1_bound = inv_bound;
    }
    t.add(detail::rel_dev(coherent_bound, fock1_bound), tol,
          detail::fmt("V_chi cancellation coherent(1) vs fock(1), g=%.1f", g));
  }
  return t.result("two-parameter-equivalence");
}

/// Route agreement: variance vs fidelity finite differences at full cutoff,
/// convexity vs SLD at a reduced cutoff (the identity holds at any
/// truncation).
inline CheckResult check_oracle_triangle(const VerifyOptions& opt) {
  detail::Tracker t;
  const double tol_fd = 1e-4 * opt.tol_scale;
  const double tol_sld = 1e-8 * opt.tol_scale;
  const auto kinds = {GeneratorKind::upper, GeneratorKind::lower, GeneratorKind::half_sum};

  // pure configurations of criteria 1 and 2 plus the pure inputs of criteria
  // 3 and 4
  struct PureCase {
    std::string label;
    ModeSpec a, b;
    double g;
  };
  std::vector<PureCase> pure_cases;
  for (double g : {0.25, 0.5, 1.0, 1.5})
    pure_cases.push_back({detail::fmt("vacuum g=%.2f", g), ModeSpec::vacuum(),
                          ModeSpec::vacuum(), g});
  for (double n_beta : {0.5, 1.0, 2.0})
    for (double g : {0.3, 0.7})
      pure_cases.push_back({detail::fmt("coherent-B(%.1f) g=%.1f", n_beta, g),
                            ModeSpec::vacuum(), ModeSpec::coherent(std::sqrt(n_beta)), g});
  for (double g : {0.5, 1.0}) {
    pure_cases.push_back({detail::fmt("coherent(1) g=%.1f", g), ModeSpec::coherent(1.0),
                          ModeSpec::vacuum(), g});
    pure_cases.push_back({detail::fmt("fock(3) g=%.1f", g), ModeSpec::fock(3),
                          ModeSpec::vacuum(), g});
  }

  for (const auto& pc : pure_cases) {
    const auto cfg = detail::make_config(opt, pc.a, pc.b, pc.g);
    for (auto kind : kinds) {
      const double var = qfi_of_config(cfg, kind, QfiMethod::variance).value;
      const double fd = qfi_of_config(cfg, kind, QfiMethod::fidelity_fd).value;
      t.add(detail::rel_dev(fd, var), tol_fd, pc.label + " fd vs variance " + to_string(kind));
    }
  }

  // convexity vs SLD at the reduced cutoff
  FockCutoff sld_cutoff{opt.sld_max_total, opt.guard, 1.0 - 1e-12};
  for (const auto& pc : pure_cases) {
    InterferometerConfig cfg = detail::make_config(opt, pc.a, pc.b, pc.g);
    cfg.max_total = sld_cutoff.max_total;
    cfg.tail_tol = sld_cutoff.tail_tol;
    const auto state = post_opa_state(cfg, sld_cutoff);
    const NumberDiagonalEnsemble single({{1.0, 0, state}});
    for (auto kind : kinds) {
      const DiagonalGenerator gen{kind};
      const double conv = qfi_ensemble_convexity(single, gen).value;
      const double sld = qfi_sld(single, gen).value;
      t.add(detail::rel_dev(sld, conv), tol_sld,
            pc.label + " sld vs convexity " + to_string(kind));
    }
  }
  for (double g : {0.5, 1.0}) {
    for (const auto& input : detail::averaged_inputs()) {
      InterferometerConfig cfg =
          detail::make_config(opt, input.spec, ModeSpec::vacuum(), g, true);
      cfg.max_total = sld_cutoff.max_total;
      cfg.tail_tol = sld_cutoff.tail_tol;
      const auto ens = post_opa_ensemble(cfg, sld_cutoff);
      for (auto kind : kinds) {
        const DiagonalGenerator gen{kind};
        const double conv = qfi_ensemble_convexity(ens, gen).value;
        const double sld = qfi_sld(ens, gen).value;
        t.add(detail::rel_dev(sld, conv), tol_sld,
              std::string(input.label) + detail::fmt(" g=%.1f sld vs convexity ", g) +
                  to_string(kind));
      }
    }
  }
  return t.result("oracle-triangle");
}

/// Two coherent inputs: QFIM bound vs the closed form, its g -> 0 limit, and
/// the phase-maximum consistency.
inline CheckResult check_two_coherent(const VerifyOptions& opt) {
  detail::Tracker t;
  const double tol_main = 1e-6 * opt.tol_scale;
  const double tol_limit = 1e-3 * opt.tol_scale;
  const double tol_max = 1e-10 * opt.tol_scale;
  const double moduli[] = {0.5, 1.0};
  const double phases[] = {0.0, M_PI / 4.0, M_PI / 2.0};

  for (double g : {0.3, 0.7}) {
    for (double ma : moduli)
      for (double pa : phases)
        for (double mb : moduli)
          for (double pb : phases) {
            const cplx alpha = ma * std::exp(cplx(0.0, pa));
            const cplx beta = mb * std::exp(cplx(0.0, pb));
            InterferometerConfig cfg = detail::make_config(
                opt, ModeSpec::coherent(alpha), ModeSpec::coherent(beta), g);
            cfg.max_total = opt.qfim_pinned_max_total;
            const auto m = qfim_of_config(cfg);
            const double want = analytic::f_two_coherent(g, alpha, beta);
            t.add(detail::rel_dev(1.0 / m.bound_phi_s, want), tol_main,
                  detail::fmt("|a|=%.1f |b|=%.1f g=%.1f", ma, mb, g) +
                      detail::fmt(" phases %.2f/%.2f", pa, pb));
          }
  }

  // g -> 0: the one-mode interferometer value 4 n_a n_b / n_in
  for (double ma : moduli)
    for (double mb : moduli) {
      const auto cfg = detail::make_config(opt, ModeSpec::coherent(ma),
                                           ModeSpec::coherent(mb), 1e-4);
      const auto m = qfim_of_config(cfg);
      const double want = 4.0 * ma * ma * mb * mb / (ma * ma + mb * mb);
      t.add(detail::rel_dev(1.0 / m.bound_phi_s, want), tol_limit,
            detail::fmt("g->0 limit |a|=%.1f |b|=%.1f", ma, mb));
    }

  // conjugate equal amplitudes hit the maximum formula exactly
  for (double g : {0.3, 0.7})
    for (double mod : moduli)
      for (double p : phases) {
        const cplx alpha = mod * std::exp(cplx(0.0, p));
        const cplx beta = mod * std::exp(cplx(0.0, -p));
        const double full = analytic::f_two_coherent(g, alpha, beta);
        const double maxf = analytic::f_two_coherent_max(g, 2.0 * mod * mod);
        t.add(detail::rel_dev(full, maxf), tol_max,
              detail::fmt("max consistency |a|=%.1f phase=%.2f g=%.1f", mod, p, g));
      }
  return t.result("two-coherent-bound");
}

/// Coherent x squeezed vacuum: QFIM bound vs closed form plus the algebraic
/// relations between the two published QFIs and the parity CFI.
inline CheckResult check_coherent_squeezed(const VerifyOptions& opt) {
  detail::Tracker t;
  const double tol_main = 1e-6 * opt.tol_scale;
  const double tol_alg = 1e-10 * opt.tol_scale;

  for (double a2 : {0.5, 1.0})
    for (double r : {0.3, 0.5})
      for (double g : {0.3, 0.5}) {
        InterferometerConfig cfg = detail::make_config(
            opt, ModeSpec::coherent(std::sqrt(a2)), ModeSpec::squeezed_vacuum(r), g);
        cfg.max_total = opt.qfim_pinned_max_total;
        const auto m = qfim_of_config(cfg);
        const double want = analytic::f_coh_sq(g, a2, r);
        t.add(detail::rel_dev(1.0 / m.bound_phi_s, want), tol_main,
              detail::fmt("a2=%.1f r=%.1f g=%.1f", a2, r, g));
      }

  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j)
      for (int k = 0; k < 20; ++k) {
        const double g = 0.05 + 0.07 * i;
        const double a2 = 0.05 + 0.15 * j;
        const double r = 0.02 + 0.05 * k;
        const double f1 = analytic::f_coh_sq(g, a2, r);
        const double f2 = analytic::f_li(g, a2, r);
        const double diff = analytic::f_diff(g, a2, r);
        t.add(std::abs(f1 - f2 - diff), tol_alg, detail::fmt("difference identity g=%.2f", g));
        t.add(diff > 0.0 ? diff : 0.0, tol_alg, "f_diff positivity violation");
        t.add(f1 >= analytic::f_parity_cl(g, a2, r) ? 0.0 : analytic::f_parity_cl(g, a2, r) - f1,
              tol_alg, "parity CFI above the quantum bound");
      }
  return t.result("coherent-squeezed-bound");
}

/// Parity detection: the scanned CFI maximum reaches the closed form, and the
/// vacuum dark-fringe limit reproduces the vacuum QFI.
inline CheckResult check_parity_pipeline(const VerifyOptions& opt) {
  detail::Tracker t;
  const double tol = 1e-3 * opt.tol_scale;

  std::vector<double> grid;
  for (double phi = 2e-3; phi < 0.3; phi *= 1.9) grid.push_back(phi);
  for (double phi = 0.35; phi < 3.0; phi += 0.45) grid.push_back(phi);

  for (double a2 : {0.5, 1.0})
    for (double r : {0.3, 0.5})
      for (double g : {0.3, 0.5}) {
        const auto cfg = detail::make_config(
            opt, ModeSpec::coherent(std::sqrt(a2)), ModeSpec::squeezed_vacuum(r), g);
        const auto pts = parity_cfi(cfg, grid);
        double best = 0.0;
        for (const auto& p : pts)
          if (!p.indeterminate) best = std::max(best, p.cfi);
        const double want = analytic::f_parity_cl(g, a2, r);
        t.add(detail::rel_dev(best, want), tol,
              detail::fmt("max CFI a2=%.1f r=%.1f g=%.1f", a2, r, g));
      }

  for (double g : {0.5, 1.0}) {
    const auto cfg = detail::make_config(opt, ModeSpec::vacuum(), ModeSpec::vacuum(), g);
    const double phi0[] = {2e-3};
    const auto pts = parity_cfi(cfg, phi0);
    t.add(detail::rel_dev(pts[0].cfi, analytic::f_vacuum(g)), tol,
          detail::fmt("vacuum dark-fringe limit g=%.1f", g));
  }
  return t.result("parity-cfi-pipeline");
}

/// Structural invariants: exact diagonal conservation, unitarity, QFIM
/// symmetry and positivity, and the inverse-OPA round trip.
inline CheckResult check_structural_invariants(const VerifyOptions& opt) {
  detail::Tracker t;
  const double tol = 1e-10 * opt.tol_scale;

  {  // diagonal conservation, exact zeros
    FockCutoff cutoff{70, opt.guard, 1e-8};
    for (int n : {0, 1, 3}) {
      const auto st = apply_opa(TwoModePureState::basis_state(cutoff, n, 0), {0.8, 0.4});
      double worst = 0.0;
      st.grid().for_each([&](int na, int nb, std::size_t idx) {
        if (na - nb != n) worst = std::max(worst, std::abs(st.amplitudes()[idx]));
      });
      t.add(worst, 1e-300, detail::fmt("diagonal conservation n=%d", double(n)));
    }
  }
  {  // unitarity on the retained space
    const auto cfg = detail::make_config(opt, ModeSpec::vacuum(), ModeSpec::vacuum(), 0.8);
    const auto st = with_cutoff_escalation(
        cfg, [&](const FockCutoff& c) { return post_opa_state(cfg, c); });
    t.add(st.norm_deficit(), tol, "unitarity residual, vacuum g=0.8");
  }
  {  // QFIM symmetry and positivity
    const struct {
      ModeSpec a, b;
    } battery[] = {{ModeSpec::coherent(1.0), ModeSpec::vacuum()},
                   {ModeSpec::coherent(1.0), ModeSpec::squeezed_vacuum(0.4)},
                   {ModeSpec::coherent(0.8), ModeSpec::coherent(0.6)}};
    for (const auto& inputs : battery) {
      const auto m = qfim_of_config(detail::make_config(opt, inputs.a, inputs.b, 0.5));
      t.add(std::abs(m.f_ds - m.f_sd), tol, "QFIM symmetry");
      t.add(std::max(0.0, -m.min_eigenvalue()), tol, "QFIM positive semidefiniteness");
    }
  }
  {  // inverse-OPA round trip
    FockCutoff cutoff{90, opt.guard, 1e-10};
    const struct {
      ModeSpec a, b;
    } battery[] = {{ModeSpec::vacuum(), ModeSpec::vacuum()},
                   {ModeSpec::fock(1), ModeSpec::vacuum()},
                   {ModeSpec::coherent(0.8), ModeSpec::vacuum()}};
    for (const auto& inputs : battery) {
      const auto in = std::get<TwoModePureState>(product_state(inputs.a, inputs.b, cutoff));
      const auto rt = second_opa(apply_opa(in, {0.5, 0.0}), {0.5, 0.0});
      double worst = 0.0;
      in.grid().for_each([&](int, int, std::size_t idx) {
        worst = std::max(worst, std::abs(in.amplitudes()[idx] - rt.amplitudes()[idx]));
      });
      t.add(worst, tol, "inverse-OPA round trip");
    }
  }
  return t.result("structural-invariants");
}

/// Convention audit: the radical identity for sinh(4g) holds under
/// n_k = sinh^2(g) and demonstrably fails under n_k = 2 sinh^2(g).
inline CheckResult check_convention_audit(const VerifyOptions& opt) {
  detail::Tracker t;
  const double tol = 1e-10 * opt.tol_scale;
  std::string note = "radical vs sinh(4g):";
  for (double g : {0.3, 0.7, 1.1}) {
    const double s2 = std::pow(std::sinh(g), 2);
    const double direct = std::sinh(4.0 * g);
    const double match = analytic::sinh4g_radical(s2);
    const double mismatch = analytic::sinh4g_radical(2.0 * s2);
    t.add(detail::rel_dev(match, direct), tol, detail::fmt("agreement at n_k=sinh^2, g=%.1f", g));
    // the paper's own n_k = 2 sinh^2(g) convention must visibly disagree
    t.add(detail::rel_dev(mismatch, direct) > 0.01 ? 0.0 : 1.0, 0.5,
          detail::fmt("discrepancy visible at n_k=2sinh^2, g=%.1f", g));
    note += detail::fmt(" [g=%.1f: %.6f vs", g, direct) + detail::fmt(" %.6f]", mismatch);
  }
  auto r = t.result("sinh4g-convention-audit");
  r.note = note + " | " + r.note;
  return r;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

using CheckFn = std::function<CheckResult(const VerifyOptions&)>;

struct Check {
  std::string name;
  CheckFn run;
};

inline const std::vector<Check>& checks() {
  static const std::vector<Check> all = {
      {"vacuum-qfi-universality", check_vacuum_qfi},
      {"single-arm-qfis-lower-input", check_single_arm_qfis},
      {"phase-averaged-universality", check_averaged_universality},
      {"two-parameter-equivalence", check_two_parameter_equivalence},
      {"oracle-triangle", check_oracle_triangle},
      {"two-coherent-bound", check_two_coherent},
      {"coherent-squeezed-bound", check_coherent_squeezed},
      {"parity-cfi-pipeline", check_parity_pipeline},
      {"structural-invariants", check_structural_invariants},
      {"sinh4g-convention-audit", check_convention_audit},
  };
  return all;
}

inline std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& c : checks()) names.push_back(c.name);
  return names;
}

/// Runs the selected checks (all by default); `progress` is called after each.
inline std::vector<CheckResult> run_checks(
    const VerifyOptions& options = {},
    const std::function<void(const CheckResult&)>& progress = {},
    const std::vector<std::string>& only = {}) {
  for (const auto& name : only) {
    bool known = false;
    for (const auto& check : checks()) known = known || check.name == name;
    if (!known) throw InvalidArgument("unknown check '" + name + "' (see: verify --list)");
  }
  std::vector<CheckResult> results;
  for (const auto& check : checks()) {
    if (!only.empty() &&
        std::find(only.begin(), only.end(), check.name) == only.end())
      continue;
    CheckResult r = check.run(options);
    if (progress) progress(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace su11::verify
