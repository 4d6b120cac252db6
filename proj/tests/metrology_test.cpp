// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <su11/analytic.hpp>
#include <su11/metrology.hpp>

using namespace su11;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

InterferometerConfig config(ModeSpec a, ModeSpec b, double g, bool averaging = false) {
  InterferometerConfig cfg;
  cfg.mode_a = std::move(a);
  cfg.mode_b = std::move(b);
  cfg.g = g;
  cfg.averaging = averaging;
  return cfg;
}

}  // namespace

TEST_CASE("qfi_pure: vacuum inputs reproduce n_k(n_k+2) for every model") {
  const auto cfg = config(ModeSpec::vacuum(), ModeSpec::vacuum(), 1.0);
  const double want = 13.154116418008241;
  for (auto kind : {GeneratorKind::upper, GeneratorKind::lower, GeneratorKind::half_sum}) {
    const auto r = qfi_of_config(cfg, kind);
    REQUIRE_THAT(r.value, WithinRel(want, 1e-8));
  }
}

TEST_CASE("qfi_pure: un-averaged coherent input reproduces the three closed forms") {
  // The paper's per-model forms place the coherent state in the lower arm
  // (mode B): the upper-arm model is then the least informative one.
  const auto cfg = config(ModeSpec::vacuum(), ModeSpec::coherent(1.0), 0.5);
  REQUIRE_THAT(qfi_of_config(cfg, GeneratorKind::upper).value,
               WithinRel(3.0571322669949597, 1e-7));
  REQUIRE_THAT(qfi_of_config(cfg, GeneratorKind::lower).value,
               WithinRel(9.229454806255934, 1e-7));
  REQUIRE_THAT(qfi_of_config(cfg, GeneratorKind::half_sum).value,
               WithinRel(5.143293536625447, 1e-7));

  // swapping the input modes swaps the u and l values
  const auto swapped = config(ModeSpec::coherent(1.0), ModeSpec::vacuum(), 0.5);
  REQUIRE_THAT(qfi_of_config(swapped, GeneratorKind::upper).value,
               WithinRel(9.229454806255934, 1e-7));
}

TEST_CASE("qfi_ensemble_convexity") {
  SECTION("single branch reduces to qfi_pure") {
    FockCutoff cutoff{60};
    const auto st = apply_opa(TwoModePureState::basis_state(cutoff, 0, 0), {0.5, 0.0});
    const auto ens = NumberDiagonalEnsemble({{1.0, 0, st}});
    REQUIRE_THAT(qfi_ensemble_convexity(ens, DiagonalGenerator::upper()).value,
                 WithinAbs(qfi_pure(st, DiagonalGenerator::upper()).value, 1e-12));
  }
  SECTION("phase-averaged coherent input: (n+1) n_k (n_k+2), same for u/l/s") {
    const auto cfg = config(ModeSpec::coherent(1.0), ModeSpec::vacuum(), 0.5, true);
    const double want = 2.762195691083632;
    const double u = qfi_of_config(cfg, GeneratorKind::upper).value;
    const double l = qfi_of_config(cfg, GeneratorKind::lower).value;
    const double s = qfi_of_config(cfg, GeneratorKind::half_sum).value;
    REQUIRE_THAT(u, WithinRel(want, 1e-8));
    REQUIRE_THAT(l, WithinAbs(u, 1e-10));
    REQUIRE_THAT(s, WithinAbs(u, 1e-10));
  }
  SECTION("overlapping branches are rejected") {
    FockCutoff cutoff{20};
    const auto st = TwoModePureState::basis_state(cutoff, 1, 0);
    const auto ens = NumberDiagonalEnsemble({{0.5, 0, st}, {0.5, 1, st}});
    REQUIRE_THROWS_AS(qfi_ensemble_convexity(ens, DiagonalGenerator::upper()),
                      PreconditionError);
  }
}

TEST_CASE("qfi_sld") {
  SECTION("pure single branch matches qfi_pure") {
    FockCutoff cutoff{40};
    const auto st = apply_opa(TwoModePureState::basis_state(cutoff, 0, 0), {0.5, 0.0});
    const auto pure = qfi_pure(st, DiagonalGenerator::upper()).value;
    const auto sld = qfi_sld(NumberDiagonalEnsemble({{1.0, 0, st}}),
                             DiagonalGenerator::upper()).value;
    REQUIRE_THAT(sld, WithinRel(pure, 1e-8));
  }
  SECTION("two-branch averaged ensemble matches the convexity route") {
    FockCutoff cutoff{40};
    const OpaParams opa{0.5, 0.0};
    const auto b0 = apply_opa(TwoModePureState::basis_state(cutoff, 0, 0), opa);
    const auto b1 = apply_opa(TwoModePureState::basis_state(cutoff, 1, 0), opa);
    const auto ens = NumberDiagonalEnsemble({{0.5, 0, b0}, {0.5, 1, b1}});
    const double conv = qfi_ensemble_convexity(ens, DiagonalGenerator::upper()).value;
    const double sld = qfi_sld(ens, DiagonalGenerator::upper()).value;
    REQUIRE_THAT(sld, WithinRel(conv, 1e-8));
  }
  SECTION("generator commuting with rho gives zero") {
    FockCutoff cutoff{12};
    const auto ens = NumberDiagonalEnsemble(
        {{0.5, 0, TwoModePureState::basis_state(cutoff, 0, 0)},
         {0.5, 1, TwoModePureState::basis_state(cutoff, 1, 0)}});
    REQUIRE_THAT(qfi_sld(ens, DiagonalGenerator::upper()).value, WithinAbs(0.0, 1e-10));
  }
  SECTION("resource limit") {
    FockCutoff cutoff{24};
    const auto ens = NumberDiagonalEnsemble(
        {{1.0, 0, TwoModePureState::basis_state(cutoff, 0, 0)}});
    REQUIRE_THROWS_AS(qfi_sld(ens, DiagonalGenerator::upper(), 10), ResourceError);
  }
}

TEST_CASE("qfi_fidelity_fd") {
  SECTION("two-mode squeezed vacuum upper-arm family") {
    const auto cfg = config(ModeSpec::vacuum(), ModeSpec::vacuum(), 1.0);
    const auto fd = qfi_of_config(cfg, GeneratorKind::upper, QfiMethod::fidelity_fd);
    REQUIRE_THAT(fd.value, WithinRel(13.154116418008241, 1e-4));
    REQUIRE(fd.converged());
  }
  SECTION("constant family gives zero") {
    FockCutoff cutoff{12};
    const auto st = TwoModePureState::basis_state(cutoff, 1, 0);
    const auto fd = qfi_fidelity_fd([&](double) { return st; }, 0.0);
    REQUIRE_THAT(fd.value, WithinAbs(0.0, 1e-12));
    REQUIRE(fd.converged());
  }
  SECTION("coherent-in-B family matches the upper-arm closed form") {
    const auto cfg = config(ModeSpec::vacuum(), ModeSpec::coherent(1.0), 0.5);
    const auto fd = qfi_of_config(cfg, GeneratorKind::upper, QfiMethod::fidelity_fd);
    REQUIRE_THAT(fd.value, WithinRel(3.0571322669949597, 1e-4));
  }
}

TEST_CASE("qfim") {
  SECTION("coherent(1) x vacuum at g = 0.5") {
    const auto m = qfim_of_config(config(ModeSpec::coherent(1.0), ModeSpec::vacuum(), 0.5));
    REQUIRE_THAT(m.f_dd, WithinRel(1.0, 1e-8));
    REQUIRE_THAT(m.f_ds, WithinRel(1.5430806348152437, 1e-8));
    REQUIRE_THAT(m.f_ss, WithinRel(5.143293536625446, 1e-8));
    REQUIRE_FALSE(m.singular);
    REQUIRE_THAT(m.bound_phi_s, WithinRel(0.3620308304831552, 1e-8));
    REQUIRE_THAT(m.f_ds, WithinAbs(m.f_sd, 1e-10));
    REQUIRE(m.min_eigenvalue() > -1e-10);
  }
  SECTION("vacuum x vacuum: singular f_dd, phi_s information survives") {
    const auto m = qfim_of_config(config(ModeSpec::vacuum(), ModeSpec::vacuum(), 1.0));
    REQUIRE(m.singular);
    REQUIRE_THAT(m.f_dd, WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(m.f_ss, WithinRel(13.154116418008241, 1e-8));
    REQUIRE_THAT(1.0 / m.bound_phi_s, WithinRel(13.154116418008241, 1e-8));
    REQUIRE(std::isinf(m.bound_phi_d));
  }
  SECTION("two coherent inputs reproduce F_coh") {
    const auto m = qfim_of_config(config(ModeSpec::coherent(1.0), ModeSpec::coherent(1.0), 0.5));
    REQUIRE_THAT(1.0 / m.bound_phi_s, WithinRel(16.159210043403117, 1e-6));
  }
}

TEST_CASE("phase-averaging equivalence with the two-parameter bound") {
  // for any mode-A input with mode-B vacuum, the averaged QFI equals
  // 1/bound_phi_s of the un-averaged pure state
  for (const ModeSpec& in : {ModeSpec::coherent(1.3), ModeSpec::fock(2),
                             ModeSpec::squeezed_vacuum(0.4)}) {
    const auto avg = qfi_of_config(config(in, ModeSpec::vacuum(), 0.6, true),
                                   GeneratorKind::upper);
    const auto m = qfim_of_config(config(in, ModeSpec::vacuum(), 0.6));
    REQUIRE_THAT(avg.value, WithinRel(1.0 / m.bound_phi_s, 1e-8));
  }
}

TEST_CASE("hierarchy: ignoring the nuisance parameter never hurts the naive QFI") {
  for (const ModeSpec& in : {ModeSpec::coherent(1.0), ModeSpec::squeezed_vacuum(0.5)}) {
    const auto cfg = config(in, ModeSpec::vacuum(), 0.5);
    const double naive = qfi_of_config(cfg, GeneratorKind::half_sum).value;
    const auto m = qfim_of_config(cfg);
    REQUIRE(naive >= 1.0 / m.bound_phi_s - 1e-10);
  }
}

TEST_CASE("structure independence and monotonicity of the averaged QFI") {
  const double coh = qfi_of_config(config(ModeSpec::coherent(1.0), ModeSpec::vacuum(), 0.5, true),
                                   GeneratorKind::upper).value;
  const double fock = qfi_of_config(config(ModeSpec::fock(1), ModeSpec::vacuum(), 0.5, true),
                                    GeneratorKind::upper).value;
  REQUIRE_THAT(coh, WithinRel(fock, 1e-8));

  // increasing n and increasing g both increase the averaged QFI
  const double n2 = qfi_of_config(config(ModeSpec::fock(2), ModeSpec::vacuum(), 0.5, true),
                                  GeneratorKind::upper).value;
  const double g_up = qfi_of_config(config(ModeSpec::fock(1), ModeSpec::vacuum(), 0.7, true),
                                    GeneratorKind::upper).value;
  REQUIRE(n2 > fock);
  REQUIRE(g_up > fock);
}

TEST_CASE("qfi_of_config method dispatch") {
  SECTION("pure-only routes are rejected on averaged configurations") {
    const auto cfg = config(ModeSpec::coherent(1.0), ModeSpec::vacuum(), 0.5, true);
    REQUIRE_THROWS_AS(qfi_of_config(cfg, GeneratorKind::upper, QfiMethod::variance),
                      InvalidArgument);
    REQUIRE_THROWS_AS(qfi_of_config(cfg, GeneratorKind::upper, QfiMethod::fidelity_fd),
                      InvalidArgument);
  }
  SECTION("explicit convexity on a pure configuration equals the variance route") {
    const auto cfg = config(ModeSpec::coherent(1.0), ModeSpec::vacuum(), 0.5);
    REQUIRE_THAT(qfi_of_config(cfg, GeneratorKind::upper, QfiMethod::convexity).value,
                 WithinRel(qfi_of_config(cfg, GeneratorKind::upper).value, 1e-12));
  }
}

TEST_CASE("parity_cfi") {
  SECTION("vacuum inputs approach n_k(n_k+2) at the dark fringe") {
    const auto cfg = config(ModeSpec::vacuum(), ModeSpec::vacuum(), 0.5);
    const double grid[] = {0.002};
    const auto pts = parity_cfi(cfg, grid);
    REQUIRE_FALSE(pts[0].indeterminate);
    REQUIRE_THAT(pts[0].cfi, WithinRel(1.381097845541816, 1e-3));
  }
  SECTION("exact fringe extremum is flagged indeterminate") {
    const auto cfg = config(ModeSpec::vacuum(), ModeSpec::vacuum(), 0.5);
    const double grid[] = {0.0};
    const auto pts = parity_cfi(cfg, grid);
    REQUIRE(pts[0].indeterminate);
  }
  SECTION("coherent x squeezed vacuum reaches F_cl") {
    auto cfg = config(ModeSpec::coherent(1.0), ModeSpec::squeezed_vacuum(0.5), 0.5);
    const double grid[] = {0.002, 0.01, 0.1, 0.5};
    const auto pts = parity_cfi(cfg, grid);
    double best = 0.0;
    for (const auto& p : pts)
      if (!p.indeterminate) best = std::max(best, p.cfi);
    REQUIRE_THAT(best, WithinRel(5.510334769751476, 1e-3));
  }
  SECTION("mixtures are rejected") {
    auto cfg = config(ModeSpec::number_mixture({0.5, 0.5}), ModeSpec::vacuum(), 0.5);
    const double grid[] = {0.1};
    REQUIRE_THROWS_AS(parity_cfi(cfg, grid), PreconditionError);
  }
}
