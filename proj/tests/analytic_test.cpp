// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include <su11/analytic.hpp>

using namespace su11::analytic;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("f_vacuum") {
  REQUIRE(f_vacuum(0.0) == 0.0);
  REQUIRE_THAT(f_vacuum(1.0), WithinRel(13.154116418008241, 1e-14));
  SECTION("identity n_k(n_k+2) = sinh^2(2g) on a grid") {
    for (double g = 0.05; g < 2.0; g += 0.11)
      REQUIRE_THAT(f_vacuum(g), WithinRel(std::pow(std::sinh(2 * g), 2), 1e-13));
  }
}

TEST_CASE("f_gong") {
  SECTION("collapses to f_vacuum at n_beta = 0") {
    for (auto m : {PhaseShiftModel::upper, PhaseShiftModel::lower, PhaseShiftModel::split})
      REQUIRE_THAT(f_gong(0.5, 0.0, m), WithinRel(f_vacuum(0.5), 1e-14));
  }
  SECTION("frozen values at g = 0.5, n_beta = 1") {
    REQUIRE_THAT(f_gong(0.5, 1.0, PhaseShiftModel::upper),
                 WithinRel(3.0571322669949597, 1e-14));
    REQUIRE_THAT(f_gong(0.5, 1.0, PhaseShiftModel::lower),
                 WithinRel(9.229454806255934, 1e-14));
    REQUIRE_THAT(f_gong(0.5, 1.0, PhaseShiftModel::split),
                 WithinRel(5.143293536625447, 1e-14));
  }
  SECTION("ordering l >= s >= u for positive g and n_beta") {
    for (double g = 0.1; g < 1.6; g += 0.25)
      for (double nb = 0.25; nb < 3.0; nb += 0.5) {
        REQUIRE(f_gong(g, nb, PhaseShiftModel::lower) >= f_gong(g, nb, PhaseShiftModel::split));
        REQUIRE(f_gong(g, nb, PhaseShiftModel::split) >= f_gong(g, nb, PhaseShiftModel::upper));
      }
  }
}

TEST_CASE("f_averaged") {
  REQUIRE_THAT(f_averaged(0.5, 0.0), WithinRel(f_vacuum(0.5), 1e-14));
  REQUIRE_THAT(f_averaged(0.5, 1.0), WithinRel(2.762195691083632, 1e-14));
  SECTION("tighter than the un-averaged l and s configurations") {
    for (double g = 0.1; g < 1.4; g += 0.3)
      for (double n = 0.25; n < 2.5; n += 0.5) {
        REQUIRE(f_averaged(g, n) <= f_gong(g, n, PhaseShiftModel::lower) + 1e-12);
        REQUIRE(f_averaged(g, n) <= f_gong(g, n, PhaseShiftModel::split) + 1e-12);
      }
  }
}

TEST_CASE("bound_phi_s_one_vacuum") {
  SECTION("independent of V_chi") {
    const double a = bound_phi_s_one_vacuum(0.5, 1.0, 0.0);
    const double b = bound_phi_s_one_vacuum(0.5, 1.0, 1.0);
    const double c = bound_phi_s_one_vacuum(0.5, 1.0, 10.0);
    REQUIRE(a == b);
    REQUIRE(b == c);
  }
  REQUIRE_THAT(bound_phi_s_one_vacuum(0.5, 1.0), WithinRel(0.3620308304831552, 1e-14));
  REQUIRE_THAT(bound_phi_s_one_vacuum(0.5, 0.0), WithinRel(1.0 / f_vacuum(0.5), 1e-14));
  REQUIRE(std::isinf(bound_phi_s_one_vacuum(0.0, 1.0)));
}

TEST_CASE("f_two_coherent") {
  using cplx = std::complex<double>;
  SECTION("beta = 0 reduces to the phase-averaged result") {
    REQUIRE_THAT(f_two_coherent(0.5, cplx{1.0, 0.0}, cplx{0.0, 0.0}),
                 WithinRel(f_averaged(0.5, 1.0), 1e-13));
  }
  SECTION("n_in = 0 is rejected toward f_vacuum") {
    REQUIRE_THROWS_AS(f_two_coherent(0.5, cplx{0.0, 0.0}, cplx{0.0, 0.0}),
                      su11::InvalidArgument);
  }
  SECTION("g -> 0 limit: one-mode interferometer value") {
    const double f = f_two_coherent(1e-4, cplx{1.0, 0.0}, cplx{1.0, 0.0});
    REQUIRE_THAT(f, WithinRel(2.0, 1e-3));
  }
  SECTION("frozen value and consistency with the maximum formula") {
    REQUIRE_THAT(f_two_coherent(0.5, cplx{1.0, 0.0}, cplx{1.0, 0.0}),
                 WithinRel(16.159210043403117, 1e-13));
    REQUIRE_THAT(f_two_coherent(0.5, cplx{1.0, 0.0}, cplx{1.0, 0.0}),
                 WithinRel(f_two_coherent_max(0.5, 2.0), 1e-10));
  }
  SECTION("conjugate equal phases maximize over the phase grid") {
    const double g = 0.4, mod = 0.9;
    double best_conj = 0.0;
    for (int i = 0; i < 16; ++i) {
      const double p = 2 * M_PI * i / 16;
      best_conj = std::max(best_conj,
                           f_two_coherent(g, mod * std::exp(cplx(0, p)),
                                          mod * std::exp(cplx(0, -p))));
    }
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) {
        const double p1 = 2 * M_PI * i / 16, p2 = 2 * M_PI * j / 16;
        REQUIRE(f_two_coherent(g, mod * std::exp(cplx(0, p1)),
                               mod * std::exp(cplx(0, p2))) <= best_conj + 1e-10);
      }
  }
}

TEST_CASE("f_two_coherent_max") {
  REQUIRE_THAT(f_two_coherent_max(0.5, 0.0), WithinRel(f_vacuum(0.5), 1e-14));
  SECTION("the paper's radical form of sinh(4g) holds only for n_k = sinh^2(g)") {
    for (double g : {0.3, 0.7, 1.1}) {
      const double s = std::sinh(g);
      REQUIRE_THAT(sinh4g_radical(s * s), WithinRel(std::sinh(4 * g), 1e-12));
      REQUIRE(std::abs(sinh4g_radical(2 * s * s) - std::sinh(4 * g)) > 0.1);
    }
  }
}

TEST_CASE("f_coh_sq / f_li / f_diff / f_parity_cl") {
  SECTION("frozen values at |alpha|^2 = 1, r = 0.5, g = 0.5") {
    REQUIRE_THAT(f_coh_sq(0.5, 1.0, 0.5), WithinRel(9.400821534384079, 1e-13));
    REQUIRE_THAT(f_li(0.5, 1.0, 0.5), WithinRel(9.535697167544322, 1e-13));
    REQUIRE_THAT(f_diff(0.5, 1.0, 0.5), WithinRel(-0.13487563316024312, 1e-13));
    REQUIRE_THAT(f_parity_cl(0.5, 1.0, 0.5), WithinRel(5.510334769751476, 1e-13));
  }
  SECTION("vacuum reductions") {
    REQUIRE_THAT(f_coh_sq(0.5, 1.0, 0.0), WithinRel(f_averaged(0.5, 1.0), 1e-13));
    REQUIRE_THAT(f_coh_sq(0.5, 0.0, 0.5),
                 WithinRel(f_averaged(0.5, std::pow(std::sinh(0.5), 2)), 1e-13));
    REQUIRE_THAT(f_li(0.5, 0.0, 0.0), WithinRel(f_vacuum(0.5), 1e-13));
    REQUIRE(f_coh_sq(0.3, 0.0, 0.0) == f_vacuum(0.3));
    REQUIRE(f_diff(0.7, 0.0, 0.0) == 0.0);
  }
  SECTION("f_diff equals f_coh_sq - f_li on a 20^3 grid and is never positive") {
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j)
        for (int k = 0; k < 20; ++k) {
          const double g = 0.05 + 0.07 * i;
          const double a2 = 0.05 + 0.15 * j;
          const double r = 0.02 + 0.05 * k;
          const double diff = f_diff(g, a2, r);
          REQUIRE_THAT(diff, WithinAbs(f_coh_sq(g, a2, r) - f_li(g, a2, r), 1e-10));
          REQUIRE(diff <= 0.0);
          REQUIRE(f_coh_sq(g, a2, r) >= f_parity_cl(g, a2, r));
        }
  }
  SECTION("f_diff vanishes where the formulas coincide: 4|alpha|^2 = cosh(4r) - 1") {
    const double r = 0.4;
    const double a2 = (std::cosh(4 * r) - 1.0) / 4.0;
    REQUIRE_THAT(f_diff(0.6, a2, r), WithinAbs(0.0, 1e-12));
  }
  SECTION("f_parity_cl is the first term of f_coh_sq") {
    REQUIRE(f_parity_cl(0.5, 1.0, 0.0) == f_coh_sq(0.5, 1.0, 0.0));
    REQUIRE_THAT(f_coh_sq(0.4, 0.8, 0.3) - f_parity_cl(0.4, 0.8, 0.3),
                 WithinAbs(std::pow(std::cosh(0.8), 2) * 8 * 0.8 *
                               std::pow(std::sinh(0.6), 2) /
                               (4 * 0.8 + 2 * std::pow(std::sinh(0.6), 2)),
                           1e-12));
  }
}

TEST_CASE("bound_mzi_phi_d") {
  REQUIRE_THAT(bound_mzi_phi_d(2.0, 2.0, 1.0), WithinRel(2.0 / 3.0, 1e-14));
  SECTION("diagonal QFIM simplifies to 1/F_dd") {
    REQUIRE_THAT(bound_mzi_phi_d(4.0, 7.0, 0.0), WithinRel(0.25, 1e-14));
  }
  SECTION("singular determinant flags infinity") {
    REQUIRE(std::isinf(bound_mzi_phi_d(1.0, 1.0, 1.0)));
  }
  SECTION("swap symmetry with the phi_s bound") {
    const double fdd = 1.7, fss = 5.1, fds = 1.2;
    const double det = fdd * fss - fds * fds;
    REQUIRE_THAT(bound_mzi_phi_d(fss, fdd, fds), WithinRel(fdd / det, 1e-13));
  }
}

TEST_CASE("limit chain: everything collapses to f_vacuum") {
  using cplx = std::complex<double>;
  for (double g : {0.2, 0.8}) {
    REQUIRE_THAT(f_gong(g, 0.0, PhaseShiftModel::upper), WithinRel(f_vacuum(g), 1e-13));
    REQUIRE_THAT(f_averaged(g, 0.0), WithinRel(f_vacuum(g), 1e-13));
    REQUIRE_THAT(f_coh_sq(g, 0.0, 0.0), WithinRel(f_vacuum(g), 1e-13));
    // two-coherent with both amplitudes shrinking approaches f_vacuum
    REQUIRE_THAT(f_two_coherent(g, cplx{1e-9, 0.0}, cplx{1e-9, 0.0}),
                 WithinRel(f_vacuum(g), 1e-6));
  }
}

TEST_CASE("AnalyticParams validation") {
  AnalyticParams p;
  p.g = 0.5;
  p.n_alpha = 1.0;
  p.alpha = {1.0, 0.0};
  REQUIRE_NOTHROW(p.validate());
  p.alpha = {2.0, 0.0};
  REQUIRE_THROWS_AS(p.validate(), su11::InvalidArgument);
  p.alpha = {1.0, 0.0};
  p.n_in = 3.0;
  p.n_beta = 1.0;
  p.beta = {1.0, 0.0};
  REQUIRE_THROWS_AS(p.validate(), su11::InvalidArgument);
  p.n_in = 2.0;
  REQUIRE_NOTHROW(p.validate());
  p.g = -0.1;
  REQUIRE_THROWS_AS(p.validate(), su11::InvalidArgument);
}
