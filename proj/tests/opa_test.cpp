// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <su11/opa.hpp>
#include <su11/states.hpp>

#include "oracles.hpp"

using namespace su11;
using Catch::Matchers::WithinAbs;

namespace {

TwoModePureState random_state(const FockCutoff& cutoff, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist;
  TriangularGrid grid{cutoff.max_total};
  std::vector<cplx> amps(grid.size());
  for (auto& a : amps) a = cplx(dist(rng), dist(rng));
  return TwoModePureState::from_raw(cutoff, std::move(amps));
}

double max_amp_diff(const TwoModePureState& a, const TwoModePureState& b) {
  double worst = 0.0;
  const auto aa = a.amplitudes();
  const auto ab = b.amplitudes();
  for (std::size_t i = 0; i < aa.size(); ++i)
    worst = std::max(worst, std::abs(aa[i] - ab[i]));
  return worst;
}

}  // namespace

TEST_CASE("apply_opa: g = 0 is the identity") {
  const auto st = random_state(FockCutoff{10, 4, 0.999999}, 5);
  const auto out = apply_opa(st, {0.0, 1.3});
  REQUIRE(max_amp_diff(st, out) < 1e-14);
}

TEST_CASE("apply_opa: two-mode squeezed vacuum closed form") {
  FockCutoff cutoff{120};
  const auto st = apply_opa(TwoModePureState::basis_state(cutoff, 0, 0), {1.0, 0.0});
  for (int k = 0; k <= 20; ++k) {
    const cplx want = std::pow(std::tanh(1.0), k) / std::cosh(1.0);
    REQUIRE_THAT(std::abs(st.amplitude(k, k) - want), WithinAbs(0.0, 1e-12));
  }
  // everything off the main diagonal is exactly zero
  st.grid().for_each([&](int na, int nb, std::size_t idx) {
    if (na != nb) REQUIRE(st.amplitudes()[idx] == cplx{0.0, 0.0});
  });
}

TEST_CASE("apply_opa: |n,0> branch structure with pump phase") {
  FockCutoff cutoff{140};
  for (int n : {0, 1, 2, 3, 4, 5}) {
    for (double g : {0.3, 1.0}) {
      const double theta = 0.7;
      const auto st = apply_opa(TwoModePureState::basis_state(cutoff, n, 0), {g, theta});
      for (int k = 0; k <= 12; ++k)
        REQUIRE_THAT(std::abs(st.amplitude(n + k, k) - oracle::opa_branch_amp(n, k, g, theta)),
                     WithinAbs(0.0, 1e-11));
    }
  }
}

TEST_CASE("apply_opa matches the dense Pade exponential on a random state") {
  // guard = 0 makes the block path exponentiate exactly the same truncated
  // generator as the dense oracle
  FockCutoff cutoff{14, 0, 0.9999};
  const auto st = random_state(cutoff, 77);
  const double g = 0.73, theta = 1.1;
  const auto out = apply_opa(st, {g, theta});

  const Eigen::MatrixXcd u = oracle::dense_opa(14, g, theta);
  Eigen::VectorXcd in(static_cast<Eigen::Index>(oracle::tri_size(14)));
  st.grid().for_each([&](int na, int nb, std::size_t idx) {
    in[static_cast<Eigen::Index>(oracle::tri_index(na, nb))] = st.amplitudes()[idx];
  });
  const Eigen::VectorXcd ref = u * in;
  double worst = 0.0;
  out.grid().for_each([&](int na, int nb, std::size_t idx) {
    worst = std::max(worst, std::abs(out.amplitudes()[idx] -
                                     ref[static_cast<Eigen::Index>(oracle::tri_index(na, nb))]));
  });
  REQUIRE(worst < 1e-12);
}

TEST_CASE("apply_opa: diagonal conservation is exact") {
  FockCutoff cutoff{70};
  const auto st = apply_opa(TwoModePureState::basis_state(cutoff, 2, 0), {0.8, 0.4});
  st.grid().for_each([&](int na, int nb, std::size_t idx) {
    if (na - nb != 2) REQUIRE(st.amplitudes()[idx] == cplx{0.0, 0.0});
  });
}

TEST_CASE("apply_opa: unitarity on the retained space") {
  // with a policy-sized cutoff the deficit tracks only the true ~1e-12 tail
  FockCutoff cutoff{60, 12, 1e-10};
  const auto st = apply_opa(TwoModePureState::basis_state(cutoff, 0, 0), {0.8, 0.0});
  REQUIRE(st.norm_deficit() < 1e-10);
  REQUIRE_THAT(st.retained_norm(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("apply_opa: one-parameter subgroup composition") {
  FockCutoff cutoff{60};
  const auto in = std::get<TwoModePureState>(
      product_state(ModeSpec::coherent(0.8), ModeSpec::vacuum(), cutoff));
  const double theta = 0.3;
  const auto split = apply_opa(apply_opa(in, {0.4, theta}), {0.3, theta});
  const auto direct = apply_opa(in, {0.7, theta});
  REQUIRE(max_amp_diff(split, direct) < 1e-9);
}

TEST_CASE("apply_opa: pump phase is conjugation by a single-mode rotation") {
  FockCutoff cutoff{80};
  const auto in = std::get<TwoModePureState>(
      product_state(ModeSpec::coherent(0.7), ModeSpec::fock(1), cutoff));
  const double g = 0.6, theta = 1.234;
  const auto direct = apply_opa(in, {g, theta});
  const auto conj = apply_phase(
      apply_opa(apply_phase(in, PhaseModel::upper(-theta)), {g, 0.0}),
      PhaseModel::upper(theta));
  REQUIRE(max_amp_diff(direct, conj) < 1e-12);
}

TEST_CASE("apply_opa: convergence error names a larger cutoff") {
  FockCutoff tiny{8, 4, 1e-10};
  const auto vac = TwoModePureState::basis_state(tiny, 0, 0);
  try {
    apply_opa(vac, {1.5, 0.0});
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    REQUIRE(e.suggested_max_total() == 16);
  }
}

TEST_CASE("apply_phase") {
  FockCutoff cutoff{20};
  const auto st = random_state({20, 0, 0.999999}, 11);

  SECTION("phi = 0 is the identity") {
    REQUIRE(max_amp_diff(st, apply_phase(st, PhaseModel::split(0.0))) < 1e-15);
  }
  SECTION("upper then lower equals two_phase(2 phi, 0)") {
    const double phi = 0.37;
    const auto a = apply_phase(apply_phase(st, PhaseModel::upper(phi)), PhaseModel::lower(phi));
    const auto b = apply_phase(st, PhaseModel::two_phase(2.0 * phi, 0.0));
    REQUIRE(max_amp_diff(a, b) < 1e-14);
  }
  SECTION("two_phase acts as e^{i[phi_s (na+nb)/2 + phi_d (na-nb)/2]}") {
    const auto basis = TwoModePureState::basis_state(cutoff, 3, 1);
    const double phi_s = 0.4, phi_d = 0.9;
    const auto out = apply_phase(basis, PhaseModel::two_phase(phi_s, phi_d));
    const cplx want = std::exp(cplx(0.0, phi_s * 2.0 + phi_d * 1.0));
    REQUIRE_THAT(std::abs(out.amplitude(3, 1) - want), WithinAbs(0.0, 1e-14));
  }
  SECTION("norm is preserved") {
    const auto out = apply_phase(st, PhaseModel::two_phase(1.1, -0.3));
    REQUIRE_THAT(out.retained_norm(), WithinAbs(1.0, 1e-13));
    REQUIRE_THAT(out.norm_deficit(), WithinAbs(st.norm_deficit(), 1e-14));
  }
}

TEST_CASE("second_opa inverts the first") {
  FockCutoff cutoff{110};
  SECTION("round trip on vacuum") {
    const auto vac = TwoModePureState::basis_state(cutoff, 0, 0);
    const auto rt = second_opa(apply_opa(vac, {0.6, 0.4}), {0.6, 0.4});
    REQUIRE(max_amp_diff(vac, rt) < 1e-10);
  }
  SECTION("round trip with a zero split phase in between") {
    const auto in = std::get<TwoModePureState>(
        product_state(ModeSpec::coherent(0.6), ModeSpec::vacuum(), cutoff));
    const auto rt =
        second_opa(apply_phase(apply_opa(in, {0.7, 0.0}), PhaseModel::split(0.0)), {0.7, 0.0});
    REQUIRE(max_amp_diff(in, rt) < 1e-10);
  }
  SECTION("nonzero split phase lights up mode B: <n_b> = sinh^2(2g) sin^2(phi/2)") {
    FockCutoff big{80};
    const auto vac = TwoModePureState::basis_state(big, 0, 0);
    const double g = 0.3;
    for (double phi : {0.4, 1.0, 2.2}) {
      const auto out =
          second_opa(apply_phase(apply_opa(vac, {g, 0.0}), PhaseModel::split(phi)), {g, 0.0});
      const double want = std::pow(std::sinh(2.0 * g) * std::sin(phi / 2.0), 2);
      REQUIRE_THAT(expectation(out, DiagonalGenerator::lower()), WithinAbs(want, 1e-8));
    }
  }
}

TEST_CASE("apply_opa_ensemble") {
  FockCutoff cutoff{110};
  const auto input = std::get<TwoModePureState>(
      product_state(ModeSpec::coherent(1.0), ModeSpec::vacuum(), cutoff));
  const auto ens = phase_average(input);
  const auto out = apply_opa_ensemble(ens, {0.5, 0.0});

  SECTION("weights and labels are untouched") {
    REQUIRE(out.size() == ens.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      REQUIRE(out.branches()[i].weight == ens.branches()[i].weight);
      REQUIRE(out.branches()[i].label_n == ens.branches()[i].label_n);
    }
  }
  SECTION("branches stay pairwise orthogonal") {
    REQUIRE(out.max_pairwise_overlap() < 1e-10);
  }
  SECTION("branch n carries <g_u> = n cosh^2(g) + sinh^2(g)") {
    const double c2 = std::pow(std::cosh(0.5), 2);
    const double s2 = std::pow(std::sinh(0.5), 2);
    for (const auto& b : out.branches()) {
      if (b.weight < 1e-12) continue;
      REQUIRE_THAT(expectation(b.state, DiagonalGenerator::upper()),
                   WithinAbs(b.label_n * c2 + s2, 1e-9));
    }
  }
}
