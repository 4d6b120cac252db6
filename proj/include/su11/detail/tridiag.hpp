// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file tridiag.hpp
 * @brief Spectral exponentiation of the zero-diagonal symmetric tridiagonal
 *        blocks underlying the two-mode squeezer and the single-mode squeeze.
 *
 * Every anti-Hermitian generator in this library has, per coupling block, the
 * form M = i D (scale * H0) D^dagger with H0 a real symmetric tridiagonal
 * matrix (zero diagonal) and D = diag(step_phase^k) a unimodular diagonal.
 * exp(M) then acts as D V exp(i scale lambda) V^T D^dagger, with (V, lambda)
 * the eigensystem of H0 — which depends on the coupling pattern only, not on
 * the strength or the pump phase, and is therefore cached and shared.
 */

#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

namespace su11::detail {

struct TridiagEig {
  Eigen::MatrixXd vecs;  // columns are eigenvectors of H0
  Eigen::VectorXd vals;  // eigenvalues of H0
};

/// Eigensystem of the K x K real symmetric tridiagonal matrix with zero
/// diagonal and the given subdiagonal (size K-1).
inline TridiagEig eig_tridiag(const std::vector<double>& offdiag) {
  const Eigen::Index k = static_cast<Eigen::Index>(offdiag.size()) + 1;
  TridiagEig out;
  if (k == 1) {
    out.vecs = Eigen::MatrixXd::Ones(1, 1);
    out.vals = Eigen::VectorXd::Zero(1);
    return out;
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(offdiag.data(), k - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  out.vecs = solver.eigenvectors();
  out.vals = solver.eigenvalues();
  return out;
}

/// Applies exp(i scale H) with H = D (scale-free H0) D^dagger,
/// D = diag(step_phase^k), to the block vector v.
inline Eigen::VectorXcd evolve_block(const TridiagEig& eig, double scale,
                                     std::complex<double> step_phase,
                                     Eigen::VectorXcd v) {
  const Eigen::Index k = v.size();
  std::complex<double> ph{1.0, 0.0};
  for (Eigen::Index i = 0; i < k; ++i) {
    v[i] *= std::conj(ph);
    ph *= step_phase;
  }
  Eigen::VectorXcd w = eig.vecs.transpose() * v;
  for (Eigen::Index i = 0; i < k; ++i)
    w[i] *= std::exp(std::complex<double>(0.0, scale * eig.vals[i]));
  Eigen::VectorXcd out = eig.vecs * w;
  ph = {1.0, 0.0};
  for (Eigen::Index i = 0; i < k; ++i) {
    out[i] *= ph;
    ph *= step_phase;
  }
  return out;
}

/// Coupling families with cached eigensystems.
enum class BlockFamily { opa, squeeze };

/// Shared immutable cache of block eigensystems, keyed by
/// (family, |n_a - n_b|, block size). Thread-safe.
inline std::shared_ptr<const TridiagEig> cached_block(BlockFamily family, int d_abs, int size) {
  using Key = std::tuple<int, int, int>;
  static std::map<Key, std::shared_ptr<const TridiagEig>> cache;
  static std::shared_mutex mutex;

  const Key key{static_cast<int>(family), d_abs, size};
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::vector<double> offdiag;
  offdiag.reserve(static_cast<std::size_t>(size > 0 ? size - 1 : 0));
  for (int j = 0; j + 1 < size; ++j) {
    double c = 0.0;
    if (family == BlockFamily::opa) {
      // <k+1| a^dag b^dag |k> on the |d| diagonal
      c = std::sqrt(static_cast<double>(j + 1 + d_abs) * (j + 1));
    } else {
      // <2j+2| a^dag^2 / 2 |2j> on the even single-mode ladder
      c = 0.5 * std::sqrt(static_cast<double>(2 * j + 1) * (2 * j + 2));
    }
    offdiag.push_back(-c);
  }
  auto eig = std::make_shared<const TridiagEig>(eig_tridiag(offdiag));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(eig));
  (void)inserted;
  return it->second;
}

}  // namespace su11::detail
