// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: runs the full verification grid and prints one pass/fail
// line per criterion. Exits nonzero if any criterion fails.

#include <cstdio>

#include <su11/verify.hpp>

int main() {
  int failures = 0;
  const auto print = [&](const su11::verify::CheckResult& r) {
    std::printf("%-4s %-32s max_dev=%10.3e  tol=%8.1e  (%s)\n",
                r.passed ? "PASS" : "FAIL", r.name.c_str(), r.max_deviation, r.tolerance,
                r.note.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failures;
  };
  su11::verify::run_checks({}, print);
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
