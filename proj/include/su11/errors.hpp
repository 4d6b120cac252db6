// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace su11 {

namespace detail {

/// Scientific notation for error messages (std::to_string truncates tiny values).
inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

}  // namespace detail

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live on different Fock cutoffs.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A construction does not fit in the requested cutoff at all
/// (e.g. a Fock state above max_total).
class CutoffError : public Error {
 public:
  using Error::Error;
};

/// Truncation lost more probability weight than tail_tol admits.
/// Carries a suggested larger cutoff.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int suggested_max_total)
      : Error(what), suggested_max_total_(suggested_max_total) {}

  int suggested_max_total() const noexcept { return suggested_max_total_; }

 private:
  int suggested_max_total_;
};

/// A mathematical precondition of an operation is violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested combination is outside the library's scope.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured resource limit.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A parameter value is invalid.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace su11
