#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tensorspec/direct_solve.hpp"
#include "tensorspec/tensor.hpp"

namespace tensorspec {

struct IterOptions {
  double tol = 1e-10;
  int max_iter = 10000;
  std::uint64_t seed = 0;
  /// Shift for the symmetric power method; unset picks (m-1) ||A||_F.
  std::optional<double> shift;
  /// Total runs of z_power, the first from `start` (or the uniform vector).
  int restarts = 8;
  std::optional<Vector> start;
};

struct NQZIterate {
  /// Bracket after this step; running extrema of the Collatz ratios.
  double lower = 0.0;
  double upper = 0.0;
  /// Raw Collatz ratios of this step.
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  Vector x;
};

struct NQZTrace {
  std::vector<NQZIterate> iterates;
  bool converged = false;
  /// Midpoint of the last bracket.
  double rho = 0.0;
  /// A zero component of A x^{m-1} was lifted by 1e-12, so the bracket is an
  /// estimate rather than a certificate.
  bool bound_estimate = false;
  /// "converged", "stagnated" or "max-iter".
  std::string stop_reason;

  double lower() const { return iterates.empty() ? 0.0 : iterates.back().lower; }
  double upper() const { return iterates.empty() ? 0.0 : iterates.back().upper; }
};

/// (min_i, max_i) of (A x^{m-1})_i / x_i^{m-1} for positive x.
std::pair<double, double> collatz_ratios(const SymTensor& a, const Vector& x);
std::pair<double, double> collatz_ratios(const GenTensor& a, const Vector& x);

/// Spectral radius of a nonnegative tensor by the Collatz-bracketed power
/// iteration. Converged means upper - lower <= tol * max(1, upper).
NQZTrace nqz(const SymTensor& a, const IterOptions& opts = {});
NQZTrace nqz(const GenTensor& a, const IterOptions& opts = {});

struct ZPowerResult {
  EigenPair pair;
  bool converged = false;
  /// Iterations of the winning restart.
  int iterations = 0;
  double shift = 0.0;
};

/// Shifted symmetric power method for one Z-eigenpair (no extremality
/// guarantee). Runs `opts.restarts` starts and keeps the converged pair with
/// the largest |lambda|, or the smallest residual if none converged.
ZPowerResult z_power(const SymTensor& a, const IterOptions& opts = {});

}  // namespace tensorspec
