#include "tensorspec/power_iter.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "tensorspec/errors.hpp"

namespace tensorspec {

namespace {

constexpr double kZeroLift = 1e-12;
constexpr int kStagnationWindow = 50;
constexpr double kStagnationDelta = 1e-14;

template <typename Tensor>
void check_nonnegative(const Tensor& a) {
  if (!is_nonnegative(a)) {
    throw ValidationError({"spectral radius iteration needs a nonnegative tensor"});
  }
}

template <typename Tensor>
std::pair<double, double> ratios(const Tensor& a, const Vector& x, const Vector& y) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < x.size(); ++i) {
    const double r = y[i] / std::pow(x[i], a.order() - 1);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

template <typename Tensor>
std::pair<double, double> collatz_impl(const Tensor& a, const Vector& x) {
  if (x.size() != a.dim()) throw DimensionError("Collatz vector length mismatch");
  for (int i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) {
      throw ValidationError({"Collatz ratios need a positive vector; component " +
                             std::to_string(i) + " is " + std::to_string(x[i])});
    }
  }
  return ratios(a, x, apply_m_minus_1(a, x));
}

template <typename Tensor>
NQZTrace nqz_impl(const Tensor& a, const IterOptions& opts) {
  check_nonnegative(a);
  if (a.order() < 2) throw DimensionError("spectral radius needs order >= 2");
  const int n = a.dim();
  const double root = 1.0 / (a.order() - 1);
  Vector x = opts.start ? *opts.start : Vector::Ones(n);
  if (x.size() != n || (x.array() <= 0.0).any()) {
    throw ValidationError({"start vector must be entrywise positive"});
  }
  x.normalize();

  NQZTrace trace;
  trace.stop_reason = "max-iter";
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  for (int k = 0; k < opts.max_iter; ++k) {
    Vector y = apply_m_minus_1(a, x);
    if ((y.array() <= 0.0).any()) {
      y.array() += kZeroLift;
      trace.bound_estimate = true;
    }
    const auto [lo, hi] = ratios(a, x, y);
    lower = std::max(lower, lo);
    upper = std::min(upper, hi);
    trace.iterates.push_back({lower, upper, lo, hi, x});

    const double width = upper - lower;
    if (width <= opts.tol * std::max(1.0, std::abs(upper))) {
      trace.converged = true;
      trace.stop_reason = "converged";
      break;
    }
    if (k >= kStagnationWindow) {
      const auto& old = trace.iterates[k - kStagnationWindow];
      if (std::abs((old.upper - old.lower) - width) < kStagnationDelta) {
        trace.stop_reason = "stagnated";
        break;
      }
    }
    Vector next = y.array().pow(root).matrix();
    x = next / next.norm();
  }
  trace.rho = 0.5 * (trace.lower() + trace.upper());
  return trace;
}

}  // namespace

std::pair<double, double> collatz_ratios(const SymTensor& a, const Vector& x) {
  return collatz_impl(a, x);
}

std::pair<double, double> collatz_ratios(const GenTensor& a, const Vector& x) {
  return collatz_impl(a, x);
}

NQZTrace nqz(const SymTensor& a, const IterOptions& opts) { return nqz_impl(a, opts); }
NQZTrace nqz(const GenTensor& a, const IterOptions& opts) { return nqz_impl(a, opts); }

ZPowerResult z_power(const SymTensor& a, const IterOptions& opts) {
  const int n = a.dim();
  const int m = a.order();
  if (m < 2) throw DimensionError("eigenvalues need order >= 2");
  const double scale = std::max(1.0, frobenius_norm(a));
  const double accept = opts.tol * scale;
  // (m-1) ||A||_F bounds (m-1) max rho(A x^{m-2}) on the unit sphere, which
  // makes the shifted form convex and the iteration monotone.
  const double shift = opts.shift ? *opts.shift : (m - 1) * frobenius_norm(a);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;

  ZPowerResult best;
  best.shift = shift;
  bool have = false;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    Vector x;
    if (r == 0) {
      x = opts.start ? *opts.start : Vector::Ones(n);
      if (x.size() != n) throw DimensionError("start vector length mismatch");
    } else {
      x.resize(n);
      for (int i = 0; i < n; ++i) x[i] = normal(rng);
    }
    if (x.norm() == 0.0) x = Vector::Ones(n);
    x.normalize();

    double lambda = apply_m(a, x);
    double residual = z_residual(a, lambda, x);
    int it = 0;
    while (residual > accept && it < opts.max_iter) {
      Vector y = apply_m_minus_1(a, x) + shift * x;
      const double norm = y.norm();
      if (norm == 0.0 || !std::isfinite(norm)) break;
      x = y / norm;
      lambda = apply_m(a, x);
      residual = z_residual(a, lambda, x);
      ++it;
    }
    const bool converged = residual <= accept;
    const bool better = [&] {
      if (!have) return true;
      if (converged != best.converged) return converged;
      if (converged) return std::abs(lambda) > std::abs(best.pair.lambda.real());
      return residual < best.pair.residual;
    }();
    if (better) {
      have = true;
      best.converged = converged;
      best.iterations = it;
      best.pair.lambda = lambda;
      best.pair.kind = EigenKind::Z;
      best.pair.residual = residual;
      best.pair.vector = canonical_sign(x);
      // Sign flip of x flips lambda for odd orders.
      best.pair.lambda = apply_m(a, *best.pair.vector);
    }
  }
  return best;
}

}  // namespace tensorspec
