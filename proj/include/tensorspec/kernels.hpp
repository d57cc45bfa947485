#pragma once

// Data-parallel inner loops of the solvers. Every kernel exists twice: a
// serial reference and an OpenMP version. Both write each output slot from
// exactly one work item, so the two produce bit-identical results for any
// thread count. The library calls the OpenMP versions.

#include <optional>
#include <span>
#include <vector>

#include "tensorspec/tensor.hpp"

namespace tensorspec::kernels {

/// A converged Newton solve of A x^{m-1} = lambda x, x^T x = 1.
struct SpherePoint {
  Vector x;
  double lambda = 0.0;
  double residual = 0.0;
};

struct NewtonOptions {
  int max_iter = 40;
  /// Absolute target on ||A x^{m-1} - lambda x||.
  double tol = 1e-14;
};

/// One alternating-maximization run of |A u1 ... um| from the given start
/// vectors.
struct RestartResult {
  double value = 0.0;
  int iterations = 0;
};

namespace serial {

/// b_I for every sorted output tuple I of P^m A; `out_indices` holds the
/// tuples back to back.
std::vector<double> transform_entries(const SymTensor& a, const Matrix& p,
                                      std::span<const int> out_indices);

/// g(theta) = x2 (A x^{m-1})_1 - x1 (A x^{m-1})_2 at x = (cos t, sin t).
std::vector<double> angle_residuals(const SymTensor& a,
                                    std::span<const double> thetas);

std::vector<std::optional<SpherePoint>> polish_sphere_seeds(
    const SymTensor& a, std::span<const Vector> seeds,
    const NewtonOptions& opts);

std::vector<RestartResult> multilinear_restarts(
    const SymTensor& a, std::span<const std::vector<Vector>> starts,
    int max_iter, double tol);

}  // namespace serial

namespace omp {

std::vector<double> transform_entries(const SymTensor& a, const Matrix& p,
                                      std::span<const int> out_indices);
std::vector<double> angle_residuals(const SymTensor& a,
                                    std::span<const double> thetas);
std::vector<std::optional<SpherePoint>> polish_sphere_seeds(
    const SymTensor& a, std::span<const Vector> seeds,
    const NewtonOptions& opts);
std::vector<RestartResult> multilinear_restarts(
    const SymTensor& a, std::span<const std::vector<Vector>> starts,
    int max_iter, double tol);

}  // namespace omp

// Per-item bodies shared by both variants.
double transform_entry(const SymTensor& a, const Matrix& p,
                       std::span<const int> out_index);
double angle_residual(const SymTensor& a, double theta);
std::optional<SpherePoint> polish_sphere_seed(const SymTensor& a,
                                              const Vector& seed,
                                              const NewtonOptions& opts);
RestartResult multilinear_restart(const SymTensor& a,
                                  std::vector<Vector> start, int max_iter,
                                  double tol);

}  // namespace tensorspec::kernels
