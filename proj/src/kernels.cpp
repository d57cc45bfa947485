#include "tensorspec/kernels.hpp"

#include <cmath>

namespace tensorspec::kernels {

double transform_entry(const SymTensor& a, const Matrix& p,
                       std::span<const int> out_index) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    double inner = 0.0;
    for_each_distinct_permutation(a.index(k), [&](std::span<const int> perm) {
      double prod = 1.0;
      for (std::size_t mode = 0; mode < perm.size(); ++mode) {
        prod *= p(out_index[mode], perm[mode]);
      }
      inner += prod;
    });
    sum += a.value(k) * inner;
  }
  return sum;
}

double angle_residual(const SymTensor& a, double theta) {
  Vector x(2);
  x << std::cos(theta), std::sin(theta);
  const Vector y = apply_m_minus_1(a, x);
  return x[1] * y[0] - x[0] * y[1];
}

std::optional<SpherePoint> polish_sphere_seed(const SymTensor& a,
                                              const Vector& seed,
                                              const NewtonOptions& opts) {
  const int n = a.dim();
  const int m = a.order();
  Vector x = seed.normalized();
  double lambda = apply_m(a, x);
  Vector f(n + 1);
  Matrix jac(n + 1, n + 1);
  for (int it = 0; it < opts.max_iter; ++it) {
    const Vector y = apply_m_minus_1(a, x);
    f.head(n) = y - lambda * x;
    f[n] = 0.5 * (x.squaredNorm() - 1.0);
    if (f.norm() <= opts.tol) break;
    jac.topLeftCorner(n, n) =
        (m - 1.0) * apply_m_minus_2(a, x) - lambda * Matrix::Identity(n, n);
    jac.topRightCorner(n, 1) = -x;
    jac.bottomLeftCorner(1, n) = x.transpose();
    jac(n, n) = 0.0;
    Eigen::FullPivLU<Matrix> lu(jac);
    if (!lu.isInvertible()) break;
    const Vector step = lu.solve(-f);
    if (!step.allFinite()) return std::nullopt;
    x += step.head(n);
    lambda += step[n];
    if (step.norm() <= 1e-16 * (1.0 + x.norm())) break;
  }
  const double norm = x.norm();
  if (!std::isfinite(norm) || norm == 0.0) return std::nullopt;
  x /= norm;
  SpherePoint out;
  out.lambda = apply_m(a, x);
  out.residual = (apply_m_minus_1(a, x) - out.lambda * x).norm();
  out.x = std::move(x);
  if (!std::isfinite(out.lambda) || !std::isfinite(out.residual)) return std::nullopt;
  return out;
}

RestartResult multilinear_restart(const SymTensor& a, std::vector<Vector> u,
                                  int max_iter, double tol) {
  const int m = a.order();
  RestartResult r;
  double prev = -1.0;
  for (int it = 0; it < max_iter; ++it) {
    double value = 0.0;
    for (int mode = 0; mode < m; ++mode) {
      const Vector v = contract_except(a, u, mode);
      value = v.norm();
      if (value == 0.0) {
        r.iterations = it + 1;
        return r;
      }
      u[mode] = v / value;
    }
    r.value = value;
    r.iterations = it + 1;
    if (std::abs(value - prev) <= tol * std::max(1.0, value)) break;
    prev = value;
  }
  return r;
}

namespace serial {

std::vector<double> transform_entries(const SymTensor& a, const Matrix& p,
                                      std::span<const int> out_indices) {
  const std::size_t m = static_cast<std::size_t>(a.order());
  std::vector<double> out(out_indices.size() / m);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = transform_entry(a, p, out_indices.subspan(i * m, m));
  }
  return out;
}

std::vector<double> angle_residuals(const SymTensor& a,
                                    std::span<const double> thetas) {
  std::vector<double> out(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) out[i] = angle_residual(a, thetas[i]);
  return out;
}

std::vector<std::optional<SpherePoint>> polish_sphere_seeds(
    const SymTensor& a, std::span<const Vector> seeds,
    const NewtonOptions& opts) {
  std::vector<std::optional<SpherePoint>> out(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    out[i] = polish_sphere_seed(a, seeds[i], opts);
  }
  return out;
}

std::vector<RestartResult> multilinear_restarts(
    const SymTensor& a, std::span<const std::vector<Vector>> starts,
    int max_iter, double tol) {
  std::vector<RestartResult> out(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    out[i] = multilinear_restart(a, starts[i], max_iter, tol);
  }
  return out;
}

}  // namespace serial

namespace omp {

std::vector<double> transform_entries(const SymTensor& a, const Matrix& p,
                                      std::span<const int> out_indices) {
  const std::size_t m = static_cast<std::size_t>(a.order());
  const long count = static_cast<long>(out_indices.size() / m);
  std::vector<double> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < count; ++i) {
    out[i] = transform_entry(a, p, out_indices.subspan(i * m, m));
  }
  return out;
}

std::vector<double> angle_residuals(const SymTensor& a,
                                    std::span<const double> thetas) {
  const long count = static_cast<long>(thetas.size());
  std::vector<double> out(thetas.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) out[i] = angle_residual(a, thetas[i]);
  return out;
}

std::vector<std::optional<SpherePoint>> polish_sphere_seeds(
    const SymTensor& a, std::span<const Vector> seeds,
    const NewtonOptions& opts) {
  const long count = static_cast<long>(seeds.size());
  std::vector<std::optional<SpherePoint>> out(seeds.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long i = 0; i < count; ++i) out[i] = polish_sphere_seed(a, seeds[i], opts);
  return out;
}

std::vector<RestartResult> multilinear_restarts(
    const SymTensor& a, std::span<const std::vector<Vector>> starts,
    int max_iter, double tol) {
  const long count = static_cast<long>(starts.size());
  std::vector<RestartResult> out(starts.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    out[i] = multilinear_restart(a, starts[i], max_iter, tol);
  }
  return out;
}

}  // namespace omp

}  // namespace tensorspec::kernels
