#pragma once

// Shared generators and independent oracles for the test binaries. The
// oracles deliberately avoid the library's sparse machinery: they expand
// tensors densely over all n^m positions.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tensorspec/multi_index.hpp"
#include "tensorspec/tensor.hpp"

namespace fixtures {

using tensorspec::Matrix;
using tensorspec::MultiIndex;
using tensorspec::SymTensor;
using tensorspec::Vector;

inline SymTensor random_sym(int m, int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  SymTensor::Builder b(m, n);
  tensorspec::for_each_sorted_index(n, m, [&](std::span<const int> idx) {
    b.set(idx, normal(rng));
  });
  return b.build();
}

inline SymTensor random_positive_sym(int m, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  SymTensor::Builder b(m, n);
  tensorspec::for_each_sorted_index(n, m, [&](std::span<const int> idx) {
    b.set(idx, unif(rng));
  });
  return b.build();
}

inline SymTensor diagonal(int m, const std::vector<double>& c) {
  SymTensor::Builder b(m, static_cast<int>(c.size()));
  for (int i = 0; i < static_cast<int>(c.size()); ++i) b.set(MultiIndex(m, i), c[i]);
  return b.build();
}

inline Vector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = normal(rng);
  return x;
}

inline Vector random_unit(int n, std::mt19937_64& rng) {
  return random_vector(n, rng).normalized();
}

inline Vector random_simplex(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e;
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = e(rng);
  return x / x.sum();
}

inline Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  Matrix g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = random_vector(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(n, n);
}

// Dense oracle: sum over all n^m positions of a(i) x_i1 ... x_im.
inline double dense_apply_m(const SymTensor& a, const Vector& x) {
  double s = 0.0;
  tensorspec::for_each_index(a.dim(), a.order(), [&](std::span<const int> idx) {
    double p = a(idx);
    for (int i : idx) p *= x[i];
    s += p;
  });
  return s;
}

inline Vector dense_apply_m_minus_1(const SymTensor& a, const Vector& x) {
  Vector y = Vector::Zero(a.dim());
  tensorspec::for_each_index(a.dim(), a.order(), [&](std::span<const int> idx) {
    double p = a(idx);
    for (std::size_t k = 1; k < idx.size(); ++k) p *= x[idx[k]];
    y[idx[0]] += p;
  });
  return y;
}

inline double dense_frobenius(const SymTensor& a) {
  double s = 0.0;
  tensorspec::for_each_index(a.dim(), a.order(), [&](std::span<const int> idx) {
    s += a(idx) * a(idx);
  });
  return std::sqrt(s);
}

// Minimum and maximum of A x^m over `samples` uniform points on the sphere.
struct SphereRange {
  double min = 0.0;
  double max = 0.0;
  Vector argmin;
};

inline SphereRange sample_sphere(const SymTensor& a, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SphereRange r;
  r.min = INFINITY;
  r.max = -INFINITY;
  for (int s = 0; s < samples; ++s) {
    const Vector x = random_unit(a.dim(), rng);
    const double v = tensorspec::apply_m(a, x);
    if (v < r.min) {
      r.min = v;
      r.argmin = x;
    }
    r.max = std::max(r.max, v);
  }
  return r;
}

}  // namespace fixtures
