#include "tensorspec/direct_solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tensorspec/errors.hpp"
#include "tensorspec/kernels.hpp"

namespace tensorspec {

namespace {

constexpr double kClusterTol = 1e-7;
constexpr int kAngleSamples = 4096;
constexpr int kAzimuthSamples = 256;
// Half of the 128 polar rings; the other hemisphere holds the antipodes.
constexpr int kPolarSamples = 64;
constexpr double kMergeDistance = 1e-6;
constexpr double kDegenerateRatio = 1e-10;

double scale_of(const SymTensor& a) { return std::max(1.0, frobenius_norm(a)); }

void require_dim(const SymTensor& a, int n, const char* what) {
  if (a.dim() != n) {
    throw DimensionError(std::string(what) + " needs n = " + std::to_string(n) +
                         ", got n = " + std::to_string(a.dim()));
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Coefficients of (A x^{m-1})_i as a binary form, f_k multiplying
// x1^{d-k} x2^k.
std::vector<double> component_form(const SymTensor& a, int i) {
  const int d = a.order() - 1;
  std::vector<double> f(d + 1);
  MultiIndex idx(a.order());
  for (int k = 0; k <= d; ++k) {
    idx[0] = i;
    for (int p = 0; p < d; ++p) idx[p + 1] = p < d - k ? 0 : 1;
    f[k] = binomial(d, k) * a(idx);
  }
  return f;
}

bool vector_less_desc(const Vector& a, const Vector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

// Best real eigenvector for a real lambda of an n = 2 tensor, searched among
// real roots of either eigen-equation on the chart x = (1, t) and the point
// x = (0, 1).
std::optional<std::pair<Vector, double>> real_h_vector(const SymTensor& a,
                                                       double lambda) {
  const int d = a.order() - 1;
  std::vector<double> p1 = component_form(a, 0);
  std::vector<double> p2 = component_form(a, 1);
  p1[0] -= lambda;
  p2[d] -= lambda;
  std::vector<Vector> candidates;
  Vector axis(2);
  axis << 0.0, 1.0;
  candidates.push_back(axis);
  axis << 1.0, 0.0;
  candidates.push_back(axis);
  for (const auto& coeffs : {p1, p2}) {
    const Polynomial poly(coeffs);
    if (poly.degree() < 1) continue;
    for (const auto& t : poly.roots()) {
      if (std::abs(t.imag()) > 1e-6 * (1.0 + std::abs(t.real()))) continue;
      Vector x(2);
      x << 1.0, t.real();
      candidates.push_back(x.normalized());
    }
  }
  std::optional<std::pair<Vector, double>> best;
  for (const auto& x : candidates) {
    const double r = h_residual(a, lambda, x);
    if (!best || r < best->second) best.emplace(x, r);
  }
  return best;
}

void dedupe_sorted_axis_pairs(std::vector<EigenPair>& pairs) {
  std::vector<EigenPair> unique;
  for (auto& p : pairs) {
    const bool dup = std::ranges::any_of(unique, [&](const EigenPair& q) {
      return (*q.vector - *p.vector).norm() <= kMergeDistance;
    });
    if (!dup) unique.push_back(std::move(p));
  }
  pairs = std::move(unique);
}

EigenPair make_z_pair(const SymTensor& a, Vector x) {
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) < 1e-15) x[i] = 0.0;
  }
  x = canonical_sign(std::move(x));
  EigenPair p;
  const double lambda = apply_m(a, x);
  p.lambda = lambda;
  p.kind = EigenKind::Z;
  p.residual = z_residual(a, lambda, x);
  p.vector = std::move(x);
  return p;
}

ZSpectrum axis_representatives(const SymTensor& a) {
  ZSpectrum out;
  out.degenerate = true;
  for (int i = 0; i < a.dim(); ++i) {
    out.pairs.push_back(make_z_pair(a, Vector::Unit(a.dim(), i)));
  }
  sort_pairs(out.pairs);
  return out;
}

double bisect_angle(const SymTensor& a, double lo, double hi, double glo) {
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = kernels::angle_residual(a, mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Minimizes |g| on [lo, hi] by golden-section search.
double min_abs_angle(const SymTensor& a, double lo, double hi) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - phi * (hi - lo);
  double d = lo + phi * (hi - lo);
  double fc = std::abs(kernels::angle_residual(a, c));
  double fd = std::abs(kernels::angle_residual(a, d));
  for (int it = 0; it < 120 && hi - lo > 1e-15; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = std::abs(kernels::angle_residual(a, c));
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = std::abs(kernels::angle_residual(a, d));
    }
  }
  return 0.5 * (lo + hi);
}

ZSpectrum z_spectrum_circle(const SymTensor& a, double tol) {
  const double fro = frobenius_norm(a);
  const double accept = tol * scale_of(a);
  const double step = std::numbers::pi / kAngleSamples;
  std::vector<double> thetas(kAngleSamples + 1);
  for (int k = 0; k <= kAngleSamples; ++k) thetas[k] = k * step;
  const auto g = kernels::omp::angle_residuals(a, thetas);

  double gmax = 0.0;
  for (double v : g) gmax = std::max(gmax, std::abs(v));
  if (gmax < kDegenerateRatio * fro || fro == 0.0) return axis_representatives(a);

  // g(theta - pi) = (-1)^m g(theta).
  const double wrap = a.order() % 2 == 0 ? 1.0 : -1.0;
  auto g_at = [&](int k) {
    if (k < 0) return wrap * g[kAngleSamples + k];
    return g[k];
  };

  std::vector<double> roots;
  for (int k = 0; k < kAngleSamples; ++k) {
    const double gk = g_at(k);
    const double gn = g_at(k + 1);
    if (gk == 0.0) {
      roots.push_back(thetas[k]);
    } else if (gn != 0.0 && (gk < 0.0) != (gn < 0.0)) {
      roots.push_back(bisect_angle(a, thetas[k], thetas[k + 1], gk));
    } else {
      // A touching zero shows up as a local minimum of |g| without a sign
      // change.
      const double gp = g_at(k - 1);
      if (std::abs(gk) <= std::abs(gp) && std::abs(gk) <= std::abs(gn) &&
          (gp < 0.0) == (gk < 0.0) && (gn < 0.0) == (gk < 0.0) &&
          std::abs(gk) < 1e-3 * gmax) {
        roots.push_back(min_abs_angle(a, thetas[k] - step, thetas[k] + step));
      }
    }
  }

  ZSpectrum out;
  for (double theta : roots) {
    Vector x(2);
    x << std::cos(theta), std::sin(theta);
    auto pair = make_z_pair(a, std::move(x));
    if (pair.residual <= accept) out.pairs.push_back(std::move(pair));
  }
  sort_pairs(out.pairs);
  dedupe_sorted_axis_pairs(out.pairs);
  return out;
}

ZSpectrum z_spectrum_sphere(const SymTensor& a, double tol) {
  const double fro = frobenius_norm(a);
  const double accept = tol * scale_of(a);
  std::vector<Vector> seeds;
  seeds.reserve(kAzimuthSamples * kPolarSamples);
  double tangential_max = 0.0;
  for (int j = 0; j < kPolarSamples; ++j) {
    const double theta = (j + 0.5) * (0.5 * std::numbers::pi) / kPolarSamples;
    for (int i = 0; i < kAzimuthSamples; ++i) {
      const double phi = i * 2.0 * std::numbers::pi / kAzimuthSamples;
      Vector x(3);
      x << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta);
      const Vector y = apply_m_minus_1(a, x);
      tangential_max = std::max(tangential_max, (y - x.dot(y) * x).norm());
      seeds.push_back(std::move(x));
    }
  }
  if (tangential_max < kDegenerateRatio * fro || fro == 0.0) {
    return axis_representatives(a);
  }

  kernels::NewtonOptions newton;
  newton.tol = 1e-15 * scale_of(a);
  const auto polished = kernels::omp::polish_sphere_seeds(a, seeds, newton);

  ZSpectrum out;
  for (const auto& p : polished) {
    if (!p || p->residual > accept) continue;
    auto pair = make_z_pair(a, p->x);
    if (pair.residual > accept) continue;
    const bool dup = std::ranges::any_of(out.pairs, [&](const EigenPair& q) {
      return (*q.vector - *pair.vector).norm() <= kMergeDistance;
    });
    if (!dup) out.pairs.push_back(std::move(pair));
  }
  sort_pairs(out.pairs);
  return out;
}

}  // namespace

std::string_view to_string(EigenKind kind) {
  switch (kind) {
    case EigenKind::H: return "H";
    case EigenKind::N: return "N";
    case EigenKind::Z: return "Z";
    case EigenKind::Unclassified: return "unclassified";
  }
  return "unclassified";
}

std::string_view to_string(PDClass c) {
  switch (c) {
    case PDClass::PositiveDefinite: return "positive-definite";
    case PDClass::PositiveSemidefinite: return "positive-semidefinite";
    case PDClass::Indefinite: return "indefinite";
    case PDClass::CertifiedPD: return "certified-PD";
    case PDClass::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::string_view to_string(PDMethod m) {
  return m == PDMethod::ExactSpectrum ? "exact-spectrum" : "gershgorin";
}

Vector canonical_sign(Vector x) {
  // Components at solver noise level do not decide the sign.
  const double floor = 1e-8 * x.lpNorm<Eigen::Infinity>();
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > floor) {
      if (x[i] < 0.0) x = -x;
      break;
    }
  }
  return x;
}

double h_residual(const SymTensor& a, double lambda, const Vector& x) {
  const Vector y = apply_m_minus_1(a, x);
  Vector xp(x.size());
  for (int i = 0; i < x.size(); ++i) xp[i] = std::pow(x[i], a.order() - 1);
  return (y - lambda * xp).norm();
}

double z_residual(const SymTensor& a, double lambda, const Vector& x) {
  return (apply_m_minus_1(a, x) - lambda * x).norm();
}

void sort_pairs(std::vector<EigenPair>& pairs) {
  std::ranges::stable_sort(pairs, [](const EigenPair& p, const EigenPair& q) {
    if (p.lambda.real() != q.lambda.real()) return p.lambda.real() > q.lambda.real();
    if (p.lambda.imag() != q.lambda.imag()) return p.lambda.imag() > q.lambda.imag();
    if (p.vector && q.vector) return vector_less_desc(*p.vector, *q.vector);
    return p.vector.has_value() && !q.vector.has_value();
  });
}

Matrix sylvester_matrix_2d(const SymTensor& a) {
  require_dim(a, 2, "sylvester_matrix_2d");
  if (a.order() < 2) throw DimensionError("eigenvalues need order >= 2");
  const int d = a.order() - 1;
  const auto f = component_form(a, 0);
  const auto g = component_form(a, 1);
  Matrix s = Matrix::Zero(2 * d, 2 * d);
  for (int r = 0; r < d; ++r) {
    for (int k = 0; k <= d; ++k) {
      s(r, r + k) = f[k];
      s(d + r, r + k) = g[k];
    }
  }
  return s;
}

Polynomial char_poly_2d(const SymTensor& a) {
  const Matrix s = sylvester_matrix_2d(a);
  std::vector<std::vector<double>> rows(s.rows(), std::vector<double>(s.cols()));
  for (int i = 0; i < s.rows(); ++i) {
    for (int j = 0; j < s.cols(); ++j) rows[i][j] = s(i, j);
  }
  return characteristic_polynomial(rows);
}

double sym_hyperdet_2d(const SymTensor& a) {
  return sylvester_matrix_2d(a).fullPivLu().determinant();
}

std::vector<EigenPair> h_spectrum_2d(const SymTensor& a, double tol) {
  const Matrix s = sylvester_matrix_2d(a);
  Eigen::EigenSolver<Matrix> solver(s, false);
  if (solver.info() != Eigen::Success) {
    throw SolverError("eigenvalue iteration on the Sylvester matrix failed");
  }
  std::vector<std::complex<double>> roots(s.rows());
  for (int i = 0; i < s.rows(); ++i) roots[i] = solver.eigenvalues()[i];
  std::ranges::sort(roots, [](auto p, auto q) {
    return p.real() != q.real() ? p.real() > q.real() : p.imag() > q.imag();
  });

  // Single-linkage clustering at kClusterTol.
  std::vector<int> label(roots.size(), -1);
  int clusters = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (label[i] >= 0) continue;
    label[i] = clusters;
    std::vector<std::size_t> frontier{i};
    while (!frontier.empty()) {
      const std::size_t u = frontier.back();
      frontier.pop_back();
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (label[j] < 0 && std::abs(roots[j] - roots[u]) <= kClusterTol) {
          label[j] = clusters;
          frontier.push_back(j);
        }
      }
    }
    ++clusters;
  }

  const double scale = scale_of(a);
  std::vector<EigenPair> out;
  for (int c = 0; c < clusters; ++c) {
    std::complex<double> sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (label[i] == c) {
        sum += roots[i];
        ++count;
      }
    }
    EigenPair p;
    p.lambda = sum / static_cast<double>(count);
    p.multiplicity = count;
    p.residual = std::numeric_limits<double>::quiet_NaN();
    if (std::abs(p.lambda.imag()) <= kClusterTol) {
      p.lambda = p.lambda.real();
      // A k-fold root is only known to about eps^(1/k), so the eigenvector
      // residual cannot be expected to beat that.
      const double limit =
          std::max({tol, 1e-8,
                    10.0 * std::pow(std::numeric_limits<double>::epsilon(),
                                    1.0 / count)}) *
          scale;
      const auto found = real_h_vector(a, p.lambda.real());
      if (found && found->second <= limit) {
        p.kind = EigenKind::H;
        p.vector = canonical_sign(found->first);
        p.residual = found->second;
      } else {
        p.kind = EigenKind::N;
      }
    } else {
      p.kind = EigenKind::Unclassified;
    }
    out.push_back(std::move(p));
  }
  sort_pairs(out);
  return out;
}

ZSpectrum z_spectrum_small(const SymTensor& a, double tol) {
  if (a.order() < 2) throw DimensionError("eigenvalues need order >= 2");
  switch (a.dim()) {
    case 1: {
      ZSpectrum out;
      out.pairs.push_back(make_z_pair(a, Vector::Ones(1)));
      return out;
    }
    case 2: return z_spectrum_circle(a, tol);
    case 3: return z_spectrum_sphere(a, tol);
    default:
      throw DimensionError("direct Z-eigenvalue solve supports n <= 3, got n = " +
                           std::to_string(a.dim()));
  }
}

PDVerdict pd_check(const SymTensor& a, double tol) {
  if (a.order() % 2 != 0) {
    throw ValidationError({"odd-order forms are never positive definite (order " +
                           std::to_string(a.order()) + ")"});
  }
  PDVerdict v;
  if (a.dim() <= 3) {
    v.method = PDMethod::ExactSpectrum;
    const auto spectrum = z_spectrum_small(a, tol);
    if (spectrum.pairs.empty()) {
      throw SolverError("no Z-eigenpair found for an even-order tensor");
    }
    const auto lowest = std::ranges::min_element(
        spectrum.pairs, {}, [](const EigenPair& p) { return p.lambda.real(); });
    v.margin = lowest->lambda.real();
    const double thr = tol * scale_of(a);
    if (v.margin > thr) {
      v.classification = PDClass::PositiveDefinite;
    } else if (v.margin >= -thr) {
      v.classification = PDClass::PositiveSemidefinite;
    } else {
      v.classification = PDClass::Indefinite;
      v.witness = lowest->vector;
    }
    return v;
  }
  v.method = PDMethod::Gershgorin;
  const auto disks = gershgorin_disks(a);
  v.margin = std::numeric_limits<double>::infinity();
  for (const auto& d : disks) v.margin = std::min(v.margin, d.center - d.radius);
  v.classification = v.margin > 0.0 ? PDClass::CertifiedPD : PDClass::Indeterminate;
  return v;
}

}  // namespace tensorspec
