#include "tensorspec/rankone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "tensorspec/direct_solve.hpp"
#include "tensorspec/errors.hpp"
#include "tensorspec/kernels.hpp"

namespace tensorspec {

namespace {

constexpr double kTieTol = 1e-9;
constexpr double kDropRatio = 1e-14;

bool lex_before_desc(const Vector& a, const Vector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

// True when candidate (lambda, x) should replace the incumbent.
bool dominates(double lambda, const Vector& x, double best_lambda,
               const Vector& best_x, double tie) {
  const double gap = std::abs(lambda) - std::abs(best_lambda);
  if (gap > tie) return true;
  if (gap < -tie) return false;
  if ((lambda > 0.0) != (best_lambda > 0.0)) return lambda > 0.0;
  return lex_before_desc(x, best_x);
}

}  // namespace

RankOneTerm best_rank_one(const SymTensor& a, const IterOptions& opts) {
  const double norm = frobenius_norm(a);
  if (norm == 0.0) throw ValidationError({"best rank-one approximation of a zero tensor"});
  const double tie = kTieTol * std::max(1.0, norm);

  RankOneTerm best;
  bool have = false;
  auto consider = [&](double lambda, const Vector& x) {
    if (!have || dominates(lambda, x, best.lambda, best.x, tie)) {
      best.lambda = lambda;
      best.x = x;
      have = true;
    }
  };

  if (a.dim() <= 3) {
    const auto spectrum = z_spectrum_small(a, opts.tol);
    for (const auto& p : spectrum.pairs) consider(p.lambda.real(), *p.vector);
    if (!have) throw SolverError("direct Z-eigenvalue solve returned no pairs");
    best.exact = true;
    return best;
  }

  const auto pos = z_power(a, opts);
  const auto neg = z_power(scaled(a, -1.0), opts);
  if (!pos.converged && !neg.converged) {
    throw SolverError("shifted power method did not converge on A or -A");
  }
  if (pos.converged) consider(pos.pair.lambda.real(), *pos.pair.vector);
  if (neg.converged) {
    // Same vector, opposite form value.
    consider(apply_m(a, *neg.pair.vector), *neg.pair.vector);
  }
  best.exact = false;
  return best;
}

double rank_one_residual(const SymTensor& a, const RankOneTerm& term) {
  return frobenius_norm(subtract(a, rank_one(term.lambda, term.x, a.order())));
}

SSBRAResult ssbra(const SymTensor& a, int max_terms, double tol,
                  const IterOptions& opts) {
  SSBRAResult r;
  r.initial_norm = frobenius_norm(a);
  const double drop = kDropRatio * r.initial_norm;
  SymTensor current = a;
  double norm = r.initial_norm;
  for (int k = 0; k < max_terms && norm > tol; ++k) {
    RankOneTerm term;
    try {
      term = best_rank_one(current, opts);
    } catch (const std::exception& e) {
      r.failure = e.what();
      break;
    }
    current = pruned(subtract(current, rank_one(term.lambda, term.x, a.order())), drop);
    norm = frobenius_norm(current);
    r.terms.push_back(std::move(term));
    r.residual_norms.push_back(norm);
  }
  return r;
}

SymTensor reconstruct(const SSBRAResult& r, int order, int dim) {
  SymTensor::Builder b(order, dim);
  for (const auto& t : r.terms) {
    const SymTensor term = rank_one(t.lambda, t.x, order);
    for (std::size_t k = 0; k < term.nnz(); ++k) b.add(term.index(k), term.value(k));
  }
  return b.build();
}

SymTensor construct_reference_tensor(int m, int n) {
  if (m < 2 || n < 1) {
    throw DimensionError("reference tensor needs m >= 2 and n >= 1");
  }
  const int k = m / 2;
  const bool odd = m % 2 == 1;
  SymTensor::Builder b(m, n);
  // (x^T x)^k = sum_e k!/prod(e_j!) prod x_j^{2 e_j}; a monomial with index
  // multiset S has coefficient weight(S) * a_S.
  for_each_sorted_index(n, k, [&](std::span<const int> half) {
    const double coeff = multiplicity(half);
    std::vector<int> counts(n, 0);
    for (int j : half) counts[j] += 2;
    auto emit = [&](const std::vector<int>& c) {
      MultiIndex idx;
      idx.reserve(m);
      for (int j = 0; j < n; ++j) idx.insert(idx.end(), c[j], j);
      b.add(idx, coeff / multiplicity(idx));
    };
    if (!odd) {
      emit(counts);
      return;
    }
    for (int i = 0; i < n; ++i) {
      auto c = counts;
      ++c[i];
      emit(c);
    }
  });
  return b.build();
}

AppBounds app_bounds(int m, int n) {
  AppBounds out;
  out.m = m;
  out.n = n;
  out.lower = 1.0 / std::sqrt(std::pow(static_cast<double>(n), m - 1));
  out.reference_norm = frobenius_norm(construct_reference_tensor(m, n));
  // Even m: the form is 1 on the whole sphere. Odd m: the form is sum(x_i)
  // on the sphere, maximized at the normalized all-ones vector.
  out.rho_z = m % 2 == 0 ? 1.0 : std::sqrt(static_cast<double>(n));
  out.upper = out.rho_z / out.reference_norm;
  switch (m) {
    case 2: out.closed_form_upper = 1.0 / std::sqrt(static_cast<double>(n)); break;
    case 3: out.closed_form_upper = std::sqrt(6.0 / (n + 5.0)); break;
    case 4: out.closed_form_upper = std::sqrt(3.0 / (static_cast<double>(n) * n + 2.0 * n)); break;
    default: break;
  }
  return out;
}

double multilinear_max(const SymTensor& a, const MultilinearOptions& opts) {
  const int n = a.dim();
  const int m = a.order();
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  auto random_unit = [&] {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = normal(rng);
    if (v.norm() == 0.0) v = Vector::Ones(n);
    return Vector(v.normalized());
  };

  std::vector<std::vector<Vector>> starts;
  for (int r = 0; r < opts.restarts; ++r) {
    std::vector<Vector> u;
    for (int k = 0; k < m; ++k) u.push_back(random_unit());
    starts.push_back(std::move(u));
  }

  if (n <= 3) {
    // Symmetric starts at the best points of a coarse sphere grid.
    std::vector<std::pair<double, Vector>> grid;
    if (n == 1) {
      grid.emplace_back(std::abs(apply_m(a, Vector::Ones(1))), Vector::Ones(1));
    } else if (n == 2) {
      for (int i = 0; i < 64; ++i) {
        const double t = i * std::numbers::pi / 64;
        Vector x(2);
        x << std::cos(t), std::sin(t);
        grid.emplace_back(std::abs(apply_m(a, x)), x);
      }
    } else {
      for (int j = 0; j < 16; ++j) {
        const double theta = (j + 0.5) * (0.5 * std::numbers::pi) / 16;
        for (int i = 0; i < 32; ++i) {
          const double phi = i * 2.0 * std::numbers::pi / 32;
          Vector x(3);
          x << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
              std::cos(theta);
          grid.emplace_back(std::abs(apply_m(a, x)), x);
        }
      }
    }
    std::ranges::stable_sort(grid, [](const auto& p, const auto& q) { return p.first > q.first; });
    const std::size_t keep = std::min<std::size_t>(4, grid.size());
    for (std::size_t g = 0; g < keep; ++g) {
      starts.emplace_back(static_cast<std::size_t>(m), grid[g].second);
    }
  }

  const auto results = kernels::omp::multilinear_restarts(a, starts, opts.max_iter, opts.tol);
  double best = 0.0;
  for (const auto& r : results) best = std::max(best, r.value);
  return best;
}

}  // namespace tensorspec
