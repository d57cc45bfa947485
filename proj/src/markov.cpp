#include "tensorspec/markov.hpp"

#include <cmath>
#include <deque>
#include <map>

#include "tensorspec/errors.hpp"

namespace tensorspec {

namespace {

constexpr double kColumnSumTol = 1e-10;
constexpr double kSimplexTol = 1e-12;
constexpr std::size_t kCycleWindow = 64;
constexpr double kCycleGrain = 1e-12;

std::string format_index(std::span<const int> idx) {
  std::string s = "(";
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(idx[k] + 1);
  }
  return s + ")";
}

// P x^{m-1} with the same vector in every slot.
Vector apply_same(const TransitionTensor& p, const Vector& x) {
  return apply_m_minus_1(p.tensor(), x);
}

std::vector<long long> quantize(const Vector& x) {
  std::vector<long long> key(x.size());
  for (int i = 0; i < x.size(); ++i) key[i] = std::llround(x[i] / kCycleGrain);
  return key;
}

}  // namespace

std::string to_string(StationaryStatus s) {
  switch (s) {
    case StationaryStatus::Converged: return "converged";
    case StationaryStatus::Cycling: return "cycling";
    case StationaryStatus::MaxIter: return "max-iter";
  }
  return "max-iter";
}

TransitionTensor validate_transition(const GenTensor& t) {
  std::vector<std::string> issues;
  if (t.order() < 2) issues.push_back("transition tensor needs order >= 2");
  std::map<MultiIndex, double> column_sums;
  for (std::size_t k = 0; k < t.nnz(); ++k) {
    const auto idx = t.index(k);
    const double v = t.value(k);
    if (v < 0.0) {
      issues.push_back("entry " + format_index(idx) + " = " + std::to_string(v) +
                       " is negative");
    } else if (v > 1.0) {
      issues.push_back("entry " + format_index(idx) + " = " + std::to_string(v) +
                       " exceeds 1");
    }
    column_sums[MultiIndex(idx.begin() + 1, idx.end())] += v;
  }
  if (t.order() >= 2) {
    for_each_index(t.dim(), t.order() - 1, [&](std::span<const int> col) {
      const auto it = column_sums.find(MultiIndex(col.begin(), col.end()));
      const double sum = it == column_sums.end() ? 0.0 : it->second;
      if (std::abs(sum - 1.0) > kColumnSumTol) {
        issues.push_back("column (*," + format_index(col).substr(1) + " sums to " +
                         std::to_string(sum) + ", expected 1");
      }
    });
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return TransitionTensor(t);
}

void check_prob_vec(const Vector& x) {
  std::vector<std::string> issues;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) {
      issues.push_back("component " + std::to_string(i + 1) + " is negative");
    }
  }
  if (std::abs(x.sum() - 1.0) > kSimplexTol) {
    issues.push_back("components sum to " + std::to_string(x.sum()) +
                     ", expected 1");
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

Vector evolve(const TransitionTensor& p, const std::vector<Vector>& history) {
  const int m = p.order();
  if (static_cast<int>(history.size()) != m - 1) {
    throw DimensionError("evolve needs " + std::to_string(m - 1) +
                         " history vectors, got " + std::to_string(history.size()));
  }
  for (const auto& h : history) {
    if (h.size() != p.dim()) throw DimensionError("history vector length mismatch");
  }
  const GenTensor& t = p.tensor();
  Vector x = Vector::Zero(p.dim());
  for (std::size_t k = 0; k < t.nnz(); ++k) {
    const auto idx = t.index(k);
    double prod = t.value(k);
    for (int s = 1; s < m; ++s) prod *= history[s - 1][idx[s]];
    x[idx[0]] += prod;
  }
  return x;
}

double fixed_point_residual(const TransitionTensor& p, const Vector& x) {
  if (x.size() != p.dim()) throw DimensionError("vector length mismatch");
  return (apply_same(p, x) - x).lpNorm<1>();
}

StationaryResult stationary_power(const TransitionTensor& p,
                                  const IterOptions& opts) {
  return stationary_power(p, Vector(), opts);
}

StationaryResult stationary_power(const TransitionTensor& p, const Vector& x0,
                                  const IterOptions& opts) {
  const int n = p.dim();
  StationaryResult r;
  if (n == 1) {
    r.x_star = Vector::Ones(1);
    r.residual = fixed_point_residual(p, r.x_star);
    r.status = StationaryStatus::Converged;
    return r;
  }
  Vector y = x0.size() == 0 ? Vector::Constant(n, 1.0 / n) : x0;
  if (y.size() != n) throw DimensionError("start vector length mismatch");
  check_prob_vec(y);

  std::deque<std::vector<long long>> window;
  // Quantized iterate -> step length when it was produced.
  std::map<std::vector<long long>, double> seen;
  r.x_star = y;
  r.residual = std::numeric_limits<double>::infinity();
  for (int k = 0; k < opts.max_iter; ++k) {
    // Exact iterates stay on the simplex; rescaling stops roundoff in the sum
    // from being amplified by the degree m-1 homogeneity of the map.
    Vector next = apply_same(p, y);
    next /= next.sum();
    const double diff = (next - y).lpNorm<1>();
    r.iterations = k + 1;
    if (diff <= opts.tol) {
      r.x_star = y;
      r.residual = fixed_point_residual(p, y);
      r.status = StationaryStatus::Converged;
      return r;
    }
    r.x_star = next;
    auto key = quantize(next);
    // A true cycle revisits an iterate with an unchanged step; damped
    // oscillation and steps below the grain are convergence, not cycling.
    const auto hit = seen.find(key);
    if (diff > kCycleGrain && hit != seen.end() && diff >= 0.999 * hit->second) {
      r.residual = fixed_point_residual(p, next);
      r.status = StationaryStatus::Cycling;
      return r;
    }
    window.push_back(key);
    seen.insert_or_assign(std::move(key), diff);
    if (window.size() > kCycleWindow) {
      seen.erase(window.front());
      window.pop_front();
    }
    y = next;
  }
  r.residual = fixed_point_residual(p, r.x_star);
  r.status = StationaryStatus::MaxIter;
  return r;
}

SimulationResult simulate(const TransitionTensor& p, std::vector<Vector> history,
                          int steps) {
  SimulationResult out;
  for (int t = 0; t < steps; ++t) {
    Vector next = evolve(p, history);
    next /= next.sum();
    out.last_change = (next - history.front()).lpNorm<1>();
    history.insert(history.begin(), next);
    history.pop_back();
    out.trajectory.push_back(std::move(next));
  }
  return out;
}

}  // namespace tensorspec
