#include "tensorspec/multi_index.hpp"

#include <algorithm>
#include <limits>

#include "tensorspec/errors.hpp"

namespace tensorspec {

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::invalid_argument([&] {
        std::string msg;
        for (const auto& s : issues) {
          if (!msg.empty()) msg += "; ";
          msg += s;
        }
        return msg.empty() ? std::string("validation failed") : msg;
      }()),
      issues_(std::move(issues)) {}

double multiplicity(std::span<const int> sorted) {
  double result = 1.0;
  std::size_t run = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    run = (k > 0 && sorted[k] == sorted[k - 1]) ? run + 1 : 1;
    // multiply by (k+1)/run, which accumulates m!/prod(c!) without overflow
    result *= static_cast<double>(k + 1) / static_cast<double>(run);
  }
  return result;
}

std::size_t sorted_index_count(int n, int m) {
  // C(n+m-1, m)
  double c = 1.0;
  for (int k = 1; k <= m; ++k) c = c * (n - 1 + k) / k;
  return static_cast<std::size_t>(c + 0.5);
}

void for_each_sorted_index(int n, int m,
                           const std::function<void(std::span<const int>)>& fn) {
  if (n <= 0 || m < 0) return;
  MultiIndex idx(m, 0);
  while (true) {
    fn(idx);
    int k = m - 1;
    while (k >= 0 && idx[k] == n - 1) --k;
    if (k < 0) return;
    ++idx[k];
    for (int j = k + 1; j < m; ++j) idx[j] = idx[k];
  }
}

void for_each_index(int n, int m,
                    const std::function<void(std::span<const int>)>& fn) {
  if (n <= 0 || m < 0) return;
  MultiIndex idx(m, 0);
  while (true) {
    fn(idx);
    int k = m - 1;
    while (k >= 0 && idx[k] == n - 1) {
      idx[k] = 0;
      --k;
    }
    if (k < 0) return;
    ++idx[k];
  }
}

void for_each_distinct_permutation(
    std::span<const int> sorted,
    const std::function<void(std::span<const int>)>& fn) {
  MultiIndex perm(sorted.begin(), sorted.end());
  do {
    fn(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

std::size_t checked_pow(int n, int m) {
  std::size_t r = 1;
  for (int k = 0; k < m; ++k) {
    if (r > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(n))
      return std::numeric_limits<std::size_t>::max();
    r *= static_cast<std::size_t>(n);
  }
  return r;
}

}  // namespace tensorspec
