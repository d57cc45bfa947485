#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tensorspec {

using MultiIndex = std::vector<int>;

// Number of distinct orderings of a sorted multi-index, m! / prod(c_j!).
double multiplicity(std::span<const int> sorted);

// Number of non-decreasing multi-indices of length m over 0..n-1.
std::size_t sorted_index_count(int n, int m);

// Visits every non-decreasing multi-index of length m over 0..n-1 in
// lexicographic order.
void for_each_sorted_index(int n, int m,
                           const std::function<void(std::span<const int>)>& fn);

// Visits every multi-index of length m over 0..n-1 (n^m of them) in
// lexicographic order.
void for_each_index(int n, int m,
                    const std::function<void(std::span<const int>)>& fn);

// Visits each distinct arrangement of a sorted multi-index exactly once.
void for_each_distinct_permutation(
    std::span<const int> sorted,
    const std::function<void(std::span<const int>)>& fn);

// Integer power n^m, saturating at SIZE_MAX.
std::size_t checked_pow(int n, int m);

}  // namespace tensorspec
