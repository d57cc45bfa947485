#include "tensorspec/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <map>
#include <string>

#include "tensorspec/errors.hpp"
#include "tensorspec/kernels.hpp"

namespace tensorspec {

namespace detail {

double SparseStore::find(std::span<const int> idx) const {
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto key = index(mid);
    if (std::lexicographical_compare(key.begin(), key.end(), idx.begin(),
                                     idx.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size() && std::ranges::equal(index(lo), idx)) return values[lo];
  return 0.0;
}

SparseStore build_store(int order, int dim,
                        const std::map<MultiIndex, double>& entries) {
  SparseStore s;
  s.order = order;
  s.dim = dim;
  s.indices.reserve(entries.size() * static_cast<std::size_t>(order));
  s.values.reserve(entries.size());
  for (const auto& [idx, v] : entries) {
    if (v == 0.0) continue;
    s.indices.insert(s.indices.end(), idx.begin(), idx.end());
    s.values.push_back(v);
  }
  return s;
}

}  // namespace detail

namespace {

void check_shape(int order, int dim) {
  if (order < 1 || dim < 1) {
    throw DimensionError("tensor needs order >= 1 and dim >= 1, got order " +
                         std::to_string(order) + ", dim " + std::to_string(dim));
  }
}

void check_index(std::span<const int> idx, int order, int dim) {
  if (static_cast<int>(idx.size()) != order) {
    throw DimensionError("index has " + std::to_string(idx.size()) +
                         " components, tensor order is " + std::to_string(order));
  }
  for (int i : idx) {
    if (i < 0 || i >= dim) {
      throw DimensionError("index component " + std::to_string(i) +
                           " outside 0.." + std::to_string(dim - 1));
    }
  }
}

void check_value(double v) {
  if (!std::isfinite(v)) throw ValidationError({"tensor entry is not finite"});
}

void check_vector(const Vector& x, int dim) {
  if (x.size() != dim) {
    throw DimensionError("vector length " + std::to_string(x.size()) +
                         " does not match tensor dimension " +
                         std::to_string(dim));
  }
}

// Product of x over the tuple, skipping positions `skip_a` and `skip_b`.
double product_except(std::span<const int> idx, const Vector& x, int skip_a,
                      int skip_b = -1) {
  double r = 1.0;
  for (int k = 0; k < static_cast<int>(idx.size()); ++k) {
    if (k == skip_a || k == skip_b) continue;
    r *= x[idx[k]];
  }
  return r;
}

int count_of(std::span<const int> idx, int value) {
  return static_cast<int>(std::ranges::count(idx, value));
}

}  // namespace

// --- SymTensor -------------------------------------------------------------

SymTensor::Builder::Builder(int order, int dim) : order_(order), dim_(dim) {
  check_shape(order, dim);
}

MultiIndex SymTensor::Builder::canonical(std::span<const int> idx) const {
  check_index(idx, order_, dim_);
  MultiIndex key(idx.begin(), idx.end());
  std::ranges::sort(key);
  return key;
}

SymTensor::Builder& SymTensor::Builder::set(std::span<const int> idx,
                                            double value) {
  check_value(value);
  entries_[canonical(idx)] = value;
  return *this;
}

SymTensor::Builder& SymTensor::Builder::add(std::span<const int> idx,
                                            double value) {
  check_value(value);
  entries_[canonical(idx)] += value;
  return *this;
}

bool SymTensor::Builder::contains(std::span<const int> idx) const {
  return entries_.contains(canonical(idx));
}

SymTensor SymTensor::Builder::build() const {
  return SymTensor(detail::build_store(order_, dim_, entries_));
}

SymTensor::SymTensor(int order, int dim) {
  check_shape(order, dim);
  store_.order = order;
  store_.dim = dim;
}

SymTensor::SymTensor(detail::SparseStore store) : store_(std::move(store)) {
  weights_.reserve(store_.size());
  for (std::size_t k = 0; k < store_.size(); ++k) {
    weights_.push_back(multiplicity(store_.index(k)));
  }
}

double SymTensor::operator()(std::span<const int> idx) const {
  check_index(idx, order(), dim());
  MultiIndex key(idx.begin(), idx.end());
  std::ranges::sort(key);
  return store_.find(key);
}

// --- GenTensor -------------------------------------------------------------

GenTensor::Builder::Builder(int order, int dim) : order_(order), dim_(dim) {
  check_shape(order, dim);
}

GenTensor::Builder& GenTensor::Builder::set(std::span<const int> idx,
                                            double value) {
  check_index(idx, order_, dim_);
  check_value(value);
  entries_[MultiIndex(idx.begin(), idx.end())] = value;
  return *this;
}

bool GenTensor::Builder::contains(std::span<const int> idx) const {
  return entries_.contains(MultiIndex(idx.begin(), idx.end()));
}

GenTensor GenTensor::Builder::build() const {
  return GenTensor(detail::build_store(order_, dim_, entries_));
}

GenTensor::GenTensor(int order, int dim) {
  check_shape(order, dim);
  store_.order = order;
  store_.dim = dim;
}

// --- small types -----------------------------------------------------------

bool Disk::contains(double re, double im, double slack) const {
  return std::abs(std::complex<double>(re - center, im)) <= radius + slack;
}

bool RepDigraph::strongly_connected() const {
  if (n <= 1) return true;
  auto reaches_all = [&](bool reverse) {
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int count = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < n; ++v) {
        const bool edge = reverse ? arc[v][u] : arc[u][v];
        if (edge && !seen[v]) {
          seen[v] = 1;
          ++count;
          queue.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reaches_all(false) && reaches_all(true);
}

// --- conversions -----------------------------------------------------------

SymTensor symmetrize(const GenTensor& t) {
  // Group positions by sorted index; missing positions count as zero. The
  // mean is taken as offsets from the first value so a class of equal values
  // comes back bit-identical.
  std::map<MultiIndex, std::vector<double>> classes;
  for (std::size_t k = 0; k < t.nnz(); ++k) {
    MultiIndex key(t.index(k).begin(), t.index(k).end());
    std::ranges::sort(key);
    classes[key].push_back(t.value(k));
  }
  SymTensor::Builder b(t.order(), t.dim());
  for (const auto& [key, values] : classes) {
    const double count = multiplicity(key);
    const double base = values.size() == static_cast<std::size_t>(count) ? values[0] : 0.0;
    double offset = 0.0;
    for (double v : values) offset += v - base;
    b.set(key, base + offset / count);
  }
  return b.build();
}

GenTensor to_general(const SymTensor& a) {
  GenTensor::Builder b(a.order(), a.dim());
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    const double v = a.value(k);
    for_each_distinct_permutation(a.index(k),
                                  [&](std::span<const int> p) { b.set(p, v); });
  }
  return b.build();
}

// --- contractions ----------------------------------------------------------

double apply_m(const SymTensor& a, const Vector& x) {
  check_vector(x, a.dim());
  double sum = 0.0;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    sum += a.weight(k) * a.value(k) * product_except(a.index(k), x, -1);
  }
  return sum;
}

double apply_m(const GenTensor& a, const Vector& x) {
  check_vector(x, a.dim());
  double sum = 0.0;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    sum += a.value(k) * product_except(a.index(k), x, -1);
  }
  return sum;
}

Vector apply_m_minus_1(const SymTensor& a, const Vector& x) {
  check_vector(x, a.dim());
  const int m = a.order();
  Vector y = Vector::Zero(a.dim());
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    const auto idx = a.index(k);
    const double base = a.value(k) * a.weight(k) / m;
    for (int p = 0; p < m; ++p) {
      if (p > 0 && idx[p] == idx[p - 1]) continue;
      const int i = idx[p];
      y[i] += base * count_of(idx, i) * product_except(idx, x, p);
    }
  }
  return y;
}

Vector apply_m_minus_1(const GenTensor& a, const Vector& x) {
  check_vector(x, a.dim());
  Vector y = Vector::Zero(a.dim());
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    const auto idx = a.index(k);
    y[idx[0]] += a.value(k) * product_except(idx, x, 0);
  }
  return y;
}

Matrix apply_m_minus_2(const SymTensor& a, const Vector& x) {
  check_vector(x, a.dim());
  const int m = a.order();
  if (m < 2) throw DimensionError("A x^{m-2} needs order >= 2");
  Matrix h = Matrix::Zero(a.dim(), a.dim());
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    const auto idx = a.index(k);
    const double base = a.value(k) * a.weight(k) / (m * (m - 1.0));
    for (int p = 0; p < m; ++p) {
      if (p > 0 && idx[p] == idx[p - 1]) continue;
      const int i = idx[p];
      const int ci = count_of(idx, i);
      if (ci >= 2) {
        h(i, i) += base * ci * (ci - 1) * product_except(idx, x, p, p + 1);
      }
      for (int q = p + ci; q < m; ++q) {
        if (q > p + ci && idx[q] == idx[q - 1]) continue;
        const int j = idx[q];
        const double v =
            base * ci * count_of(idx, j) * product_except(idx, x, p, q);
        h(i, j) += v;
        h(j, i) += v;
      }
    }
  }
  return h;
}

double multilinear(const SymTensor& a, std::span<const Vector> vecs) {
  if (static_cast<int>(vecs.size()) != a.order()) {
    throw DimensionError("multilinear form needs one vector per mode");
  }
  for (const auto& v : vecs) check_vector(v, a.dim());
  double sum = 0.0;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    double inner = 0.0;
    for_each_distinct_permutation(a.index(k), [&](std::span<const int> p) {
      double prod = 1.0;
      for (std::size_t mode = 0; mode < p.size(); ++mode) prod *= vecs[mode][p[mode]];
      inner += prod;
    });
    sum += a.value(k) * inner;
  }
  return sum;
}

Vector contract_except(const SymTensor& a, std::span<const Vector> vecs,
                       int free_mode) {
  if (static_cast<int>(vecs.size()) != a.order()) {
    throw DimensionError("contraction needs one vector per mode");
  }
  if (free_mode < 0 || free_mode >= a.order()) {
    throw DimensionError("free mode out of range");
  }
  for (int mode = 0; mode < a.order(); ++mode) {
    if (mode != free_mode) check_vector(vecs[mode], a.dim());
  }
  Vector y = Vector::Zero(a.dim());
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    const double v = a.value(k);
    for_each_distinct_permutation(a.index(k), [&](std::span<const int> p) {
      double prod = v;
      for (int mode = 0; mode < static_cast<int>(p.size()); ++mode) {
        if (mode != free_mode) prod *= vecs[mode][p[mode]];
      }
      y[p[free_mode]] += prod;
    });
  }
  return y;
}

double frobenius_norm(const SymTensor& a) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    sum += a.weight(k) * a.value(k) * a.value(k);
  }
  return std::sqrt(sum);
}

double trace(const SymTensor& a) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    const auto idx = a.index(k);
    if (idx.front() == idx.back()) sum += a.value(k);
  }
  return sum;
}

SymTensor transform(const SymTensor& a, const Matrix& p) {
  if (p.rows() != a.dim() || p.cols() != a.dim()) {
    throw DimensionError("transform matrix must be " + std::to_string(a.dim()) +
                         "x" + std::to_string(a.dim()));
  }
  std::vector<int> flat;
  flat.reserve(sorted_index_count(a.dim(), a.order()) * a.order());
  for_each_sorted_index(a.dim(), a.order(), [&](std::span<const int> idx) {
    flat.insert(flat.end(), idx.begin(), idx.end());
  });
  const auto values = kernels::omp::transform_entries(a, p, flat);
  SymTensor::Builder b(a.order(), a.dim());
  for (std::size_t k = 0; k < values.size(); ++k) {
    b.set(std::span<const int>(flat.data() + k * a.order(), a.order()), values[k]);
  }
  return b.build();
}

SymTensor subtract(const SymTensor& a, const SymTensor& b) {
  if (a.order() != b.order() || a.dim() != b.dim()) {
    throw DimensionError("subtract needs tensors of equal order and dimension");
  }
  SymTensor::Builder out(a.order(), a.dim());
  for (std::size_t k = 0; k < a.nnz(); ++k) out.add(a.index(k), a.value(k));
  for (std::size_t k = 0; k < b.nnz(); ++k) out.add(b.index(k), -b.value(k));
  return out.build();
}

SymTensor scaled(const SymTensor& a, double c) {
  SymTensor::Builder out(a.order(), a.dim());
  for (std::size_t k = 0; k < a.nnz(); ++k) out.set(a.index(k), c * a.value(k));
  return out.build();
}

SymTensor rank_one(double lambda, const Vector& x, int order) {
  const int n = static_cast<int>(x.size());
  SymTensor::Builder out(order, n);
  for_each_sorted_index(n, order, [&](std::span<const int> idx) {
    out.set(idx, lambda * product_except(idx, x, -1));
  });
  return out.build();
}

SymTensor pruned(const SymTensor& a, double threshold) {
  SymTensor::Builder out(a.order(), a.dim());
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    if (std::abs(a.value(k)) > threshold) out.set(a.index(k), a.value(k));
  }
  return out.build();
}

double max_abs_entry(const SymTensor& a) {
  double r = 0.0;
  for (std::size_t k = 0; k < a.nnz(); ++k) r = std::max(r, std::abs(a.value(k)));
  return r;
}

// --- localization ----------------------------------------------------------

std::vector<Disk> gershgorin_disks(const SymTensor& a) {
  const int m = a.order();
  std::vector<Disk> disks(a.dim());
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    const auto idx = a.index(k);
    if (idx.front() == idx.back()) {
      disks[idx.front()].center = a.value(k);
      continue;
    }
    // Positions with leading index i: weight * c_i / m.
    for (int p = 0; p < m; ++p) {
      if (p > 0 && idx[p] == idx[p - 1]) continue;
      const int i = idx[p];
      disks[i].radius += std::abs(a.value(k)) * a.weight(k) * count_of(idx, i) / m;
    }
  }
  return disks;
}

// --- hypergraphs and irreducibility ---------------------------------------

SymTensor hypergraph_adjacency(const std::vector<std::vector<int>>& edges,
                               int n, int uniformity) {
  if (n < 1) throw DimensionError("hypergraph needs at least one vertex");
  if (edges.empty()) return SymTensor(uniformity > 0 ? uniformity : 2, n);
  const std::size_t k =
      uniformity > 0 ? static_cast<std::size_t>(uniformity) : edges.front().size();
  std::vector<std::string> issues;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    if (edge.size() != k) {
      issues.push_back("edge " + std::to_string(e) + " has " +
                       std::to_string(edge.size()) + " vertices, expected " +
                       std::to_string(k));
      continue;
    }
    for (int v : edge) {
      if (v < 0 || v >= n) {
        issues.push_back("edge " + std::to_string(e) + " vertex " +
                         std::to_string(v) + " out of range");
      }
    }
    MultiIndex sorted(edge.begin(), edge.end());
    std::ranges::sort(sorted);
    if (std::ranges::adjacent_find(sorted) != sorted.end()) {
      issues.push_back("edge " + std::to_string(e) + " repeats a vertex");
    }
  }
  if (k < 2) issues.push_back("edges need at least two vertices");
  if (!issues.empty()) throw ValidationError(std::move(issues));

  SymTensor::Builder b(static_cast<int>(k), n);
  for (const auto& edge : edges) b.set(edge, 1.0);
  return b.build();
}

RepDigraph representation_digraph(const SymTensor& a) {
  RepDigraph g{a.dim(), std::vector<std::vector<char>>(
                            a.dim(), std::vector<char>(a.dim(), 0))};
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    const auto idx = a.index(k);
    for (int p = 0; p < a.order(); ++p) {
      if (p > 0 && idx[p] == idx[p - 1]) continue;
      for (int q = 0; q < a.order(); ++q) {
        if (q != p) g.arc[idx[p]][idx[q]] = 1;
      }
    }
  }
  return g;
}

RepDigraph representation_digraph(const GenTensor& a) {
  RepDigraph g{a.dim(), std::vector<std::vector<char>>(
                            a.dim(), std::vector<char>(a.dim(), 0))};
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    const auto idx = a.index(k);
    for (int q = 1; q < a.order(); ++q) g.arc[idx[0]][idx[q]] = 1;
  }
  return g;
}

bool is_weakly_irreducible(const SymTensor& a) {
  return representation_digraph(a).strongly_connected();
}

bool is_weakly_irreducible(const GenTensor& a) {
  return representation_digraph(a).strongly_connected();
}

bool is_nonnegative(const SymTensor& a) {
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    if (a.value(k) < 0.0) return false;
  }
  return true;
}

bool is_nonnegative(const GenTensor& a) {
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    if (a.value(k) < 0.0) return false;
  }
  return true;
}

}  // namespace tensorspec
