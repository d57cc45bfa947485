#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tensorspec/multi_index.hpp"

namespace tensorspec {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

namespace detail {

// Flat coordinate storage: entry k occupies indices[k*order, (k+1)*order).
// Entries are kept in lexicographic order of their index tuples.
struct SparseStore {
  int order = 0;
  int dim = 0;
  std::vector<int> indices;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  std::span<const int> index(std::size_t k) const {
    return {indices.data() + k * static_cast<std::size_t>(order),
            static_cast<std::size_t>(order)};
  }
  // Binary search for an exact index tuple; returns 0.0 when absent.
  double find(std::span<const int> idx) const;
};

SparseStore build_store(int order, int dim,
                        const std::map<MultiIndex, double>& entries);

}  // namespace detail

/// Real symmetric tensor of order m and dimension n.
///
/// Only non-decreasing index tuples are stored; a lookup of any permuted
/// tuple resolves to its sorted representative, so symmetry holds by
/// construction. Indices are 0-based throughout the library. Explicit zeros
/// are dropped when the tensor is built.
class SymTensor {
 public:
  class Builder {
   public:
    Builder(int order, int dim);
    /// Sets the entry of the sorted representative of `idx`.
    Builder& set(std::span<const int> idx, double value);
    Builder& set(std::initializer_list<int> idx, double value) {
      return set(std::span<const int>(idx.begin(), idx.size()), value);
    }
    /// Adds to the entry of the sorted representative of `idx`.
    Builder& add(std::span<const int> idx, double value);
    Builder& add(std::initializer_list<int> idx, double value) {
      return add(std::span<const int>(idx.begin(), idx.size()), value);
    }
    bool contains(std::span<const int> idx) const;
    SymTensor build() const;

   private:
    MultiIndex canonical(std::span<const int> idx) const;
    int order_;
    int dim_;
    std::map<MultiIndex, double> entries_;
  };

  SymTensor() = default;
  /// Zero tensor.
  SymTensor(int order, int dim);

  int order() const { return store_.order; }
  int dim() const { return store_.dim; }
  std::size_t nnz() const { return store_.size(); }

  /// Sorted index tuple of stored entry k.
  std::span<const int> index(std::size_t k) const { return store_.index(k); }
  double value(std::size_t k) const { return store_.values[k]; }
  /// Number of positions of the full n^m array that share entry k.
  double weight(std::size_t k) const { return weights_[k]; }

  /// Entry at an arbitrary (not necessarily sorted) position.
  double operator()(std::span<const int> idx) const;
  double operator()(std::initializer_list<int> idx) const {
    return (*this)(std::span<const int>(idx.begin(), idx.size()));
  }

  friend bool operator==(const SymTensor& a, const SymTensor& b) {
    return a.store_.order == b.store_.order && a.store_.dim == b.store_.dim &&
           a.store_.indices == b.store_.indices &&
           a.store_.values == b.store_.values;
  }

 private:
  friend class Builder;
  explicit SymTensor(detail::SparseStore store);
  detail::SparseStore store_;
  std::vector<double> weights_;
};

/// Real tensor of order m and dimension n with no symmetry assumed.
class GenTensor {
 public:
  class Builder {
   public:
    Builder(int order, int dim);
    Builder& set(std::span<const int> idx, double value);
    Builder& set(std::initializer_list<int> idx, double value) {
      return set(std::span<const int>(idx.begin(), idx.size()), value);
    }
    bool contains(std::span<const int> idx) const;
    GenTensor build() const;

   private:
    int order_;
    int dim_;
    std::map<MultiIndex, double> entries_;
  };

  GenTensor() = default;
  GenTensor(int order, int dim);

  int order() const { return store_.order; }
  int dim() const { return store_.dim; }
  std::size_t nnz() const { return store_.size(); }
  std::span<const int> index(std::size_t k) const { return store_.index(k); }
  double value(std::size_t k) const { return store_.values[k]; }
  double weight(std::size_t) const { return 1.0; }

  double operator()(std::span<const int> idx) const { return store_.find(idx); }
  double operator()(std::initializer_list<int> idx) const {
    return store_.find(std::span<const int>(idx.begin(), idx.size()));
  }

 private:
  friend class Builder;
  explicit GenTensor(detail::SparseStore store) : store_(std::move(store)) {}
  detail::SparseStore store_;
};

/// Center a_{i...i} and radius sum_{(i2..im) != (i..i)} |a_{i,i2,...,im}|.
struct Disk {
  double center = 0.0;
  double radius = 0.0;

  bool contains(double re, double im, double slack = 0.0) const;
};

/// Nonzero-pattern digraph: arc i -> j iff some a_{i,i2,...,im} != 0 with
/// j among i2..im.
struct RepDigraph {
  int n = 0;
  std::vector<std::vector<char>> arc;

  bool strongly_connected() const;
};

SymTensor symmetrize(const GenTensor& t);
GenTensor to_general(const SymTensor& a);

/// f(x) = A x^m.
double apply_m(const SymTensor& a, const Vector& x);
double apply_m(const GenTensor& a, const Vector& x);

/// (A x^{m-1})_i = sum a_{i,i2,...,im} x_{i2} ... x_{im}.
Vector apply_m_minus_1(const SymTensor& a, const Vector& x);
Vector apply_m_minus_1(const GenTensor& a, const Vector& x);

/// (A x^{m-2})_{ij}; the Hessian of A x^m is m(m-1) times this matrix.
Matrix apply_m_minus_2(const SymTensor& a, const Vector& x);

/// A u^(1) ... u^(m) with independent vectors, one per mode.
double multilinear(const SymTensor& a, std::span<const Vector> vecs);

/// Contraction with every mode except `free_mode`; the result indexes the
/// free mode.
Vector contract_except(const SymTensor& a, std::span<const Vector> vecs,
                       int free_mode);

double frobenius_norm(const SymTensor& a);
double trace(const SymTensor& a);

/// B = P^m A, b_{i1..im} = sum p_{i1 j1} ... p_{im jm} a_{j1..jm}.
SymTensor transform(const SymTensor& a, const Matrix& p);

/// Elementwise a - b (same shape).
SymTensor subtract(const SymTensor& a, const SymTensor& b);
SymTensor scaled(const SymTensor& a, double c);
/// lambda * x^m.
SymTensor rank_one(double lambda, const Vector& x, int order);
/// Drops entries with |a| <= threshold.
SymTensor pruned(const SymTensor& a, double threshold);

std::vector<Disk> gershgorin_disks(const SymTensor& a);

/// Adjacency tensor of a k-uniform hypergraph on n vertices (0-based).
/// `k` = 0 infers the uniformity from the first edge; an empty edge list with
/// k = 0 yields a zero matrix.
SymTensor hypergraph_adjacency(const std::vector<std::vector<int>>& edges,
                               int n, int k = 0);

RepDigraph representation_digraph(const SymTensor& a);
RepDigraph representation_digraph(const GenTensor& a);
bool is_weakly_irreducible(const SymTensor& a);
bool is_weakly_irreducible(const GenTensor& a);

bool is_nonnegative(const SymTensor& a);
bool is_nonnegative(const GenTensor& a);

double max_abs_entry(const SymTensor& a);

}  // namespace tensorspec
