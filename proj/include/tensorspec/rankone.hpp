#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tensorspec/power_iter.hpp"
#include "tensorspec/tensor.hpp"

namespace tensorspec {

struct RankOneTerm {
  double lambda = 0.0;
  /// Unit vector, first nonzero component positive.
  Vector x;
  /// Whether the pair came from the exhaustive direct solve (n <= 3), so it
  /// is the true dominant Z-eigenpair.
  bool exact = false;
};

/// Dominant-|lambda| Z-eigenpair. Exact for n <= 3; for larger n a
/// multi-start shifted power method on A and -A without an optimality
/// certificate. Ties: larger |lambda|, then positive lambda, then the
/// lexicographically first vector in descending order (e1 before e2).
RankOneTerm best_rank_one(const SymTensor& a, const IterOptions& opts = {});

/// ||A - lambda x^m||_F computed entrywise.
double rank_one_residual(const SymTensor& a, const RankOneTerm& term);

struct SSBRAResult {
  std::vector<RankOneTerm> terms;
  /// ||A^(k)||_F after each deflation, one per term.
  std::vector<double> residual_norms;
  double initial_norm = 0.0;
  /// Set when the inner eigen-solve failed; `terms` holds what was done.
  std::optional<std::string> failure;
};

/// Successive deflation A^(k+1) = A^(k) - lambda_k (x^(k))^m by the dominant
/// Z-eigenpair, until ||A^(k)||_F <= tol or max_terms terms.
SSBRAResult ssbra(const SymTensor& a, int max_terms, double tol,
                  const IterOptions& opts = {});

/// sum_k lambda_k (x^(k))^m.
SymTensor reconstruct(const SSBRAResult& r, int order, int dim);

/// A^(m,n) with A x^m = (x^T x)^k for m = 2k and (x^T x)^k (sum x_i) for
/// m = 2k + 1.
SymTensor construct_reference_tensor(int m, int n);

struct AppBounds {
  int m = 0;
  int n = 0;
  /// 1 / sqrt(n^{m-1}).
  double lower = 0.0;
  /// rho_Z(A^(m,n)) / ||A^(m,n)||_F from the constructed reference tensor.
  double upper = 0.0;
  /// Known closed form for m <= 4.
  std::optional<double> closed_form_upper;
  /// rho_Z(A^(m,n)): 1 for even m, sqrt(n) for odd m.
  double rho_z = 0.0;
  double reference_norm = 0.0;
};

AppBounds app_bounds(int m, int n);

struct MultilinearOptions {
  int restarts = 32;
  std::uint64_t seed = 0;
  int max_iter = 5000;
  double tol = 1e-15;
};

/// max |A u1 ... um| over unit vectors by alternating maximization from
/// random starts, plus symmetric starts from a sphere grid when n <= 3.
double multilinear_max(const SymTensor& a, const MultilinearOptions& opts = {});

}  // namespace tensorspec
