#pragma once

#include <string>
#include <vector>

#include "tensorspec/power_iter.hpp"
#include "tensorspec/tensor.hpp"

namespace tensorspec {

/// Column-stochastic nonnegative tensor: p_{k1 k2...km} is the probability
/// of state k1 given the previous states k2 (most recent) ... km. Sums over
/// the first index equal 1.
class TransitionTensor {
 public:
  int order() const { return p_.order(); }
  int dim() const { return p_.dim(); }
  const GenTensor& tensor() const { return p_; }

 private:
  friend TransitionTensor validate_transition(const GenTensor& t);
  explicit TransitionTensor(GenTensor p) : p_(std::move(p)) {}
  GenTensor p_;
};

/// Checks entries in [0, 1] and first-index sums equal to 1 within 1e-10;
/// throws ValidationError listing every violation.
TransitionTensor validate_transition(const GenTensor& t);

/// Throws ValidationError unless x >= 0 and sum(x) = 1 within 1e-12.
void check_prob_vec(const Vector& x);

/// x_i = sum p_{i k2...km} h[0]_{k2} ... h[m-2]_{km}, with h[0] the most
/// recent distribution.
Vector evolve(const TransitionTensor& p, const std::vector<Vector>& history);

/// ||P x^{m-1} - x||_1.
double fixed_point_residual(const TransitionTensor& p, const Vector& x);

enum class StationaryStatus { Converged, Cycling, MaxIter };
std::string to_string(StationaryStatus s);

struct StationaryResult {
  Vector x_star;
  double residual = 0.0;
  int iterations = 0;
  StationaryStatus status = StationaryStatus::MaxIter;
};

/// Power iteration y <- P y^{m-1} from x0 (uniform when empty) until
/// ||y_{k+1} - y_k||_1 <= tol.
StationaryResult stationary_power(const TransitionTensor& p, const Vector& x0,
                                  const IterOptions& opts = {});
StationaryResult stationary_power(const TransitionTensor& p,
                                  const IterOptions& opts = {});

struct SimulationResult {
  /// Distributions x^(t) produced after the initial history, oldest first.
  std::vector<Vector> trajectory;
  /// ||x^(T) - x^(T-1)||_1 at the last step; observed, not a guarantee.
  double last_change = 0.0;
};

/// Runs the full-history chain for `steps` steps from the given history
/// (most recent first) with a sliding window.
SimulationResult simulate(const TransitionTensor& p, std::vector<Vector> history,
                          int steps);

}  // namespace tensorspec
