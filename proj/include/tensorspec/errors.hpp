#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tensorspec {

/// Operand shapes do not fit together (vector length, matrix size, order).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input violates a documented precondition. Carries every violation found,
/// not only the first one.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// An iterative or elimination solver could not produce a usable result.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tensorspec
