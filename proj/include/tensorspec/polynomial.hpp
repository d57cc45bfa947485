#pragma once

#include <complex>
#include <vector>

namespace tensorspec {

/// Real univariate polynomial, coefficients in ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> ascending);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<double>& coefficients() const { return coeffs_; }
  double coefficient(int k) const {
    return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : 0.0;
  }

  double operator()(double t) const;
  std::complex<double> operator()(std::complex<double> t) const;

  /// Roots via eigenvalues of the companion matrix of the monic polynomial.
  /// Empty for constants.
  std::vector<std::complex<double>> roots() const;

 private:
  std::vector<double> coeffs_;
};

/// Characteristic polynomial det(t I - M) of a square matrix, by the
/// division-free Berkowitz recursion.
Polynomial characteristic_polynomial(const std::vector<std::vector<double>>& m);

}  // namespace tensorspec
