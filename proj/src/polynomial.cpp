#include "tensorspec/polynomial.hpp"

#include <Eigen/Dense>

#include "tensorspec/errors.hpp"

namespace tensorspec {

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double t) const {
  double r = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * t + *it;
  return r;
}

std::complex<double> Polynomial::operator()(std::complex<double> t) const {
  std::complex<double> r = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * t + *it;
  return r;
}

std::vector<std::complex<double>> Polynomial::roots() const {
  const int d = degree();
  if (d < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  const double lead = coeffs_.back();
  for (int i = 0; i < d; ++i) companion(0, i) = -coeffs_[d - 1 - i] / lead;
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw SolverError("companion eigenvalue iteration did not converge");
  }
  std::vector<std::complex<double>> out(d);
  for (int i = 0; i < d; ++i) out[i] = solver.eigenvalues()[i];
  return out;
}

Polynomial characteristic_polynomial(const std::vector<std::vector<double>>& a) {
  // Berkowitz: build the coefficient vector of det(tI - A) by bordering the
  // leading principal submatrices one row/column at a time.
  const int n = static_cast<int>(a.size());
  std::vector<double> c{1.0};  // descending coefficients of the 0x0 case
  for (int r = 0; r < n; ++r) {
    // Submatrix A_r = a[0..r-1][0..r-1], row R = a[r][0..r-1],
    // column C = a[0..r-1][r], corner a[r][r].
    std::vector<double> toeplitz_col(r + 2, 0.0);
    toeplitz_col[0] = 1.0;
    toeplitz_col[1] = -a[r][r];
    std::vector<double> v(r);
    for (int i = 0; i < r; ++i) v[i] = a[i][r];
    for (int k = 2; k <= r + 1; ++k) {
      double dot = 0.0;
      for (int i = 0; i < r; ++i) dot += a[r][i] * v[i];
      toeplitz_col[k] = -dot;
      std::vector<double> next(r, 0.0);
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) next[i] += a[i][j] * v[j];
      }
      v = std::move(next);
    }
    std::vector<double> nc(r + 2, 0.0);
    for (int i = 0; i < r + 2; ++i) {
      for (int j = 0; j <= i && j < static_cast<int>(c.size()); ++j) {
        nc[i] += toeplitz_col[i - j] * c[j];
      }
    }
    c = std::move(nc);
  }
  return Polynomial(std::vector<double>(c.rbegin(), c.rend()));
}

}  // namespace tensorspec
