#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "tensorspec/polynomial.hpp"
#include "tensorspec/tensor.hpp"

namespace tensorspec {

enum class EigenKind { H, N, Z, Unclassified };

std::string_view to_string(EigenKind kind);

struct EigenPair {
  std::complex<double> lambda;
  /// Unit eigenvector with its first nonzero component positive. Absent for
  /// N-eigenvalues and complex eigenvalues.
  std::optional<Vector> vector;
  EigenKind kind = EigenKind::Unclassified;
  int multiplicity = 1;
  /// ||A x^{m-1} - lambda x^{[m-1]}|| for H pairs, ||A x^{m-1} - lambda x||
  /// for Z pairs, NaN when there is no vector.
  double residual = 0.0;
};

struct ZSpectrum {
  std::vector<EigenPair> pairs;
  /// Every unit vector is an eigenvector (the angle residual vanishes
  /// identically); `pairs` then holds one representative per axis.
  bool degenerate = false;
};

enum class PDClass {
  PositiveDefinite,
  PositiveSemidefinite,
  Indefinite,
  CertifiedPD,
  Indeterminate,
};
enum class PDMethod { ExactSpectrum, Gershgorin };

std::string_view to_string(PDClass c);
std::string_view to_string(PDMethod m);

struct PDVerdict {
  PDClass classification = PDClass::Indeterminate;
  /// A vector with A x^m <= 0, present when the form is indefinite.
  std::optional<Vector> witness;
  PDMethod method = PDMethod::ExactSpectrum;
  /// Smallest Z-eigenvalue (exact path) or smallest center - radius (disk path).
  double margin = 0.0;
};

/// Flips x so its first nonzero component is positive.
Vector canonical_sign(Vector x);

/// ||A x^{m-1} - lambda x^{[m-1]}||.
double h_residual(const SymTensor& a, double lambda, const Vector& x);
/// ||A x^{m-1} - lambda x||.
double z_residual(const SymTensor& a, double lambda, const Vector& x);

/// Sylvester matrix S of the binary forms (A x^{m-1})_1, (A x^{m-1})_2 in
/// descending powers of x1. Subtracting lambda on the diagonal yields the
/// Sylvester matrix of the eigen-equations, so det(lambda I - S) is the
/// characteristic polynomial.
Matrix sylvester_matrix_2d(const SymTensor& a);

/// Monic characteristic polynomial of an n = 2 tensor, degree 2(m-1).
Polynomial char_poly_2d(const SymTensor& a);

/// Resultant of A x^{m-1} = 0 for n = 2, normalized so the product of all
/// eigenvalues equals it.
double sym_hyperdet_2d(const SymTensor& a);

/// All 2(m-1) eigenvalues of an n = 2 tensor, clustered into distinct values
/// with multiplicities, classified H / N (real) or unclassified (complex).
std::vector<EigenPair> h_spectrum_2d(const SymTensor& a, double tol = 1e-10);

/// All Z-eigenpairs of a tensor with n <= 3. Residuals are bounded by
/// tol * max(1, ||A||_F). Antipodal eigenvectors are reported once.
ZSpectrum z_spectrum_small(const SymTensor& a, double tol = 1e-10);

/// Positive-definiteness of an even-order form: exact for n <= 3, disk-based
/// sufficient test above that.
PDVerdict pd_check(const SymTensor& a, double tol = 1e-10);

/// Orders pairs by descending Re(lambda), then Im(lambda), then descending
/// lexicographic eigenvector.
void sort_pairs(std::vector<EigenPair>& pairs);

}  // namespace tensorspec
