// matcore.hpp - dense complex matrices, Hermitian eigendecomposition, exp/log calculus
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

#include "gtlab/tolerances.hpp"

namespace gtlab {

using Complex = std::complex<double>;

/// Dense rectangular complex matrix, the universal carrier. Row-major in all
/// serialized forms; entries must be finite wherever a validated type is built.
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input fails a documented precondition (dimension mismatch, non-Hermitian,
/// not positive definite, malformed JSON, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine cannot deliver its contract (eigensolver non-convergence,
/// exponent beyond the overflow guard).
class NumericalError : public Error {
 public:
  using Error::Error;
};

bool all_finite(const ComplexMatrix& m);

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix unitary;  // columns are eigenvectors, in eigenvalue order

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  ComplexMatrix reconstruct() const;
};

/// Square matrix validated to be (numerically) self-adjoint; the stored form is
/// exactly (M + M*)/2, so downstream code may assume exact symmetry.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix zero(int n) { return HermitianMatrix(ComplexMatrix::Zero(n, n)); }
  static HermitianMatrix identity(int n) { return HermitianMatrix(ComplexMatrix::Identity(n, n)); }

  int dim() const { return static_cast<int>(mat_.rows()); }
  const ComplexMatrix& mat() const { return mat_; }

 private:
  ComplexMatrix mat_;
};

/// Hermitian matrix whose smallest eigenvalue exceeds the pd floor. The full
/// spectral decomposition is computed at validation time and cached (the type is
/// immutable, so sharing across threads stays safe).
class PositiveDefiniteMatrix {
 public:
  explicit PositiveDefiniteMatrix(const HermitianMatrix& h);
  explicit PositiveDefiniteMatrix(const ComplexMatrix& m)
      : PositiveDefiniteMatrix(HermitianMatrix(m)) {}

  /// Trusted assembly from known eigenpairs (still applies the pd floor).
  /// Pairs are sorted ascending; the stored matrix is the symmetrized product.
  static PositiveDefiniteMatrix from_eigenpairs(ComplexMatrix unitary, RealVector eigenvalues);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const ComplexMatrix& mat() const { return mat_; }
  double min_eigenvalue() const { return min_eig_; }
  const SpectralDecomposition& eig() const { return eig_; }
  HermitianMatrix hermitian() const { return HermitianMatrix(mat_); }

 private:
  PositiveDefiniteMatrix() = default;

  ComplexMatrix mat_;
  SpectralDecomposition eig_;
  double min_eig_ = 0.0;
};

/// Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Throws NumericalError (with dimension and a Gershgorin condition estimate)
/// if the solver fails or the decomposition misses its residual contract.
SpectralDecomposition hermitian_eig(const HermitianMatrix& m);

/// U diag(exp(lambda)) U*. Throws NumericalError when max lambda > 700.
PositiveDefiniteMatrix matrix_exp(const HermitianMatrix& m);

/// U diag(log(lambda)) U*, inverse of matrix_exp on its range.
HermitianMatrix matrix_log(const PositiveDefiniteMatrix& a);

/// Largest singular value, computed as sqrt of the largest eigenvalue of M*M.
double operator_norm(const ComplexMatrix& m);

/// Real part of the trace. Throws ValidationError on non-square input.
double trace_real(const ComplexMatrix& m);

/// Gershgorin-based condition estimate used in diagnostics (inf -> 1e300 cap).
double condition_estimate(const ComplexMatrix& m);

}  // namespace gtlab
