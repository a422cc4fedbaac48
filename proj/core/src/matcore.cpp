#include "gtlab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace gtlab {

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return unitary * eigenvalues.cast<Complex>().asDiagonal() * unitary.adjoint();
}

double condition_estimate(const ComplexMatrix& m) {
  // Gershgorin bounds on |lambda|; crude but solver-independent.
  double upper = 0.0;
  double lower = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double radius = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) radius += std::abs(m(i, j));
    const double center = std::abs(m(i, i));
    upper = std::max(upper, center + radius);
    lower = std::min(lower, std::max(0.0, center - radius));
  }
  if (lower <= 0.0) return 1e300;
  return upper / lower;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw ValidationError("HermitianMatrix: input is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected square");
  if (!all_finite(m)) throw ValidationError("HermitianMatrix: input has non-finite entries");
  const double dev = (m - m.adjoint().eval()).cwiseAbs().maxCoeff(); // 0x0 handled below
  const double gate = tol::kHermitian * std::max(1.0, m.norm());
  if (m.rows() > 0 && dev > gate) {
    std::ostringstream os;
    os << "HermitianMatrix: max |M - M*| = " << dev << " exceeds tolerance " << gate;
    throw ValidationError(os.str());
  }
  mat_ = 0.5 * (m + m.adjoint().eval());
}

SpectralDecomposition hermitian_eig(const HermitianMatrix& m) {
  const int n = m.dim();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.mat());
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "hermitian_eig: eigensolver did not converge for dim " << n
       << " matrix (condition estimate " << condition_estimate(m.mat()) << ")";
    throw NumericalError(os.str());
  }
  SpectralDecomposition d{solver.eigenvalues(), solver.eigenvectors()};
  const double ortho =
      (d.unitary.adjoint() * d.unitary - ComplexMatrix::Identity(n, n)).norm();
  const double recon = (d.reconstruct() - m.mat()).norm();
  const double recon_gate = tol::kRecon * std::max(1.0, m.mat().norm());
  if (ortho > tol::kOrtho || recon > recon_gate) {
    std::ostringstream os;
    os << "hermitian_eig: decomposition residuals out of contract for dim " << n
       << " (ortho " << ortho << ", recon " << recon << ", condition estimate "
       << condition_estimate(m.mat()) << ")";
    throw NumericalError(os.str());
  }
  return d;
}

PositiveDefiniteMatrix::PositiveDefiniteMatrix(const HermitianMatrix& h) {
  SpectralDecomposition d = hermitian_eig(h);
  const double floor = tol::pd_floor(h.mat().norm());
  if (h.dim() == 0 || d.eigenvalues(0) <= floor) {
    std::ostringstream os;
    os << "PositiveDefiniteMatrix: smallest eigenvalue "
       << (h.dim() ? d.eigenvalues(0) : 0.0) << " is at or below the pd floor " << floor;
    throw ValidationError(os.str());
  }
  mat_ = h.mat();
  min_eig_ = d.eigenvalues(0);
  eig_ = std::move(d);
}

PositiveDefiniteMatrix PositiveDefiniteMatrix::from_eigenpairs(ComplexMatrix unitary,
                                                               RealVector eigenvalues) {
  const int n = static_cast<int>(eigenvalues.size());
  if (unitary.rows() != n || unitary.cols() != n)
    throw ValidationError("from_eigenpairs: unitary/eigenvalue sizes disagree");
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return eigenvalues(a) < eigenvalues(b); });

  PositiveDefiniteMatrix a;
  a.eig_.eigenvalues.resize(n);
  a.eig_.unitary.resize(n, n);
  for (int j = 0; j < n; ++j) {
    a.eig_.eigenvalues(j) = eigenvalues(order[static_cast<size_t>(j)]);
    a.eig_.unitary.col(j) = unitary.col(order[static_cast<size_t>(j)]);
  }
  ComplexMatrix m = a.eig_.reconstruct();
  a.mat_ = 0.5 * (m + m.adjoint().eval());
  a.min_eig_ = a.eig_.eigenvalues(0);

  if (!all_finite(a.mat_)) throw NumericalError("from_eigenpairs: non-finite reconstruction");
  const double floor = tol::pd_floor(a.mat_.norm());
  if (n == 0 || a.min_eig_ <= floor) {
    std::ostringstream os;
    os << "from_eigenpairs: smallest eigenvalue " << a.min_eig_
       << " is at or below the pd floor " << floor;
    throw ValidationError(os.str());
  }
  return a;
}

PositiveDefiniteMatrix matrix_exp(const HermitianMatrix& m) {
  SpectralDecomposition d = hermitian_eig(m);
  const double top = m.dim() ? d.eigenvalues(m.dim() - 1) : 0.0;
  if (top > tol::kOverflowGuard) {
    std::ostringstream os;
    os << "matrix_exp: eigenvalue " << top << " exceeds the overflow guard "
       << tol::kOverflowGuard << "; rescale the input";
    throw NumericalError(os.str());
  }
  RealVector expd = d.eigenvalues.array().exp();
  return PositiveDefiniteMatrix::from_eigenpairs(std::move(d.unitary), std::move(expd));
}

HermitianMatrix matrix_log(const PositiveDefiniteMatrix& a) {
  const SpectralDecomposition& d = a.eig();
  RealVector logd = d.eigenvalues.array().log();
  ComplexMatrix m = d.unitary * logd.cast<Complex>().asDiagonal() * d.unitary.adjoint();
  return HermitianMatrix(m);
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  ComplexMatrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("operator_norm: eigensolver failed on M*M (dim " +
                         std::to_string(gram.rows()) + ")");
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double trace_real(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw ValidationError("trace_real: matrix is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected square");
  return m.trace().real();
}

}  // namespace gtlab
