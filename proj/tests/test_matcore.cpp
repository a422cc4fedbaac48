#include <cmath>

#include "doctest.h"
#include "gtlab/matcore.hpp"
#include "gtlab/randgen.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace gtlab;
using namespace gtlab::testing;

TEST_CASE("hermitian_eig on diagonal and Pauli-x inputs") {
  {
    SpectralDecomposition d = hermitian_eig(HermitianMatrix(diag({3.0, 1.0})));
    CHECK(d.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(d.eigenvalues(1) == doctest::Approx(3.0));
    // already diagonal: the unitary is a permutation
    for (int j = 0; j < 2; ++j) {
      double col_max = 0;
      for (int i = 0; i < 2; ++i) col_max = std::max(col_max, std::abs(d.unitary(i, j)));
      CHECK(col_max == doctest::Approx(1.0));
    }
  }
  {
    SpectralDecomposition d =
        hermitian_eig(HermitianMatrix(mat2(0.0, 1.0, 1.0, 0.0)));
    CHECK(d.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(d.eigenvalues(1) == doctest::Approx(1.0));
  }
}

TEST_CASE("hermitian_eig reconstructs a random 5x5 input") {
  RandomStream s(101);
  HermitianMatrix m = rand_hermitian(5, 3.0, s);
  SpectralDecomposition d = hermitian_eig(m);
  CHECK((d.reconstruct() - m.mat()).norm() <= tol::kRecon * std::max(1.0, m.mat().norm()));
  CHECK((d.unitary.adjoint() * d.unitary - ComplexMatrix::Identity(5, 5)).norm() <=
        tol::kOrtho);
  for (int i = 0; i + 1 < 5; ++i) CHECK(d.eigenvalues(i) <= d.eigenvalues(i + 1));
}

TEST_CASE("matrix_exp basics") {
  CHECK(rel_err(matrix_exp(HermitianMatrix::zero(3)).mat(), ComplexMatrix::Identity(3, 3)) <
        1e-15);
  CHECK(rel_err(matrix_exp(HermitianMatrix(diag({0.0, std::log(2.0)}))).mat(),
                diag({1.0, 2.0})) < 1e-14);
}

TEST_CASE("matrix_log inverts matrix_exp to 1e-10 relative") {
  RandomStream s(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = s.uniform_int(1, 6);
    HermitianMatrix m = rand_hermitian(n, 10.0, s);
    HermitianMatrix back = matrix_log(matrix_exp(m));
    CHECK((back.mat() - m.mat()).norm() <= 1e-10 * std::max(1.0, m.mat().norm()));
  }
}

TEST_CASE("matrix_log basics and quadrature oracle agreement") {
  CHECK(matrix_log(PositiveDefiniteMatrix(ComplexMatrix::Identity(4, 4))).mat().norm() <
        1e-14);
  const double e = std::exp(1.0);
  CHECK(rel_err(matrix_log(PositiveDefiniteMatrix(diag({e, e * e}))).mat(),
                diag({1.0, 2.0})) < 1e-14);

  // truncated integral-representation oracle, condition <= 1e3 ensemble
  QuadratureRule rule(64);
  RandomStream s(12);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = s.uniform_int(2, 6);
    PositiveDefiniteMatrix a = rand_pd(n, 1000.0, s);
    CHECK(rel_err(matrix_log_quadrature(a, rule), matrix_log(a).mat()) < 1e-6);
  }
}

TEST_CASE("operator_norm examples") {
  CHECK(operator_norm(ComplexMatrix::Identity(3, 3)) == doctest::Approx(1.0));
  CHECK(operator_norm(ComplexMatrix::Zero(2, 5)) == doctest::Approx(0.0));
  CHECK(operator_norm(mat2(0.0, 2.0, 0.0, 0.0)) == doctest::Approx(2.0));
}

TEST_CASE("trace_real examples") {
  CHECK(trace_real(ComplexMatrix::Identity(4, 4)) == doctest::Approx(4.0));
  CHECK(trace_real(mat2(1.0, 5.0, 7.0, 2.0)) == doctest::Approx(3.0));
  // Tr(e^L e^B) with L = [[0,1],[1,0]], B = diag(1,-1)
  const double got = trace_real(matrix_exp(HermitianMatrix(mat2(0, 1, 1, 0))).mat() *
                                matrix_exp(HermitianMatrix(diag({1.0, -1.0}))).mat());
  CHECK(got == doctest::Approx(4.7621956910836315).epsilon(1e-13));  // 2 cosh^2(1)
}

TEST_CASE("unitary conjugation covariance of matrix_exp") {
  RandomStream s(55);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = s.uniform_int(1, 6);
    HermitianMatrix m = rand_hermitian(n, 3.0, s);
    ComplexMatrix v = rand_unitary(n, s);
    ComplexMatrix lhs = matrix_exp(HermitianMatrix(v * m.mat() * v.adjoint())).mat();
    ComplexMatrix rhs = v * matrix_exp(m).mat() * v.adjoint();
    CHECK(rel_err(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("spectral sandwich for the trace of the exponential") {
  RandomStream s(77);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = s.uniform_int(1, 6);
    HermitianMatrix m = rand_hermitian(n, 4.0, s);
    SpectralDecomposition d = hermitian_eig(m);
    const double tr = trace_real(matrix_exp(m).mat());
    CHECK(tr >= n * std::exp(d.eigenvalues(0)) - 1e-9 * tr);
    CHECK(tr <= n * std::exp(d.eigenvalues(n - 1)) + 1e-9 * tr);
  }
}

TEST_CASE("operator_norm is submultiplicative on random pairs") {
  RandomStream s(88);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = s.uniform_int(1, 5);
    const int p = s.uniform_int(1, 5);
    const int q = s.uniform_int(1, 5);
    ComplexMatrix a = gaussian_matrix(n, p, s);
    ComplexMatrix b = gaussian_matrix(p, q, s);
    CHECK(operator_norm(a * b) <= operator_norm(a) * operator_norm(b) + 1e-10);
  }
}

TEST_CASE("validation and error paths") {
  // non-Hermitian beyond tolerance
  CHECK_THROWS_AS(HermitianMatrix(mat2(0.0, 1.0, 0.0, 0.0)), ValidationError);
  // non-square
  CHECK_THROWS_AS(HermitianMatrix(ComplexMatrix::Zero(2, 3)), ValidationError);
  CHECK_THROWS_AS(trace_real(ComplexMatrix::Zero(2, 3)), ValidationError);
  // non-finite entries
  {
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(HermitianMatrix(bad), ValidationError);
  }
  // at-or-below the pd floor, message names the offending eigenvalue
  try {
    PositiveDefiniteMatrix reject(diag({1.0, -0.25}));
    FAIL("expected rejection");
  } catch (const ValidationError& err) {
    CHECK(std::string(err.what()).find("-0.25") != std::string::npos);
  }
  // overflow guard on exp
  CHECK_THROWS_AS(matrix_exp(HermitianMatrix(diag({800.0}))), NumericalError);
  CHECK_NOTHROW(matrix_exp(HermitianMatrix(diag({600.0}))));
}

TEST_CASE("hermitian symmetrization is exact") {
  // entries within tolerance of Hermitian get averaged to an exactly Hermitian form
  ComplexMatrix near = mat2(1.0, Complex(0.5, 1e-12), Complex(0.5, -3e-12), 2.0);
  HermitianMatrix h(near);
  CHECK((h.mat() - h.mat().adjoint().eval()).norm() == 0.0);
}
