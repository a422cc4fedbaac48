#include <cmath>

#include "doctest.h"
#include "gtlab/calculus.hpp"
#include "gtlab/randgen.hpp"
#include "test_helpers.hpp"

using namespace gtlab;
using namespace gtlab::testing;

TEST_CASE("quadrature rule invariants") {
  for (int n : {1, 8, 64, 200}) {
    QuadratureRule rule(n);
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      CHECK(rule.weights()[i] > 0.0);
      CHECK(rule.nodes()[i] > 0.0);
      CHECK(rule.nodes()[i] < 1.0);
      if (i) CHECK(rule.nodes()[i] > rule.nodes()[i - 1]);
      sum += rule.weights()[i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(QuadratureRule(0), ValidationError);
  // degree-2n-1 exactness spot check: integral of u^7 over [0,1] with 4 nodes
  QuadratureRule r4(4);
  double integral = 0;
  for (int i = 0; i < 4; ++i) integral += r4.weights()[i] * std::pow(r4.nodes()[i], 7);
  CHECK(integral == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("divided differences: stable branches") {
  CHECK(dd_log(2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(dd_log(1.0, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(dd_exp(0.0, 0.0) == doctest::Approx(1.0));
  CHECK(dd_exp(1.0, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(dd_exp(2.0, 0.0) == doctest::Approx(0.5 * (std::exp(2.0) - 1.0)).epsilon(1e-15));

  // |DDlog(a, a+delta) - 1/a| <= delta/a^2 for delta <= 1e-8 a (series branch engaged)
  for (double a : {1e-3, 0.1, 1.0, 42.0, 1e6}) {
    for (double rel : {1e-8, 1e-10, 1e-13}) {
      const double delta = rel * a;
      CHECK(std::abs(dd_log(a, a + delta) - 1.0 / a) <= delta / (a * a));
    }
  }
}

TEST_CASE("frechet_log at the identity is the identity map") {
  RandomStream s(5);
  ComplexMatrix b = gaussian_matrix(4, 4, s);
  PositiveDefiniteMatrix id(ComplexMatrix::Identity(4, 4));
  CHECK(rel_err(frechet_log(id, b), b) < 1e-14);
}

TEST_CASE("frechet_log on diag(1,2) scales the off-diagonal by log 2") {
  PositiveDefiniteMatrix a(diag({1.0, 2.0}));
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 1) = 1.0;
  ComplexMatrix want = ComplexMatrix::Zero(2, 2);
  want(0, 1) = 0.69314718055994531;
  CHECK(rel_err(frechet_log(a, b), want) < 1e-14);
  // the quadrature oracle sees the same value
  CHECK(rel_err(frechet_log_quadrature(a, b, QuadratureRule(64)), want) < 1e-8);
}

TEST_CASE("frechet_log commuting directions reduce to B A^-1") {
  RandomStream s(9);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = s.uniform_int(1, 5);
    PositiveDefiniteMatrix a = rand_pd(n, 50.0, s);
    // B = p(A), a quadratic polynomial of A
    ComplexMatrix b = 0.5 * a.mat() * a.mat() + 2.0 * a.mat() +
                      0.25 * ComplexMatrix::Identity(n, n);
    ComplexMatrix d = frechet_log(a, b);
    CHECK((d * a.mat() - b).norm() <= 1e-9 * std::max(1.0, b.norm()));
  }
}

TEST_CASE("frechet_log_quadrature basics") {
  QuadratureRule rule(64);
  PositiveDefiniteMatrix id(ComplexMatrix::Identity(3, 3));
  CHECK(rel_err(frechet_log_quadrature(id, ComplexMatrix::Identity(3, 3), rule),
                ComplexMatrix::Identity(3, 3)) < 1e-8);

  PositiveDefiniteMatrix a(diag({1.0, 4.0}));
  ComplexMatrix ones = ComplexMatrix::Ones(2, 2);
  CHECK(rel_err(frechet_log_quadrature(a, ones, rule), frechet_log(a, ones)) < 1e-6);

  PositiveDefiniteMatrix two(diag({2.0}));
  ComplexMatrix three(1, 1);
  three(0, 0) = 3.0;
  CHECK(std::abs(frechet_log_quadrature(two, three, rule)(0, 0).real() - 1.5) < 1e-8);
}

TEST_CASE("frechet_exp basics and the inverse-map identity") {
  RandomStream s(21);
  ComplexMatrix d0 = gaussian_matrix(3, 3, s);
  CHECK(rel_err(frechet_exp(HermitianMatrix::zero(3), d0), d0) < 1e-14);

  HermitianMatrix c1(diag({1.0}));
  ComplexMatrix d1(1, 1);
  d1(0, 0) = 2.0;
  CHECK(frechet_exp(c1, d1)(0, 0).real() == doctest::Approx(2.0 * std::exp(1.0)));

  for (int trial = 0; trial < 15; ++trial) {
    const int n = s.uniform_int(1, 6);
    HermitianMatrix c = rand_hermitian(n, 3.0, s);
    HermitianMatrix d = rand_hermitian(n, 3.0, s);
    ComplexMatrix recovered = frechet_log(matrix_exp(c), frechet_exp(c, d.mat()));
    CHECK(rel_err(recovered, d.mat()) < 1e-9);
  }
}

TEST_CASE("frechet_log agrees with central finite differences") {
  RandomStream s(33);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = s.uniform_int(2, 5);
    PositiveDefiniteMatrix a = rand_pd(n, 100.0, s);
    HermitianMatrix b = rand_hermitian(n, 1.0, s);
    const double eps = 1e-5 * operator_norm(a.mat()) / operator_norm(b.mat());
    PositiveDefiniteMatrix ap(HermitianMatrix(a.mat() + eps * b.mat()));
    PositiveDefiniteMatrix am(HermitianMatrix(a.mat() - eps * b.mat()));
    ComplexMatrix fd = (matrix_log(ap).mat() - matrix_log(am).mat()) / (2 * eps);
    CHECK(rel_err(fd, frechet_log(a, b.mat())) < 1e-4);
  }
}

TEST_CASE("q_form examples and properties") {
  // scalar: Q(2,3) = 9/2
  PositiveDefiniteMatrix two(diag({2.0}));
  ComplexMatrix three(1, 1);
  three(0, 0) = 3.0;
  CHECK(q_form(two, three) == doctest::Approx(4.5).epsilon(1e-15));

  RandomStream s(44);
  // x = identity: Q = ||h||_F^2
  {
    ComplexMatrix h = gaussian_matrix(4, 4, s);
    PositiveDefiniteMatrix id(ComplexMatrix::Identity(4, 4));
    CHECK(q_form(id, h) == doctest::Approx(h.squaredNorm()).epsilon(1e-12));
  }
  // oracle equivalence: Q(x,h) = Re Tr h^* dlog(x)h via quadrature
  QuadratureRule rule(64);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = s.uniform_int(1, 5);
    PositiveDefiniteMatrix x = rand_pd(n, 100.0, s);
    ComplexMatrix h = gaussian_matrix(n, n, s);
    const double via_quad = trace_real(h.adjoint() * frechet_log_quadrature(x, h, rule));
    CHECK(rel_err(q_form(x, h), via_quad) < 1e-6);
  }
  // positivity and degree-1 homogeneity, dims <= 8
  for (int trial = 0; trial < 50; ++trial) {
    const int n = s.uniform_int(1, 8);
    PositiveDefiniteMatrix x = rand_pd(n, 100.0, s);
    ComplexMatrix h = gaussian_matrix(n, n, s);
    const double q = q_form(x, h);
    CHECK(q >= -1e-12);
    const double scale = s.uniform_range(0.1, 10.0);
    PositiveDefiniteMatrix xs(HermitianMatrix(scale * x.mat()));
    CHECK(rel_err(q_form(xs, scale * h), scale * q) < 1e-10);
  }
  // midpoint joint convexity
  for (int trial = 0; trial < 50; ++trial) {
    const int n = s.uniform_int(1, 8);
    PositiveDefiniteMatrix x1 = rand_pd(n, 100.0, s), x2 = rand_pd(n, 100.0, s);
    ComplexMatrix h1 = gaussian_matrix(n, n, s), h2 = gaussian_matrix(n, n, s);
    PositiveDefiniteMatrix mid(HermitianMatrix(0.5 * (x1.mat() + x2.mat())));
    const double lhs = q_form(mid, 0.5 * (h1 + h2));
    const double rhs = 0.5 * (q_form(x1, h1) + q_form(x2, h2));
    CHECK(lhs <= rhs + 1e-10 * (1.0 + lhs + rhs));
  }
}

TEST_CASE("check_dq_inequality edge and random cases") {
  // x=y, h=k, t=1: homogeneity makes the quotient an exact equality
  PositiveDefiniteMatrix x(diag({1.0, 3.0}));
  RandomStream s(66);
  ComplexMatrix h = gaussian_matrix(2, 2, s);
  const double grid1[] = {1.0};
  TrialReport r = check_dq_inequality(x, h, x, h, grid1);
  CHECK(r.pass);
  CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-12));

  // scalar x=1, h=0, y=1, k=1, t=1: quotient 1/2 <= Q(1,1) = 1
  PositiveDefiniteMatrix one(diag({1.0}));
  ComplexMatrix zero1 = ComplexMatrix::Zero(1, 1);
  ComplexMatrix one1 = ComplexMatrix::Identity(1, 1);
  TrialReport r2 = check_dq_inequality(one, zero1, one, one1, grid1);
  CHECK(r2.lhs == doctest::Approx(0.5));
  CHECK(r2.rhs == doctest::Approx(1.0));
  CHECK(r2.pass);

  // random trials over the default grid
  for (int trial = 0; trial < 100; ++trial) {
    const int n = s.uniform_int(1, 5);
    PositiveDefiniteMatrix xx = rand_pd(n, 100.0, s), yy = rand_pd(n, 100.0, s);
    ComplexMatrix hh = gaussian_matrix(n, n, s), kk = gaussian_matrix(n, n, s);
    CHECK(check_dq_inequality(xx, hh, yy, kk).pass);
  }

  // t grid validation
  const double bad_grid[] = {0.0};
  CHECK_THROWS_AS(check_dq_inequality(x, h, x, h, bad_grid), ValidationError);
  const double bad_grid2[] = {1.5};
  CHECK_THROWS_AS(check_dq_inequality(x, h, x, h, bad_grid2), ValidationError);
}

TEST_CASE("registered-form quotient dispatch") {
  PositiveDefiniteMatrix x(diag({1.0, 2.0}));
  RandomStream s(67);
  QPoint base{x, gaussian_matrix(2, 2, s)};
  QPoint dir{rand_pd(2, 10.0, s), gaussian_matrix(2, 2, s)};
  TrialReport r = check_homogeneous_convex_quotient("q", base, dir);
  CHECK(r.pass);
  CHECK(r.suite == "q");
  CHECK_THROWS_AS(check_homogeneous_convex_quotient("nope", base, dir), ValidationError);
}
