// shared helpers for the unit tests
#pragma once

#include <complex>
#include <initializer_list>

#include "gtlab/matcore.hpp"
#include "gtlab/randgen.hpp"

namespace gtlab::testing {

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline ComplexMatrix diag(std::initializer_list<double> values) {
  const int n = static_cast<int>(values.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  int i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

inline double rel_err(const ComplexMatrix& got, const ComplexMatrix& want) {
  const double denom = std::max(want.norm(), 1e-300);
  return (got - want).norm() / denom;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace gtlab::testing
