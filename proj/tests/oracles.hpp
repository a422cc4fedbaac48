// test-only independent oracles; these deliberately avoid the eigenbasis route
#pragma once

#include <Eigen/Cholesky>

#include "gtlab/calculus.hpp"
#include "gtlab/matcore.hpp"

namespace gtlab::testing {

// log A as the operator-monotone integral int_0^inf ((t+1)^-1 I - (A+t)^-1) dt,
// discretized with t = u/(1-u) on a Gauss-Legendre rule. Valid to ~1e-6 relative
// for condition(A) <= 1e3 with O(1) spectra at 64 nodes.
inline ComplexMatrix matrix_log_quadrature(const PositiveDefiniteMatrix& a,
                                           const QuadratureRule& rule) {
  const int n = a.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (int q = 0; q < rule.node_count(); ++q) {
    const double u = rule.nodes()[static_cast<size_t>(q)];
    const double t = u / (1.0 - u);
    const double w = rule.weights()[static_cast<size_t>(q)] / ((1.0 - u) * (1.0 - u));
    Eigen::LLT<ComplexMatrix> llt(a.mat() + t * id);
    acc += w * ((1.0 / (t + 1.0)) * id - llt.solve(id));
  }
  return acc;
}

}  // namespace gtlab::testing
