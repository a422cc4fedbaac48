#include "gtlab/calculus.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gtlab {

QuadratureRule::QuadratureRule(int node_count) {
  if (node_count < 1) throw ValidationError("QuadratureRule: node_count must be >= 1");
  nodes_.resize(static_cast<size_t>(node_count));
  weights_.resize(static_cast<size_t>(node_count));
  // Newton iteration on Legendre polynomials over [-1,1], then map to [0,1].
  const int n = node_count;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[static_cast<size_t>(i)] = 0.5 * (1.0 - x);  // mirror: ascending u
    nodes_[static_cast<size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
    weights_[static_cast<size_t>(i)] = 0.5 * w;
    weights_[static_cast<size_t>(n - 1 - i)] = 0.5 * w;
  }
}

double dd_log(double a, double b) {
  const double r = (a - b) / (a + b);
  double ratio;  // atanh(r)/r
  if (std::abs(r) < tol::kDDSeriesSwitch) {
    const double r2 = r * r;
    ratio = 1.0 + r2 / 3.0 + r2 * r2 / 5.0;
  } else {
    ratio = std::atanh(r) / r;
  }
  return 2.0 / (a + b) * ratio;
}

double dd_exp(double a, double b) {
  const double d = 0.5 * (a - b);
  double ratio;  // sinh(d)/d
  if (std::abs(d) < tol::kDDSeriesSwitch) {
    const double d2 = d * d;
    ratio = 1.0 + d2 / 6.0 + d2 * d2 / 120.0;
  } else {
    ratio = std::sinh(d) / d;
  }
  return std::exp(0.5 * (a + b)) * ratio;
}

namespace {

void require_same_dim(const char* op, int a, int b) {
  if (a != b) {
    std::ostringstream os;
    os << op << ": dimension mismatch (" << a << " vs " << b << ")";
    throw ValidationError(os.str());
  }
}

// U (f-scaled U* B U) U* with scale(i,j) applied entrywise in the eigenbasis.
template <typename Scale>
ComplexMatrix eigenbasis_map(const SpectralDecomposition& d, const ComplexMatrix& b,
                             Scale&& scale) {
  ComplexMatrix bt = d.unitary.adjoint() * b * d.unitary;
  for (Eigen::Index j = 0; j < bt.cols(); ++j)
    for (Eigen::Index i = 0; i < bt.rows(); ++i)
      bt(i, j) *= scale(d.eigenvalues(i), d.eigenvalues(j));
  return d.unitary * bt * d.unitary.adjoint();
}

}  // namespace

ComplexMatrix frechet_log(const PositiveDefiniteMatrix& a, const ComplexMatrix& b) {
  if (b.rows() != b.cols()) throw ValidationError("frechet_log: direction must be square");
  require_same_dim("frechet_log", a.dim(), static_cast<int>(b.rows()));
  return eigenbasis_map(a.eig(), b, [](double x, double y) { return dd_log(x, y); });
}

ComplexMatrix frechet_log_quadrature(const PositiveDefiniteMatrix& a, const ComplexMatrix& b,
                                     const QuadratureRule& rule) {
  if (b.rows() != b.cols())
    throw ValidationError("frechet_log_quadrature: direction must be square");
  require_same_dim("frechet_log_quadrature", a.dim(), static_cast<int>(b.rows()));
  const int n = a.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (int q = 0; q < rule.node_count(); ++q) {
    const double u = rule.nodes()[static_cast<size_t>(q)];
    const double t = u / (1.0 - u);
    const double w = rule.weights()[static_cast<size_t>(q)] / ((1.0 - u) * (1.0 - u));
    Eigen::LLT<ComplexMatrix> llt(a.mat() + t * id);
    if (llt.info() != Eigen::Success)
      throw NumericalError("frechet_log_quadrature: resolvent factorization failed");
    const ComplexMatrix resolvent = llt.solve(id);
    acc.noalias() += w * (resolvent * b * resolvent);
  }
  return acc;
}

ComplexMatrix frechet_exp(const HermitianMatrix& c, const ComplexMatrix& d) {
  if (d.rows() != d.cols()) throw ValidationError("frechet_exp: direction must be square");
  require_same_dim("frechet_exp", c.dim(), static_cast<int>(d.rows()));
  SpectralDecomposition dec = hermitian_eig(c);
  return eigenbasis_map(dec, d, [](double x, double y) { return dd_exp(x, y); });
}

double q_form(const PositiveDefiniteMatrix& x, const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw ValidationError("q_form: h must be square");
  require_same_dim("q_form", x.dim(), static_cast<int>(h.rows()));
  const SpectralDecomposition& d = x.eig();
  ComplexMatrix ht = d.unitary.adjoint() * h * d.unitary;
  double q = 0.0;
  for (Eigen::Index j = 0; j < ht.cols(); ++j)
    for (Eigen::Index i = 0; i < ht.rows(); ++i)
      q += std::norm(ht(i, j)) * dd_log(d.eigenvalues(i), d.eigenvalues(j));
  return q;
}

namespace detail {

TrialReport finite_quotient_check(std::string suite, bool convex,
                                  const std::function<double(double)>& value_at,
                                  double f_base, double f_direction,
                                  std::span<const double> t_grid) {
  if (t_grid.empty())
    throw ValidationError("finite_quotient_check: empty t grid");
  for (double t : t_grid)
    if (!(t > 0.0 && t <= 1.0))
      throw ValidationError("finite_quotient_check: t values must lie in (0,1]");
  bool first = true;
  double worst = 0.0;
  for (double t : t_grid) {
    const double quotient = (value_at(t) - f_base) / t;
    if (first) {
      worst = quotient;
      first = false;
    } else {
      worst = convex ? std::max(worst, quotient) : std::min(worst, quotient);
    }
  }
  // convex: worst quotient <= f(direction); concave: worst quotient >= f(direction)
  return convex ? inequality_report(std::move(suite), worst, f_direction)
                : inequality_report(std::move(suite), f_direction, worst);
}

}  // namespace detail

TrialReport check_dq_inequality(const PositiveDefiniteMatrix& x, const ComplexMatrix& h,
                                const PositiveDefiniteMatrix& y, const ComplexMatrix& k,
                                std::span<const double> t_grid) {
  require_same_dim("check_dq_inequality", x.dim(), y.dim());
  require_same_dim("check_dq_inequality", x.dim(), static_cast<int>(h.rows()));
  require_same_dim("check_dq_inequality", x.dim(), static_cast<int>(k.rows()));
  const double q_base = q_form(x, h);
  const double q_dir = q_form(y, k);
  auto value_at = [&](double t) {
    // x + t y stays positive definite for y PD; the constructor asserts it.
    PositiveDefiniteMatrix xt(HermitianMatrix(x.mat() + t * y.mat()));
    return q_form(xt, h + t * k);
  };
  TrialReport r =
      detail::finite_quotient_check("q-quotient", /*convex=*/true, value_at, q_base, q_dir, t_grid);
  r.n = r.m = x.dim();
  r.k = 1;
  return r;
}

TrialReport check_homogeneous_convex_quotient(std::string_view form, const QPoint& base,
                                              const QPoint& direction,
                                              std::span<const double> t_grid) {
  if (form != "q")
    throw ValidationError("check_homogeneous_convex_quotient: unregistered form '" +
                          std::string(form) + "' for (x,h) points; registered: q");
  TrialReport r = check_dq_inequality(base.x, base.h, direction.x, direction.h, t_grid);
  r.suite = "q";
  return r;
}

}  // namespace gtlab
