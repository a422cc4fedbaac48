#include "gtlab/inequalities.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

namespace gtlab {

namespace {

void require_exact(const char* op, const ContractionTuple& tuple) {
  if (tuple.resolution() != Resolution::exact)
    throw ValidationError(std::string(op) + ": exact resolution required");
}

void require_list_size(const char* op, const ContractionTuple& tuple, size_t got) {
  if (static_cast<int>(got) != tuple.k())
    throw ValidationError(std::string(op) + ": expected " + std::to_string(tuple.k()) +
                          " inputs, got " + std::to_string(got));
}

void set_dims(TrialReport& r, const ContractionTuple& tuple) {
  r.n = tuple.rows();
  r.m = tuple.cols();
  r.k = tuple.k();
}

ContractionTuple identity_tuple(int n) {
  std::vector<ComplexMatrix> blocks{ComplexMatrix::Identity(n, n)};
  return ContractionTuple(std::move(blocks), Resolution::exact);
}

void cross_check(const char* op, double route_a, double route_b) {
  if (std::abs(route_a - route_b) >
      tol::kEqualityRel * (1.0 + std::abs(route_a) + std::abs(route_b))) {
    std::ostringstream os;
    os << op << ": internal route disagreement (" << route_a << " vs " << route_b << ")";
    throw NumericalError(os.str());
  }
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw ValidationError("DiscreteDistribution: empty distribution");
  double total = 0.0;
  const size_t k = atoms_[0].a_tuple.size();
  if (k == 0) throw ValidationError("DiscreteDistribution: atoms must carry a non-empty tuple");
  const int n = atoms_[0].a_tuple[0].dim();
  for (const Atom& atom : atoms_) {
    if (!(atom.weight > 0.0))
      throw ValidationError("DiscreteDistribution: weights must be positive");
    if (atom.a_tuple.size() != k)
      throw ValidationError("DiscreteDistribution: atoms must share the tuple length");
    for (const HermitianMatrix& a : atom.a_tuple)
      if (a.dim() != n)
        throw ValidationError("DiscreteDistribution: atoms must share matrix dimensions");
    total += atom.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("DiscreteDistribution: weights sum to " + std::to_string(total) +
                          ", expected 1 within 1e-12");
}

TrialReport check_q_contraction(const ComplexMatrix& x, const PositiveDefiniteMatrix& a,
                                const ComplexMatrix& b) {
  const int n = a.dim();
  if (x.rows() != n || x.cols() != n || b.rows() != n || b.cols() != n)
    throw ValidationError("check_q_contraction: dimension mismatch");
  const double x_norm = operator_norm(x);
  if (x_norm > 1.0 + tol::kContractionSlack)
    throw ValidationError("check_q_contraction: ||X|| = " + std::to_string(x_norm) +
                          " is not a contraction");
  Eigen::PartialPivLU<ComplexMatrix> lu(x);
  const ComplexMatrix xinv = lu.solve(ComplexMatrix::Identity(n, n));
  const double cond = x_norm * operator_norm(xinv);
  if (!(cond < tol::kMaxConditionX) || !all_finite(xinv)) {
    std::ostringstream os;
    os << "check_q_contraction: X is numerically singular (condition " << cond << ")";
    throw ValidationError(os.str());
  }
  PositiveDefiniteMatrix conjugated(HermitianMatrix(x * a.mat() * x.adjoint()));
  const double lhs = q_form(conjugated, b);
  const double rhs = q_form(a, xinv * b * xinv.adjoint());
  TrialReport r = inequality_report("q-contraction", lhs, rhs);
  r.n = r.m = n;
  r.k = 1;
  return r;
}

TrialReport check_lemma_main(const HermitianMatrix& l, const ContractionTuple& tuple,
                             const std::vector<PositiveDefiniteMatrix>& a_list,
                             const std::vector<PositiveDefiniteMatrix>& b_list) {
  require_exact("check_lemma_main", tuple);
  require_list_size("check_lemma_main", tuple, a_list.size());
  require_list_size("check_lemma_main", tuple, b_list.size());
  PhiSpec spec(l, tuple);
  const double lhs = phi_multi(spec, b_list);
  const PositiveDefiniteMatrix exp_at_a = matrix_exp(phi_exponent(spec, a_list));
  std::vector<ComplexMatrix> differentials;
  differentials.reserve(a_list.size());
  for (size_t i = 0; i < a_list.size(); ++i)
    differentials.push_back(frechet_log(a_list[i], b_list[i].mat()));
  const double rhs = trace_real(exp_at_a.mat() * sandwich_sum(tuple, differentials));
  TrialReport r = inequality_report("lemma", lhs, rhs);
  set_dims(r, tuple);
  return r;
}

TrialReport check_gt_multi(const HermitianMatrix& l, const ContractionTuple& tuple,
                           const std::vector<HermitianMatrix>& b_list) {
  require_exact("check_gt_multi", tuple);
  require_list_size("check_gt_multi", tuple, b_list.size());
  if (l.dim() != tuple.cols())
    throw ValidationError("check_gt_multi: L must be m x m with m = " +
                          std::to_string(tuple.cols()));
  std::vector<ComplexMatrix> mids, exps;
  mids.reserve(b_list.size());
  exps.reserve(b_list.size());
  for (const HermitianMatrix& b : b_list) {
    if (b.dim() != tuple.rows())
      throw ValidationError("check_gt_multi: B_i must be n x n with n = " +
                            std::to_string(tuple.rows()));
    mids.push_back(b.mat());
    exps.push_back(matrix_exp(b).mat());
  }
  const double lhs =
      trace_real(matrix_exp(HermitianMatrix(l.mat() + sandwich_sum(tuple, mids))).mat());
  const double rhs = trace_real(matrix_exp(l).mat() * sandwich_sum(tuple, exps));
  TrialReport r = inequality_report("gt-multi", lhs, rhs);
  set_dims(r, tuple);
  return r;
}

TrialReport check_classical_gt(const HermitianMatrix& l, const HermitianMatrix& b) {
  if (l.dim() != b.dim()) throw ValidationError("check_classical_gt: dimension mismatch");
  TrialReport r = check_gt_multi(l, identity_tuple(l.dim()), {b});
  const double lhs_direct =
      trace_real(matrix_exp(HermitianMatrix(l.mat() + b.mat())).mat());
  const double rhs_direct = trace_real(matrix_exp(l).mat() * matrix_exp(b).mat());
  cross_check("check_classical_gt (lhs)", r.lhs, lhs_direct);
  cross_check("check_classical_gt (rhs)", r.rhs, rhs_direct);
  r.suite = "classical-gt";
  return r;
}

TrialReport check_interpolation(const HermitianMatrix& l, const HermitianMatrix& a,
                                const HermitianMatrix& b) {
  const int n = l.dim();
  if (a.dim() != n || b.dim() != n)
    throw ValidationError("check_interpolation: dimension mismatch");
  const double c = 1.0 / std::sqrt(2.0);
  std::vector<ComplexMatrix> blocks{c * ComplexMatrix::Identity(n, n),
                                    c * ComplexMatrix::Identity(n, n)};
  TrialReport r =
      check_gt_multi(l, ContractionTuple(std::move(blocks), Resolution::exact), {a, b});
  const double lhs_direct = trace_real(
      matrix_exp(HermitianMatrix(l.mat() + 0.5 * a.mat() + 0.5 * b.mat())).mat());
  const double rhs_direct = trace_real(
      matrix_exp(l).mat() * (0.5 * matrix_exp(a).mat() + 0.5 * matrix_exp(b).mat()));
  cross_check("check_interpolation (lhs)", r.lhs, lhs_direct);
  cross_check("check_interpolation (rhs)", r.rhs, rhs_direct);
  r.suite = "interpolation";
  return r;
}

TrialReport check_gt_logdiff(const ContractionTuple& tuple,
                             const std::vector<PositiveDefiniteMatrix>& a_list,
                             const std::vector<PositiveDefiniteMatrix>& b_list) {
  require_exact("check_gt_logdiff", tuple);
  require_list_size("check_gt_logdiff", tuple, a_list.size());
  require_list_size("check_gt_logdiff", tuple, b_list.size());
  std::vector<ComplexMatrix> mids, differentials;
  mids.reserve(a_list.size());
  differentials.reserve(a_list.size());
  for (size_t i = 0; i < a_list.size(); ++i) {
    mids.push_back(matrix_log(b_list[i]).mat() - matrix_log(a_list[i]).mat());
    differentials.push_back(frechet_log(a_list[i], b_list[i].mat()));
  }
  const double lhs =
      trace_real(matrix_exp(HermitianMatrix(sandwich_sum(tuple, mids))).mat());
  const double rhs = trace_real(sandwich_sum(tuple, differentials));
  TrialReport r = inequality_report("gt-logdiff", lhs, rhs);
  set_dims(r, tuple);
  return r;
}

TrialReport check_gt_extended(const ContractionTuple& tuple,
                              const std::vector<PositiveDefiniteMatrix>& a_list,
                              const std::vector<PositiveDefiniteMatrix>& b_list,
                              const std::vector<PositiveDefiniteMatrix>& c_list) {
  require_exact("check_gt_extended", tuple);
  require_list_size("check_gt_extended", tuple, a_list.size());
  require_list_size("check_gt_extended", tuple, b_list.size());
  require_list_size("check_gt_extended", tuple, c_list.size());
  std::vector<ComplexMatrix> mids, logs_c, differentials;
  mids.reserve(a_list.size());
  logs_c.reserve(a_list.size());
  differentials.reserve(a_list.size());
  for (size_t i = 0; i < a_list.size(); ++i) {
    const ComplexMatrix log_c = matrix_log(c_list[i]).mat();
    mids.push_back(matrix_log(b_list[i]).mat() + log_c - matrix_log(a_list[i]).mat());
    logs_c.push_back(log_c);
    differentials.push_back(frechet_log(a_list[i], b_list[i].mat()));
  }
  const double lhs =
      trace_real(matrix_exp(HermitianMatrix(sandwich_sum(tuple, mids))).mat());
  const double rhs =
      trace_real(matrix_exp(HermitianMatrix(sandwich_sum(tuple, logs_c))).mat() *
                 sandwich_sum(tuple, differentials));
  TrialReport r = inequality_report("gt-extended", lhs, rhs);
  set_dims(r, tuple);
  return r;
}

TrialReport check_expectation(const HermitianMatrix& l, const ContractionTuple& tuple,
                              const DiscreteDistribution& dist) {
  require_list_size("check_expectation", tuple, static_cast<size_t>(dist.tuple_size()));
  if (dist.dim() != tuple.rows())
    throw ValidationError("check_expectation: atom matrices must be n x n");
  if (l.dim() != tuple.cols())
    throw ValidationError("check_expectation: L must be m x m");
  double lhs = 0.0;
  const int k = tuple.k(), n = tuple.rows();
  std::vector<ComplexMatrix> mean_exp(static_cast<size_t>(k),
                                      ComplexMatrix::Zero(n, n));
  for (const DiscreteDistribution::Atom& atom : dist.atoms()) {
    std::vector<ComplexMatrix> mids;
    mids.reserve(atom.a_tuple.size());
    for (int i = 0; i < k; ++i) {
      const HermitianMatrix& a = atom.a_tuple[static_cast<size_t>(i)];
      mids.push_back(a.mat());
      mean_exp[static_cast<size_t>(i)] += atom.weight * matrix_exp(a).mat();
    }
    lhs += atom.weight *
           trace_real(matrix_exp(HermitianMatrix(l.mat() + sandwich_sum(tuple, mids))).mat());
  }
  std::vector<ComplexMatrix> log_means;
  log_means.reserve(mean_exp.size());
  for (const ComplexMatrix& m : mean_exp)
    log_means.push_back(matrix_log(PositiveDefiniteMatrix(m)).mat());
  const double rhs =
      trace_real(matrix_exp(HermitianMatrix(l.mat() + sandwich_sum(tuple, log_means))).mat());
  TrialReport r = inequality_report("expectation", lhs, rhs);
  set_dims(r, tuple);
  return r;
}

HelmholtzBound helmholtz_bound(const HermitianMatrix& l, const ContractionTuple& tuple,
                               const std::vector<HermitianMatrix>& b_list, double beta) {
  if (!(beta > 0.0)) throw ValidationError("helmholtz_bound: beta must be > 0");
  std::vector<HermitianMatrix> scaled;
  scaled.reserve(b_list.size());
  for (const HermitianMatrix& b : b_list) scaled.emplace_back(beta * b.mat());
  TrialReport r = check_gt_multi(HermitianMatrix(beta * l.mat()), tuple, scaled);
  if (!(r.lhs > 0.0) || !(r.rhs > 0.0))
    throw NumericalError("helmholtz_bound: non-positive trace value (lhs " +
                         std::to_string(r.lhs) + ", rhs " + std::to_string(r.rhs) + ")");
  return {-std::log(r.lhs) / beta, -std::log(r.rhs) / beta};
}

}  // namespace gtlab
