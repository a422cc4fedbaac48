#include "gtlab/tracefn.hpp"

#include <cmath>
#include <sstream>

namespace gtlab {

namespace {

ComplexMatrix gram_of(const std::vector<ComplexMatrix>& blocks, int m) {
  ComplexMatrix g = ComplexMatrix::Zero(m, m);
  for (const ComplexMatrix& h : blocks) g.noalias() += h.adjoint() * h;
  return g;
}

}  // namespace

ContractionTuple::ContractionTuple(std::vector<ComplexMatrix> blocks, Resolution resolution,
                                   double res_tol) {
  if (blocks.empty()) throw ValidationError("ContractionTuple: k must be >= 1");
  n_ = static_cast<int>(blocks[0].rows());
  m_ = static_cast<int>(blocks[0].cols());
  if (n_ < 1 || m_ < 1) throw ValidationError("ContractionTuple: blocks must be non-empty");
  for (const ComplexMatrix& h : blocks) {
    if (h.rows() != n_ || h.cols() != m_)
      throw ValidationError("ContractionTuple: all blocks must share the same n x m shape");
    if (!all_finite(h)) throw ValidationError("ContractionTuple: non-finite block entries");
  }
  const ComplexMatrix g = gram_of(blocks, m_);
  if (resolution == Resolution::exact) {
    const double gate =
        res_tol >= 0 ? res_tol : tol::kExactResolutionCoeff * std::sqrt(static_cast<double>(m_));
    const double residual = (g - ComplexMatrix::Identity(m_, m_)).norm();
    if (residual > gate) {
      std::ostringstream os;
      os << "ContractionTuple: resolution residual ||sum H_i*H_i - I|| = " << residual
         << " exceeds " << gate;
      throw ValidationError(os.str());
    }
  } else {
    const double gate = 1.0 + (res_tol >= 0 ? res_tol : tol::kSubResolutionSlack);
    const double top = operator_norm(g);  // g is PSD, so ||g|| = lambda_max
    if (top > gate) {
      std::ostringstream os;
      os << "ContractionTuple: lambda_max(sum H_i*H_i) = " << top << " exceeds " << gate;
      throw ValidationError(os.str());
    }
  }
  blocks_ = std::move(blocks);
  resolution_ = resolution;
}

ContractionTuple ContractionTuple::unchecked(std::vector<ComplexMatrix> blocks,
                                             Resolution resolution) {
  if (blocks.empty()) throw ValidationError("ContractionTuple: k must be >= 1");
  ContractionTuple t;
  t.n_ = static_cast<int>(blocks[0].rows());
  t.m_ = static_cast<int>(blocks[0].cols());
  t.blocks_ = std::move(blocks);
  t.resolution_ = resolution;
  return t;
}

ComplexMatrix ContractionTuple::gram() const { return gram_of(blocks_, m_); }

double ContractionTuple::resolution_residual() const {
  return (gram() - ComplexMatrix::Identity(m_, m_)).norm();
}

PhiSpec::PhiSpec(std::optional<HermitianMatrix> l, ContractionTuple tuple)
    : l_term(std::move(l)), contraction(std::move(tuple)) {
  if (l_term && l_term->dim() != contraction.cols())
    throw ValidationError("PhiSpec: L is " + std::to_string(l_term->dim()) +
                          "-dimensional, expected the blocks' column dimension " +
                          std::to_string(contraction.cols()));
}

ComplexMatrix sandwich_sum(const ContractionTuple& tuple, std::span<const ComplexMatrix> mids) {
  if (static_cast<int>(mids.size()) != tuple.k())
    throw ValidationError("sandwich_sum: expected " + std::to_string(tuple.k()) +
                          " middle factors, got " + std::to_string(mids.size()));
  ComplexMatrix acc = ComplexMatrix::Zero(tuple.cols(), tuple.cols());
  for (int i = 0; i < tuple.k(); ++i) {
    const ComplexMatrix& h = tuple.blocks()[static_cast<size_t>(i)];
    const ComplexMatrix& mid = mids[static_cast<size_t>(i)];
    if (mid.rows() != tuple.rows() || mid.cols() != tuple.rows())
      throw ValidationError("sandwich_sum: middle factor " + std::to_string(i) +
                            " must be n x n");
    acc.noalias() += h.adjoint() * mid * h;
  }
  return acc;
}

HermitianMatrix phi_exponent(const PhiSpec& spec,
                             const std::vector<PositiveDefiniteMatrix>& a_list) {
  const ContractionTuple& t = spec.contraction;
  if (static_cast<int>(a_list.size()) != t.k())
    throw ValidationError("phi_exponent: expected " + std::to_string(t.k()) +
                          " inputs, got " + std::to_string(a_list.size()));
  std::vector<ComplexMatrix> logs;
  logs.reserve(a_list.size());
  for (const PositiveDefiniteMatrix& a : a_list) {
    if (a.dim() != t.rows())
      throw ValidationError("phi_exponent: inputs must be n x n with n = " +
                            std::to_string(t.rows()));
    logs.push_back(matrix_log(a).mat());
  }
  ComplexMatrix e = sandwich_sum(t, logs);
  if (spec.l_term) e += spec.l_term->mat();
  return HermitianMatrix(e);
}

double phi_single(const ComplexMatrix& h, const PositiveDefiniteMatrix& a) {
  if (h.rows() != a.dim())
    throw ValidationError("phi_single: H has " + std::to_string(h.rows()) +
                          " rows, expected " + std::to_string(a.dim()));
  const double norm = operator_norm(h);
  if (norm > 1.0 + tol::kContractionSlack) {
    std::ostringstream os;
    os << "phi_single: ||H|| = " << norm << " is not a contraction";
    throw ValidationError(os.str());
  }
  HermitianMatrix exponent(h.adjoint() * matrix_log(a).mat() * h);
  return trace_real(matrix_exp(exponent).mat());
}

double phi_multi(const PhiSpec& spec, const std::vector<PositiveDefiniteMatrix>& a_list) {
  return trace_real(matrix_exp(phi_exponent(spec, a_list)).mat());
}

std::pair<ComplexMatrix, PositiveDefiniteMatrix> block_embed(
    const ContractionTuple& tuple, const std::vector<PositiveDefiniteMatrix>& a_list) {
  const int k = tuple.k(), n = tuple.rows(), m = tuple.cols();
  if (static_cast<int>(a_list.size()) != k)
    throw ValidationError("block_embed: expected " + std::to_string(k) + " inputs");
  ComplexMatrix h_big = ComplexMatrix::Zero(k * n, k * m);
  ComplexMatrix a_big = ComplexMatrix::Zero(k * n, k * n);
  for (int i = 0; i < k; ++i) {
    h_big.block(i * n, 0, n, m) = tuple.blocks()[static_cast<size_t>(i)];
    if (a_list[static_cast<size_t>(i)].dim() != n)
      throw ValidationError("block_embed: inputs must be n x n");
    a_big.block(i * n, i * n, n, n) = a_list[static_cast<size_t>(i)].mat();
  }
  return {std::move(h_big), PositiveDefiniteMatrix(a_big)};
}

TrialReport check_block_identity(const ContractionTuple& tuple,
                                 const std::vector<PositiveDefiniteMatrix>& a_list) {
  if (tuple.resolution() != Resolution::exact)
    throw ValidationError("check_block_identity: exact resolution required");
  auto [h_big, a_big] = block_embed(tuple, a_list);
  const double embedded = phi_single(h_big, a_big);
  const double direct = phi_multi(PhiSpec(std::nullopt, tuple), a_list);
  const double offset = static_cast<double>((tuple.k() - 1) * tuple.cols());
  TrialReport r;
  r.suite = "block-identity";
  r.lhs = embedded - direct;
  r.rhs = offset;
  r.slack = -std::abs(r.lhs - r.rhs);
  r.pass = std::abs(r.lhs - r.rhs) <= tol::kBlockIdentityTol;
  r.n = tuple.rows();
  r.m = tuple.cols();
  r.k = tuple.k();
  return r;
}

TupleEvaluator phi_single_evaluator(ComplexMatrix h) {
  return [h = std::move(h)](const std::vector<PositiveDefiniteMatrix>& a_list) {
    if (a_list.size() != 1)
      throw ValidationError("phi_single evaluator expects a 1-tuple");
    return phi_single(h, a_list[0]);
  };
}

TupleEvaluator phi_multi_evaluator(PhiSpec spec) {
  return [spec = std::move(spec)](const std::vector<PositiveDefiniteMatrix>& a_list) {
    return phi_multi(spec, a_list);
  };
}

namespace {

std::vector<PositiveDefiniteMatrix> midpoint_of(const std::vector<PositiveDefiniteMatrix>& p0,
                                                const std::vector<PositiveDefiniteMatrix>& p1) {
  if (p0.size() != p1.size())
    throw ValidationError("concavity probe: tuples must have equal length");
  std::vector<PositiveDefiniteMatrix> mid;
  mid.reserve(p0.size());
  for (size_t i = 0; i < p0.size(); ++i)
    mid.emplace_back(HermitianMatrix(0.5 * (p0[i].mat() + p1[i].mat())));
  return mid;
}

std::vector<PositiveDefiniteMatrix> shifted_point(
    const std::vector<PositiveDefiniteMatrix>& point,
    const std::vector<HermitianMatrix>& direction, double t) {
  std::vector<PositiveDefiniteMatrix> out;
  out.reserve(point.size());
  for (size_t i = 0; i < point.size(); ++i) {
    try {
      out.emplace_back(HermitianMatrix(point[i].mat() + t * direction[i].mat()));
    } catch (const ValidationError&) {
      std::ostringstream os;
      os << "second-derivative probe: point + (" << t
         << ")*direction leaves the positive definite cone in slot " << i
         << "; shrink the step";
      throw ValidationError(os.str());
    }
  }
  return out;
}

}  // namespace

TrialReport concavity_midpoint_probe(const TupleEvaluator& f,
                                     const std::vector<PositiveDefiniteMatrix>& point0,
                                     const std::vector<PositiveDefiniteMatrix>& point1) {
  const double f0 = f(point0);
  const double f1 = f(point1);
  const double fm = f(midpoint_of(point0, point1));
  // average <= midpoint value, i.e. lhs = (f0+f1)/2, rhs = f(mid)
  TrialReport r = inequality_report("concavity-midpoint", 0.5 * (f0 + f1), fm);
  if (!point0.empty()) r.n = point0[0].dim();
  r.k = static_cast<int>(point0.size());
  return r;
}

TrialReport concavity_second_derivative_probe(const TupleEvaluator& f,
                                              const std::vector<PositiveDefiniteMatrix>& point,
                                              const std::vector<HermitianMatrix>& direction,
                                              double step) {
  if (point.size() != direction.size())
    throw ValidationError("second-derivative probe: point/direction lengths differ");
  if (!(step > 0.0)) throw ValidationError("second-derivative probe: step must be > 0");
  const double f0 = f(point);
  const double fp = f(shifted_point(point, direction, step));
  const double fm = f(shifted_point(point, direction, -step));
  const double second = (fp - 2.0 * f0 + fm) / (step * step);
  const double scale = 1.0 + std::abs(f0) + std::abs(fp) + std::abs(fm);
  TrialReport r;
  r.suite = "concavity-second-difference";
  r.lhs = second;
  r.rhs = 0.0;
  r.slack = -second;
  r.pass = second <= tol::kFd2Coeff * scale;
  if (!point.empty()) r.n = point[0].dim();
  r.k = static_cast<int>(point.size());
  return r;
}

TrialReport check_homogeneity(const PhiSpec& spec,
                              const std::vector<PositiveDefiniteMatrix>& a_list, double s) {
  if (spec.contraction.resolution() != Resolution::exact)
    throw ValidationError("check_homogeneity: exact resolution required");
  if (!(s > 0.0)) throw ValidationError("check_homogeneity: s must be > 0");
  std::vector<PositiveDefiniteMatrix> scaled;
  scaled.reserve(a_list.size());
  for (const PositiveDefiniteMatrix& a : a_list)
    scaled.emplace_back(HermitianMatrix(s * a.mat()));
  const double left = phi_multi(spec, scaled);
  const double right = s * phi_multi(spec, a_list);
  TrialReport r = equality_report("phi-homogeneity", left, right, 1e-10);
  r.n = spec.contraction.rows();
  r.m = spec.contraction.cols();
  r.k = spec.contraction.k();
  return r;
}

TrialReport check_homogeneous_convex_quotient(std::string_view form, const PhiSpec& spec,
                                              const std::vector<PositiveDefiniteMatrix>& base,
                                              const std::vector<PositiveDefiniteMatrix>& direction,
                                              std::span<const double> t_grid) {
  if (form != "phi-multi")
    throw ValidationError("check_homogeneous_convex_quotient: unregistered form '" +
                          std::string(form) + "' for tuple points; registered: phi-multi");
  if (spec.contraction.resolution() != Resolution::exact)
    throw ValidationError("check_homogeneous_convex_quotient: exact resolution required");
  if (base.size() != direction.size())
    throw ValidationError("check_homogeneous_convex_quotient: tuple lengths differ");
  const double f_base = phi_multi(spec, base);
  const double f_dir = phi_multi(spec, direction);
  auto value_at = [&](double t) {
    std::vector<PositiveDefiniteMatrix> shifted;
    shifted.reserve(base.size());
    for (size_t i = 0; i < base.size(); ++i)
      shifted.emplace_back(HermitianMatrix(base[i].mat() + t * direction[i].mat()));
    return phi_multi(spec, shifted);
  };
  TrialReport r = detail::finite_quotient_check("phi-quotient", /*convex=*/false, value_at,
                                                f_base, f_dir, t_grid);
  r.n = spec.contraction.rows();
  r.m = spec.contraction.cols();
  r.k = spec.contraction.k();
  return r;
}

HermitianMatrix completion_block(const ContractionTuple& tuple, double min_eig) {
  const int m = tuple.cols();
  HermitianMatrix deficit(ComplexMatrix::Identity(m, m) - tuple.gram());
  SpectralDecomposition d = hermitian_eig(deficit);
  if (d.eigenvalues(0) < min_eig) {
    std::ostringstream os;
    os << "completion_block: smallest deficit eigenvalue " << d.eigenvalues(0)
       << " is below " << min_eig << "; the tuple is too close to exact resolution";
    throw ValidationError(os.str());
  }
  RealVector roots = d.eigenvalues.array().sqrt();
  return HermitianMatrix(d.unitary * roots.cast<Complex>().asDiagonal() * d.unitary.adjoint());
}

double phi_completed(const ContractionTuple& tuple,
                     const std::vector<PositiveDefiniteMatrix>& a_list,
                     const HermitianMatrix& completion, const PositiveDefiniteMatrix& a_extra) {
  if (completion.dim() != tuple.cols() || a_extra.dim() != tuple.cols())
    throw ValidationError("phi_completed: completion and extra slot must be m x m");
  std::vector<ComplexMatrix> logs;
  logs.reserve(a_list.size());
  for (const PositiveDefiniteMatrix& a : a_list) logs.push_back(matrix_log(a).mat());
  ComplexMatrix e = sandwich_sum(tuple, logs);
  const ComplexMatrix& w = completion.mat();
  e += w.adjoint() * matrix_log(a_extra).mat() * w;
  return trace_real(matrix_exp(HermitianMatrix(e)).mat());
}

PositiveDefiniteMatrix completion_lift(const HermitianMatrix& l,
                                       const HermitianMatrix& completion) {
  if (l.dim() != completion.dim())
    throw ValidationError("completion_lift: dimension mismatch");
  SpectralDecomposition d = hermitian_eig(completion);
  if (d.eigenvalues(0) <= 0.0)
    throw ValidationError("completion_lift: completion block is singular");
  RealVector inv = d.eigenvalues.array().inverse();
  ComplexMatrix winv = d.unitary * inv.cast<Complex>().asDiagonal() * d.unitary.adjoint();
  return matrix_exp(HermitianMatrix(winv * l.mat() * winv));
}

}  // namespace gtlab
