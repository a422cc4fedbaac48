// tracefn.hpp - trace functions Tr exp(L + sum H_i* log(A_i) H_i), block embedding, probes
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "gtlab/calculus.hpp"
#include "gtlab/matcore.hpp"
#include "gtlab/report.hpp"

namespace gtlab {

enum class Resolution { exact, sub };

/// A tuple (H_1,...,H_k) of n x m blocks with sum H_i^* H_i = I_m (exact) or
/// <= I_m (sub). Dimension convention: blocks have n rows and m columns, the
/// resolution identity lives in the column dimension m.
class ContractionTuple {
 public:
  /// Validates shapes and the resolution invariant. res_tol < 0 selects the
  /// default gate (exact: 1e-10*sqrt(m) on the Frobenius residual; sub:
  /// lambda_max(sum H_i^*H_i) <= 1 + 1e-10). The CLI passes its looser
  /// documented gate for hand-written inputs.
  explicit ContractionTuple(std::vector<ComplexMatrix> blocks,
                            Resolution resolution = Resolution::exact, double res_tol = -1.0);

  /// Testing hook: skips the resolution check entirely. Checkers fed such a
  /// tuple report whatever the formulas yield, which is the point.
  static ContractionTuple unchecked(std::vector<ComplexMatrix> blocks, Resolution resolution);

  int k() const { return static_cast<int>(blocks_.size()); }
  int rows() const { return n_; }  // n
  int cols() const { return m_; }  // m
  const std::vector<ComplexMatrix>& blocks() const { return blocks_; }
  Resolution resolution() const { return resolution_; }

  /// sum H_i^* H_i (m x m).
  ComplexMatrix gram() const;
  /// ||gram() - I_m||_F.
  double resolution_residual() const;

 private:
  ContractionTuple() = default;
  std::vector<ComplexMatrix> blocks_;
  int n_ = 0, m_ = 0;
  Resolution resolution_ = Resolution::exact;
};

/// An optional m x m self-adjoint offset L plus a contraction tuple.
struct PhiSpec {
  std::optional<HermitianMatrix> l_term;
  ContractionTuple contraction;

  PhiSpec(std::optional<HermitianMatrix> l, ContractionTuple tuple);
};

/// sum H_i^* mids_i H_i for per-slot middle factors (each n x n); m x m result.
ComplexMatrix sandwich_sum(const ContractionTuple& tuple, std::span<const ComplexMatrix> mids);

/// The m x m exponent L + sum H_i^* log(A_i) H_i.
HermitianMatrix phi_exponent(const PhiSpec& spec,
                             const std::vector<PositiveDefiniteMatrix>& a_list);

/// Tr exp(H^* log(A) H) for a single contraction H (n x m, ||H|| <= 1 + 1e-10).
double phi_single(const ComplexMatrix& h, const PositiveDefiniteMatrix& a);

/// Tr exp(L + sum H_i^* log(A_i) H_i); without L this is the plain k-tuple form.
double phi_multi(const PhiSpec& spec, const std::vector<PositiveDefiniteMatrix>& a_list);

/// Stacks the blocks into one kn x km contraction (first column-block holds
/// H_1..H_k, zeros elsewhere) and the inputs into blockdiag(A_1..A_k).
std::pair<ComplexMatrix, PositiveDefiniteMatrix> block_embed(
    const ContractionTuple& tuple, const std::vector<PositiveDefiniteMatrix>& a_list);

/// phi_single on the embedded pair minus phi_multi on the tuple equals (k-1)*m
/// exactly; asserted to 1e-9 absolute.
TrialReport check_block_identity(const ContractionTuple& tuple,
                                 const std::vector<PositiveDefiniteMatrix>& a_list);

/// Evaluation of a fixed trace function on a k-tuple of positive definite inputs.
using TupleEvaluator = std::function<double(const std::vector<PositiveDefiniteMatrix>&)>;

TupleEvaluator phi_single_evaluator(ComplexMatrix h);
TupleEvaluator phi_multi_evaluator(PhiSpec spec);

/// f(midpoint) >= (f(p0)+f(p1))/2 - 1e-9*scale with scale = 1 + |f(p0)| + |f(p1)|.
TrialReport concavity_midpoint_probe(const TupleEvaluator& f,
                                     const std::vector<PositiveDefiniteMatrix>& point0,
                                     const std::vector<PositiveDefiniteMatrix>& point1);

/// Central second difference (f(+step) - 2 f(0) + f(-step))/step^2 <= 1e-6*scale,
/// scale = 1 + sum of |f| at the three points. Throws if the segment leaves the
/// positive definite cone (shrink the step or the direction).
TrialReport concavity_second_derivative_probe(const TupleEvaluator& f,
                                              const std::vector<PositiveDefiniteMatrix>& point,
                                              const std::vector<HermitianMatrix>& direction,
                                              double step = tol::kFd2Step);

/// phi_multi(spec, s*A) == s*phi_multi(spec, A) to 1e-10 relative; requires
/// exact resolution (degree-1 homogeneity fails for sub tuples in general).
TrialReport check_homogeneity(const PhiSpec& spec,
                              const std::vector<PositiveDefiniteMatrix>& a_list, double s);

/// Finite-t quotient check, concave sense, for the registered form "phi-multi":
/// (phi(A + tB) - phi(A))/t >= phi(B) for t in (0,1]. Requires exact resolution.
TrialReport check_homogeneous_convex_quotient(std::string_view form, const PhiSpec& spec,
                                              const std::vector<PositiveDefiniteMatrix>& base,
                                              const std::vector<PositiveDefiniteMatrix>& direction,
                                              std::span<const double> t_grid = kDefaultTGrid);

// ---- resolution completion ----------------------------------------------------
// For a sub tuple, W = (I_m - sum H_i^*H_i)^{1/2} completes the resolution; the
// completed (k+1)-slot function restores homogeneity e carries the L-term as a
// constant slot A_extra = exp(W^{-1} L W^{-1}).

/// The completing block W (m x m, Hermitian PSD square root). Rejected when its
/// smallest eigenvalue falls below min_eig (near-exact tuples make W^{-1} blow up).
HermitianMatrix completion_block(const ContractionTuple& tuple,
                                 double min_eig = tol::kCompletionMinEig);

/// Tr exp(sum H_i^* log(A_i) H_i + W log(A_extra) W) over the completed tuple.
double phi_completed(const ContractionTuple& tuple,
                     const std::vector<PositiveDefiniteMatrix>& a_list,
                     const HermitianMatrix& completion, const PositiveDefiniteMatrix& a_extra);

/// exp(W^{-1} L W^{-1}): the constant extra slot that reproduces the L-term.
PositiveDefiniteMatrix completion_lift(const HermitianMatrix& l, const HermitianMatrix& completion);

}  // namespace gtlab
