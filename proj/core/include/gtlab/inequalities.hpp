// inequalities.hpp - both sides of every checked trace inequality, as structured verdicts
#pragma once

#include <vector>

#include "gtlab/calculus.hpp"
#include "gtlab/matcore.hpp"
#include "gtlab/report.hpp"
#include "gtlab/tracefn.hpp"

namespace gtlab {

/// Finite-support distribution over k-tuples of self-adjoint matrices, so the
/// expectation is exact (no sampling error enters the verification).
class DiscreteDistribution {
 public:
  struct Atom {
    double weight;
    std::vector<HermitianMatrix> a_tuple;
  };

  explicit DiscreteDistribution(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  int tuple_size() const { return static_cast<int>(atoms_[0].a_tuple.size()); }
  int dim() const { return atoms_[0].a_tuple[0].dim(); }

 private:
  std::vector<Atom> atoms_;
};

/// Q(XAX*, B) <= Q(A, X^-1 B (X*)^-1) for an invertible contraction X.
TrialReport check_q_contraction(const ComplexMatrix& x, const PositiveDefiniteMatrix& a,
                                const ComplexMatrix& b);

/// Tr exp(L + sum H_j*(log B_j)H_j)
///   <= Tr [exp(L + sum H_j*(log A_j)H_j) * sum H_i*(d log(A_i)B_i)H_i].
TrialReport check_lemma_main(const HermitianMatrix& l, const ContractionTuple& tuple,
                             const std::vector<PositiveDefiniteMatrix>& a_list,
                             const std::vector<PositiveDefiniteMatrix>& b_list);

/// Tr exp(L + sum H_i* B_i H_i) <= Tr [exp(L) * sum H_i*(exp B_i)H_i].
TrialReport check_gt_multi(const HermitianMatrix& l, const ContractionTuple& tuple,
                           const std::vector<HermitianMatrix>& b_list);

/// Tr e^{L+B} <= Tr e^L e^B; delegates to check_gt_multi with k=1, H=I and
/// cross-checks the direct evaluation to 1e-12 relative.
TrialReport check_classical_gt(const HermitianMatrix& l, const HermitianMatrix& b);

/// Tr exp(L + A/2 + B/2) <= Tr (exp L)(exp(A)/2 + exp(B)/2); realized via
/// check_gt_multi with H_1 = H_2 = I/sqrt(2) and cross-checked directly.
TrialReport check_interpolation(const HermitianMatrix& l, const HermitianMatrix& a,
                                const HermitianMatrix& b);

/// Tr exp(sum H_i*(log B_i - log A_i)H_i) <= sum Tr H_i*(d log(A_i)B_i)H_i.
TrialReport check_gt_logdiff(const ContractionTuple& tuple,
                             const std::vector<PositiveDefiniteMatrix>& a_list,
                             const std::vector<PositiveDefiniteMatrix>& b_list);

/// Tr exp(sum H_i*(log B_i + log C_i - log A_i)H_i)
///   <= Tr [exp(sum H_i*(log C_i)H_i) * sum H_i*(d log(A_i)B_i)H_i].
TrialReport check_gt_extended(const ContractionTuple& tuple,
                              const std::vector<PositiveDefiniteMatrix>& a_list,
                              const std::vector<PositiveDefiniteMatrix>& b_list,
                              const std::vector<PositiveDefiniteMatrix>& c_list);

/// E Tr exp(L + sum H_i* A_i H_i) <= Tr exp(L + sum H_i*(log E e^{A_i})H_i),
/// the expectation taken exactly over the discrete distribution.
TrialReport check_expectation(const HermitianMatrix& l, const ContractionTuple& tuple,
                              const DiscreteDistribution& dist);

struct HelmholtzBound {
  double free_energy;  // -(1/beta) log of the exact trace
  double bound;        // -(1/beta) log of the upper bound; free_energy >= bound
};

/// Free-energy form of the multivariate bound at inverse temperature beta:
/// both sides of the trace inequality are evaluated at (beta*L, beta*B_i) and
/// passed through -(1/beta) log.
HelmholtzBound helmholtz_bound(const HermitianMatrix& l, const ContractionTuple& tuple,
                               const std::vector<HermitianMatrix>& b_list, double beta);

}  // namespace gtlab
