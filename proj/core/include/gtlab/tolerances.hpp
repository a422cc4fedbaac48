// tolerances.hpp - every numerical tolerance used across the library, in one place
#pragma once

#include <algorithm>
#include <cmath>

namespace gtlab::tol {

// Validation tolerances for the matrix types (dims <= 64).
inline constexpr double kHermitian = 1e-10;      // max entrywise |M - M*| vs max(1, ||M||_F)
inline constexpr double kOrtho = 1e-9;           // ||U*U - I||_F
inline constexpr double kRecon = 1e-9;           // reconstruction residual, relative
inline constexpr double kOverflowGuard = 700.0;  // largest eigenvalue fed to exp

// Resolution identity Sum H_i^* H_i = I_m and contraction slack.
inline constexpr double kExactResolutionCoeff = 1e-10;  // x sqrt(m)
inline constexpr double kSubResolutionSlack = 1e-10;    // lambda_max <= 1 + this
inline constexpr double kContractionSlack = 1e-10;      // ||H|| <= 1 + this

// Divided differences switch to the series branch below this argument size.
inline constexpr double kDDSeriesSwitch = 1e-4;

// Quadrature oracle accuracy, documented for condition(A) <= 1e3 at 64 nodes.
inline constexpr double kQuadTol = 1e-6;
inline constexpr double kQuadConditionCap = 1e3;

// Inequality slack rule and probe tolerances.
inline constexpr double kSlackCoeff = 1e-9;
inline constexpr double kFd2Coeff = 1e-6;  // second-difference bound, x scale
inline constexpr double kFd2Step = 1e-3;
inline constexpr double kBlockIdentityTol = 1e-9;  // absolute
inline constexpr double kEqualityRel = 1e-12;      // reduction-identity agreement

// Misc guards.
inline constexpr double kCompletionMinEig = 1e-8;    // smallest eig of the completion block
inline constexpr double kBoundResolutionTol = 1e-8;  // CLI `bound` input gate
inline constexpr double kMaxConditionX = 1e12;       // invertibility gate for contractions

// Positive-definiteness floor: smallest eigenvalue must exceed this.
inline double pd_floor(double frobenius_norm) {
  return 1e-12 * std::max(1.0, frobenius_norm);
}

// Relative-plus-absolute slack tolerance for every inequality assertion.
inline double slack_tol(double lhs, double rhs) {
  return kSlackCoeff * (1.0 + std::abs(lhs) + std::abs(rhs));
}

}  // namespace gtlab::tol
