// report.hpp - per-trial verdicts, suite aggregates, deterministic JSON/CSV emission
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gtlab/tolerances.hpp"

namespace gtlab {

/// One checked statement: both sides, the slack, and the verdict.
/// slack is rhs - lhs for inequalities (concavity margin for probes,
/// -|difference| for equality checks), so pass always means
/// slack >= -(the check's tolerance).
struct TrialReport {
  std::string suite;  // sub-check label, e.g. "gt-multi" or "q-contraction"
  int trial_index = 0;
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
  int n = 0, m = 0, k = 0;
};

/// lhs <= rhs up to the standard slack rule.
TrialReport inequality_report(std::string suite, double lhs, double rhs);
/// lhs <= rhs up to an explicit absolute tolerance.
TrialReport inequality_report_abs(std::string suite, double lhs, double rhs, double abs_tol);
/// |a - b| <= rel_tol * (1 + |a| + |b|); slack is -|a - b|.
TrialReport equality_report(std::string suite, double a, double b, double rel_tol);

/// Aggregate of one suite run.
struct SuiteReport {
  std::string suite;
  std::vector<TrialReport> trials;
  int passed = 0;
  int failed = 0;
  double worst_slack = 0.0;
  std::uint64_t seed = 0;
  // config echo, serialized in fixed order
  int config_trials = 0;
  int config_n_max = 0, config_m_max = 0, config_k_max = 0;
  double config_scale = 0.0;
  bool config_stress = false;
  int config_quad_nodes = 0;
  double config_slack_coeff = tol::kSlackCoeff;

  bool all_pass() const { return failed == 0; }
};

void finalize_counts(SuiteReport& r);

// ---- deterministic serialization ---------------------------------------------
// Fixed key order, 17-significant-digit floats: repeated runs are byte-identical.

std::string format_double(double x);  // printf "%.17g"
std::string json_escape(const std::string& s);

std::string to_json(const TrialReport& t);
std::string to_json(const SuiteReport& s);
std::string to_json(std::span<const SuiteReport> suites);

/// One line per suite: suite,trials,passed,failed,worst_slack
std::string to_csv_summary(std::span<const SuiteReport> suites);

}  // namespace gtlab
