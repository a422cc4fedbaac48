#include "gtlab/report.hpp"

#include <cmath>
#include <cstdio>

namespace gtlab {

TrialReport inequality_report(std::string suite, double lhs, double rhs) {
  TrialReport t;
  t.suite = std::move(suite);
  t.lhs = lhs;
  t.rhs = rhs;
  t.slack = rhs - lhs;
  t.pass = t.slack >= -tol::slack_tol(lhs, rhs);
  return t;
}

TrialReport inequality_report_abs(std::string suite, double lhs, double rhs, double abs_tol) {
  TrialReport t;
  t.suite = std::move(suite);
  t.lhs = lhs;
  t.rhs = rhs;
  t.slack = rhs - lhs;
  t.pass = t.slack >= -abs_tol;
  return t;
}

TrialReport equality_report(std::string suite, double a, double b, double rel_tol) {
  TrialReport t;
  t.suite = std::move(suite);
  t.lhs = a;
  t.rhs = b;
  t.slack = -std::abs(a - b);
  t.pass = std::abs(a - b) <= rel_tol * (1.0 + std::abs(a) + std::abs(b));
  return t;
}

void finalize_counts(SuiteReport& r) {
  r.passed = 0;
  r.failed = 0;
  r.worst_slack = std::numeric_limits<double>::infinity();
  for (const TrialReport& t : r.trials) {
    (t.pass ? r.passed : r.failed)++;
    r.worst_slack = std::min(r.worst_slack, t.slack);
  }
  if (r.trials.empty()) r.worst_slack = 0.0;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string to_json(const TrialReport& t) {
  std::string s = "{\"suite\":\"" + json_escape(t.suite) + "\"";
  s += ",\"trial_index\":" + std::to_string(t.trial_index);
  s += ",\"seed\":" + std::to_string(t.seed);
  s += ",\"lhs\":" + format_double(t.lhs);
  s += ",\"rhs\":" + format_double(t.rhs);
  s += ",\"slack\":" + format_double(t.slack);
  s += std::string(",\"pass\":") + (t.pass ? "true" : "false");
  s += ",\"dims\":[" + std::to_string(t.n) + "," + std::to_string(t.m) + "," +
       std::to_string(t.k) + "]}";
  return s;
}

std::string to_json(const SuiteReport& r) {
  std::string s = "{\"suite\":\"" + json_escape(r.suite) + "\",\"trials\":[";
  for (size_t i = 0; i < r.trials.size(); ++i) {
    if (i) s += ',';
    s += to_json(r.trials[i]);
  }
  s += "],\"passed\":" + std::to_string(r.passed);
  s += ",\"failed\":" + std::to_string(r.failed);
  s += ",\"worst_slack\":" + format_double(r.worst_slack);
  s += ",\"seed\":" + std::to_string(r.seed);
  s += ",\"config\":{\"trials\":" + std::to_string(r.config_trials);
  s += ",\"n_max\":" + std::to_string(r.config_n_max);
  s += ",\"m_max\":" + std::to_string(r.config_m_max);
  s += ",\"k_max\":" + std::to_string(r.config_k_max);
  s += ",\"scale\":" + format_double(r.config_scale);
  s += std::string(",\"stress\":") + (r.config_stress ? "true" : "false");
  s += ",\"quad_nodes\":" + std::to_string(r.config_quad_nodes);
  s += ",\"slack_coeff\":" + format_double(r.config_slack_coeff);
  s += "}}";
  return s;
}

std::string to_json(std::span<const SuiteReport> suites) {
  std::string s = "[";
  for (size_t i = 0; i < suites.size(); ++i) {
    if (i) s += ',';
    s += to_json(suites[i]);
  }
  s += "]";
  return s;
}

std::string to_csv_summary(std::span<const SuiteReport> suites) {
  std::string s = "suite,trials,passed,failed,worst_slack\n";
  for (const SuiteReport& r : suites) {
    s += r.suite + "," + std::to_string(r.trials.size()) + "," + std::to_string(r.passed) +
         "," + std::to_string(r.failed) + "," + format_double(r.worst_slack) + "\n";
  }
  return s;
}

}  // namespace gtlab
