// gtlab - verify multivariate trace inequalities, evaluate bounds on user
// matrices, cross-validate the differential oracles, sweep free-energy bounds.
//
// Exit codes: 0 = all satisfied, 1 = mathematical violation detected,
// 2 = usage/input error.
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gtlab/suites.hpp"

namespace {

using namespace gtlab;

std::uint64_t seed_from_env_or(std::uint64_t fallback) {
  if (const char* env = std::getenv("GTLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError("GTLAB_SEED is not a valid 64-bit seed: " + std::string(env));
    }
  }
  return fallback;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text << "\n";
  } else {
    write_file(output_path, text);
  }
}

std::string dir_of(const std::string& path) {
  const auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

struct CommonOpts {
  std::string suite = "all";
  int trials = 500;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int n_max = 5, m_max = 5, k_max = 4;
  double tol_override = 0.0;  // 0 = keep defaults
  std::string input, output;
  std::string format = "json";
  bool stress = false;
  int quad_nodes = 64;
};

RunConfig to_run_config(const CommonOpts& o) {
  RunConfig cfg;
  cfg.seed = o.seed_given ? o.seed : seed_from_env_or(o.seed);
  cfg.trials = o.trials;
  cfg.n_max = o.n_max;
  cfg.m_max = o.m_max;
  cfg.k_max = o.k_max;
  cfg.stress = o.stress;
  cfg.scale = o.stress ? 50.0 : 4.0;
  cfg.quad_nodes = o.quad_nodes;
  if (o.tol_override != 0.0) {
    if (!(o.tol_override > 0.0)) throw ValidationError("--tol must be > 0");
    cfg.slack_coeff = o.tol_override;
  }
  return cfg;
}

int cmd_verify(const CommonOpts& o, bool inject_violation) {
  RunConfig cfg = to_run_config(o);
  cfg.inject_violation = inject_violation;
  if (o.format != "json" && o.format != "csv-summary")
    throw ValidationError("--format must be json or csv-summary");
  if (o.suite != "all") {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), o.suite) == names.end())
      throw ValidationError("unknown suite '" + o.suite + "'");
  }
  const std::string replay_dir = o.output.empty() ? "" : dir_of(o.output);
  std::vector<SuiteReport> reports = run_selected(o.suite, cfg, replay_dir);
  emit(o.format == "json" ? to_json(reports) : to_csv_summary(reports), o.output);
  bool ok = true;
  for (const SuiteReport& r : reports) {
    ok = ok && r.all_pass();
    if (!o.output.empty())
      std::cout << r.suite << ": " << r.passed << "/" << r.trials.size()
                << " checks passed, worst slack " << format_double(r.worst_slack) << "\n";
  }
  return ok ? 0 : 1;
}

std::vector<HermitianMatrix> herm_list(const std::vector<ComplexMatrix>& ms,
                                       const std::string& name) {
  if (ms.empty()) throw ValidationError("input: missing required key \"" + name + "\"");
  std::vector<HermitianMatrix> out;
  out.reserve(ms.size());
  for (size_t i = 0; i < ms.size(); ++i) {
    try {
      out.emplace_back(ms[i]);
    } catch (const ValidationError& e) {
      throw ValidationError(name + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

std::vector<PositiveDefiniteMatrix> pd_list(const std::vector<ComplexMatrix>& ms,
                                            const std::string& name) {
  if (ms.empty()) throw ValidationError("input: missing required key \"" + name + "\"");
  std::vector<PositiveDefiniteMatrix> out;
  out.reserve(ms.size());
  for (size_t i = 0; i < ms.size(); ++i) {
    try {
      out.emplace_back(ms[i]);
    } catch (const ValidationError& e) {
      throw ValidationError(name + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

ContractionTuple tuple_from(const BoundInput& in, int n_fallback, bool skip_validation) {
  std::vector<ComplexMatrix> blocks = in.h;
  if (blocks.empty()) blocks.push_back(ComplexMatrix::Identity(n_fallback, n_fallback));
  if (skip_validation) return ContractionTuple::unchecked(std::move(blocks), Resolution::exact);
  return ContractionTuple(std::move(blocks), Resolution::exact, tol::kBoundResolutionTol);
}

HermitianMatrix l_or_zero(const BoundInput& in, int m) {
  if (in.l) return HermitianMatrix(*in.l);
  return HermitianMatrix::zero(m);
}

int cmd_bound(const CommonOpts& o, bool skip_validation) {
  if (o.input.empty()) throw ValidationError("bound: --input is required");
  const BoundInput in = load_bound_input(o.input);
  const std::string& which = o.suite;
  TrialReport r;

  if (which == "classical-gt" || which == "gt") {
    auto b = herm_list(in.b, "B");
    if (b.size() != 1) throw ValidationError("classical-gt expects exactly one B");
    r = check_classical_gt(l_or_zero(in, b[0].dim()), b[0]);
  } else if (which == "interpolation") {
    auto a = herm_list(in.a, "A");
    auto b = herm_list(in.b, "B");
    if (a.size() != 1 || b.size() != 1)
      throw ValidationError("interpolation expects exactly one A and one B");
    r = check_interpolation(l_or_zero(in, a[0].dim()), a[0], b[0]);
  } else if (which == "gt-multi" || which == "all") {
    auto b = herm_list(in.b, "B");
    ContractionTuple tuple = tuple_from(in, b[0].dim(), skip_validation);
    r = check_gt_multi(l_or_zero(in, tuple.cols()), tuple, b);
  } else if (which == "lemma") {
    auto a = pd_list(in.a, "A");
    auto b = pd_list(in.b, "B");
    ContractionTuple tuple = tuple_from(in, a[0].dim(), skip_validation);
    r = check_lemma_main(l_or_zero(in, tuple.cols()), tuple, a, b);
  } else if (which == "gt-logdiff") {
    auto a = pd_list(in.a, "A");
    auto b = pd_list(in.b, "B");
    r = check_gt_logdiff(tuple_from(in, a[0].dim(), skip_validation), a, b);
  } else if (which == "gt-extended") {
    auto a = pd_list(in.a, "A");
    auto b = pd_list(in.b, "B");
    auto c = pd_list(in.c, "C");
    r = check_gt_extended(tuple_from(in, a[0].dim(), skip_validation), a, b, c);
  } else {
    throw ValidationError(
        "bound: --suite must name an inequality "
        "(gt-multi, classical-gt, interpolation, lemma, gt-logdiff, gt-extended)");
  }

  std::string s = "{\"lhs\":" + format_double(r.lhs) + ",\"rhs\":" + format_double(r.rhs) +
                  ",\"slack\":" + format_double(r.slack) +
                  ",\"satisfied\":" + (r.pass ? "true" : "false") + "}";
  emit(s, o.output);
  if (!o.output.empty()) std::cout << (r.pass ? "satisfied" : "VIOLATED") << "\n";
  return r.pass ? 0 : 1;
}

int cmd_oracle(const CommonOpts& o, double cond_cap) {
  OracleConfig cfg;
  cfg.seed = o.seed_given ? o.seed : seed_from_env_or(o.seed);
  cfg.trials = o.trials;
  cfg.n_max = o.n_max;
  cfg.cond_cap = cond_cap;
  cfg.quad_nodes = o.quad_nodes;
  OracleReport r = run_oracle(cfg);
  emit(to_json(r), o.output);
  return r.pass ? 0 : 1;
}

int cmd_sweep(const CommonOpts& o, const std::string& betas_arg) {
  std::vector<double> betas;
  {
    std::string token;
    std::istringstream is(betas_arg);
    while (std::getline(is, token, ',')) {
      if (token.empty()) continue;
      size_t used = 0;
      double v = 0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        throw ValidationError("sweep: bad beta value '" + token + "'");
      }
      if (used != token.size()) throw ValidationError("sweep: bad beta value '" + token + "'");
      betas.push_back(v);
    }
  }
  GtInstance instance = [&] {
    if (!o.input.empty()) {
      const BoundInput in = load_bound_input(o.input);
      auto b = herm_list(in.b, "B");
      ContractionTuple tuple = tuple_from(in, b[0].dim(), false);
      return GtInstance{l_or_zero(in, tuple.cols()), std::move(tuple), std::move(b)};
    }
    RunConfig cfg = to_run_config(o);
    return sweep_instance_for_seed(cfg);
  }();
  std::vector<SweepRow> rows = run_sweep(instance, betas);
  if (o.format == "json")
    emit(sweep_to_json(rows), o.output);
  else if (o.format == "csv-summary")
    emit(sweep_to_csv(rows), o.output);
  else
    throw ValidationError("--format must be json or csv-summary");
  return 0;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_dims = true) {
  cmd->add_option("--trials", o.trials, "number of randomized trials");
  cmd->add_option("--seed", o.seed, "master seed (fallback: GTLAB_SEED, then 0)")
      ->each([&o](const std::string&) { o.seed_given = true; });
  if (with_dims) {
    cmd->add_option("--n-max", o.n_max, "cap on the row dimension n");
    cmd->add_option("--m-max", o.m_max, "cap on the column dimension m");
    cmd->add_option("--k-max", o.k_max, "cap on the tuple length k");
  }
  cmd->add_option("--tol", o.tol_override, "override the slack coefficient (default 1e-9)");
  cmd->add_option("--input", o.input, "input JSON file");
  cmd->add_option("--output", o.output, "write the report here instead of stdout");
  cmd->add_option("--format", o.format, "json or csv-summary");
  cmd->add_flag("--stress", o.stress, "raise the Hermitian scale cap from 4 to 50");
  cmd->add_option("--quad-nodes", o.quad_nodes, "Gauss-Legendre node count (default 64)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gtlab: randomized verification of multivariate trace inequalities"};
  app.require_subcommand(1);

  CommonOpts vopts, bopts, oopts, sopts;
  bool inject_violation = false, skip_validation = false;
  double cond_cap = tol::kQuadConditionCap;
  std::string betas = "0.1,0.5,1,2,5,10";

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", vopts.suite,
                     "all or one of: q, concavity, block-identity, lemma, gt-multi, "
                     "gt-logdiff, gt-extended, interpolation, expectation, reductions");
  add_common(verify, vopts);
  verify->add_flag("--inject-violation", inject_violation, "testing hook")->group("");

  CLI::App* bound = app.add_subcommand("bound", "evaluate one inequality on input matrices");
  bound->add_option("--suite", bopts.suite, "which inequality to evaluate");
  bopts.suite = "gt-multi";
  add_common(bound, bopts, /*with_dims=*/false);
  bound->add_flag("--skip-validation", skip_validation, "testing hook")->group("");

  CLI::App* oracle = app.add_subcommand("oracle", "cross-validate the differential oracles");
  add_common(oracle, oopts);
  oopts.trials = 200;
  oracle->add_option("--cond-cap", cond_cap, "conditioning cap of the ensemble (default 1e3)");

  CLI::App* sweep = app.add_subcommand("sweep", "free-energy bound over a beta grid");
  add_common(sweep, sopts);
  sweep->add_option("--betas", betas, "comma-separated beta grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(vopts, inject_violation);
    if (bound->parsed()) return cmd_bound(bopts, skip_validation);
    if (oracle->parsed()) return cmd_oracle(oopts, cond_cap);
    if (sweep->parsed()) return cmd_sweep(sopts, betas);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
