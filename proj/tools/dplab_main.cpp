// Copyright 2026 The dplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dplab/analysis.hpp"
#include "dplab/config.hpp"
#include "dplab/experiments.hpp"
#include "dplab/parallel.hpp"
#include "dplab/privacy.hpp"
#include "dplab/run_setup.hpp"
#include "dplab/selftest.hpp"

namespace {

using dplab::format_double;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "dplab 0.1.0";

// Exit codes are a stable contract: 0 success, 2 config error, 3 privacy
// infeasible, 4 runtime failure.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitRuntime = 4;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dplab::ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << content;
}

dplab::config::Config load_config(const std::string& path) {
  return dplab::config::Config::parse(read_text_file(path));
}

std::string calibration_row(const dplab::privacy::Calibration& cal, int64_t n,
                            int64_t T, double G) {
  std::string eps_achieved = "nan";
  if (cal.feasible) {
    eps_achieved = format_double(
        dplab::privacy::verify_run_privacy(cal, n, T, G).first);
  }
  return format_double(cal.beta) + "," + format_double(cal.lambda) + "," +
         format_double(cal.sigma2) + "," + (cal.feasible ? "1" : "0") + "," +
         eps_achieved + "\n";
}

int cmd_calibrate(int64_t n, int64_t T, double G, double epsilon, double delta,
                  const std::string& which, double beta,
                  const std::string& out_path) {
  dplab::privacy::DpTarget target{epsilon, delta};
  target.validate();
  auto mech = which == "pairwise" ? dplab::privacy::Mechanism::kPairwise
                                  : dplab::privacy::Mechanism::kPointwise;
  auto calibrate = [&](double b) {
    return mech == dplab::privacy::Mechanism::kPointwise
               ? dplab::privacy::calibrate_pointwise(n, T, G, target, b)
               : dplab::privacy::calibrate_pairwise(n, T, G, target, b);
  };

  std::string csv = "beta,lambda,sigma2,feasible,eps_achieved\n";
  if (beta > 0.0) {
    csv += calibration_row(calibrate(beta), n, T, G);
  } else {
    for (double b : dplab::privacy::beta_grid()) {
      csv += calibration_row(calibrate(b), n, T, G);
    }
    dplab::privacy::Calibration best =
        dplab::privacy::find_beta(n, T, G, target, mech);
    if (best.feasible) {
      std::cerr << "best feasible: beta = " << format_double(best.beta)
                << ", sigma2 = " << format_double(best.sigma2) << "\n";
    } else {
      std::cerr << "no feasible beta on the scan grid\n";
    }
  }
  write_output(out_path, csv);
  return kExitOk;
}

ordered_json run_report_json(const dplab::run_setup::RunSetup& setup,
                             const dplab::sgd::RunReport& report) {
  ordered_json j;
  j["problem"] = setup.problem.name;
  j["loss"] = setup.problem.kind == dplab::problems::Problem::Kind::kPointwise
                  ? setup.problem.loss->name
                  : setup.problem.pair_loss->name;
  j["regime"] = dplab::sgd::regime_name(setup.regime);
  j["n"] = setup.n;
  j["d"] = setup.d;
  j["T"] = setup.sgd.schedule.T;
  j["eta"] = setup.sgd.schedule.eta;
  j["c"] = setup.c;
  j["radius"] = setup.sgd.radius;
  j["seed"] = setup.seed;
  j["sigma2"] = setup.sgd.sigma2;
  j["epsilon"] = setup.target.epsilon;
  j["delta"] = setup.target.delta;
  if (setup.calibration) {
    const auto& cal = *setup.calibration;
    auto [eps_achieved, delta_achieved] = dplab::privacy::verify_run_privacy(
        cal, setup.n, setup.sgd.schedule.T, setup.problem.lipschitz());
    ordered_json cj;
    cj["beta"] = cal.beta;
    cj["lambda"] = cal.lambda;
    cj["sigma2"] = cal.sigma2;
    cj["feasible"] = cal.feasible;
    cj["eps_achieved"] = eps_achieved;
    j["calibration"] = cj;
  } else {
    j["sigma2_override"] = setup.sgd.sigma2;
  }
  j["w_priv"] = report.w_priv;
  ordered_json risks = ordered_json::array();
  for (const auto& [t, risk] : report.iterate_risks) {
    risks.push_back(ordered_json::array({t, risk}));
  }
  j["iterate_risks"] = risks;
  if (!std::isnan(report.final_empirical_risk)) {
    j["final_empirical_risk"] = report.final_empirical_risk;
  }
  j["excess_population_risk"] =
      setup.problem.population_risk(report.w_priv) - setup.problem.f_star;
  return j;
}

int cmd_train(const std::string& config_path, const std::string& out_path,
              int64_t seed_override) {
  dplab::config::Config cfg = load_config(config_path);
  dplab::run_setup::RunSetup setup = dplab::run_setup::build_run_setup(cfg);
  if (seed_override >= 0) {
    setup.seed = static_cast<uint64_t>(seed_override);
    setup.sgd.seed = setup.seed;
  }
  auto data =
      dplab::problems::draw_dataset(setup.problem, setup.n, setup.seed);
  dplab::sgd::RunReport report;
  if (setup.problem.kind == dplab::problems::Problem::Kind::kPairwise) {
    report = dplab::sgd::run_pairwise(setup.sgd, *setup.problem.pair_loss,
                                      data);
  } else {
    report = dplab::sgd::run_pointwise(setup.sgd, *setup.problem.loss, data);
  }
  write_output(out_path, run_report_json(setup, report).dump(2) + "\n");
  std::cerr << "train: " << format_double(report.wall_time_sec) << " s\n";
  return kExitOk;
}

int cmd_stability(const std::string& config_path, const std::string& out_path,
                  int64_t seed_override, int jobs) {
  dplab::config::Config cfg = load_config(config_path);
  dplab::run_setup::RunSetup setup = dplab::run_setup::build_run_setup(cfg);
  if (seed_override >= 0) setup.seed = static_cast<uint64_t>(seed_override);

  dplab::analysis::StabilityStudy study = dplab::analysis::estimate_stability(
      setup.problem, setup.sgd, setup.mc_runs, setup.replacement_indices,
      setup.seed, jobs);

  const bool pairwise =
      setup.problem.kind == dplab::problems::Problem::Kind::kPairwise;
  const bool smooth = setup.problem.smoothness().is_smooth();
  dplab::analysis::BoundInputs in = dplab::analysis::BoundInputs::from_smoothness(
      setup.problem.smoothness(),
      pairwise ? setup.problem.pair_loss->M : setup.problem.loss->M,
      setup.problem.lipschitz());
  in.n = setup.n;
  in.T = setup.sgd.schedule.T;
  in.d = setup.d;
  in.eta = setup.sgd.schedule.eta;
  in.sigma2 = setup.sgd.sigma2;
  in.w_star_norm = dplab::numerics::norm(setup.problem.w_star);
  in.f_star_empirical = study.mean_f_star_empirical;
  in.risk_terms = smooth ? study.mean_risk : study.mean_risk_power;

  std::string csv = "t,estimate,std_err,mc_runs,bound\n";
  for (const auto& est : study.estimates) {
    double bound;
    if (pairwise) {
      bound = smooth
                  ? dplab::analysis::stability_bound_pairwise_smooth(in, est.t)
                  : dplab::analysis::stability_bound_pairwise_holder(in, est.t);
    } else {
      bound = smooth ? dplab::analysis::stability_bound_smooth(in, est.t)
                     : dplab::analysis::stability_bound_holder(in, est.t);
    }
    csv += std::to_string(est.t) + "," + format_double(est.value) + "," +
           format_double(est.std_err) + "," + std::to_string(est.mc_runs) +
           "," + format_double(bound) + "\n";
  }
  write_output(out_path, csv);
  return kExitOk;
}

int cmd_gap(const std::string& config_path, const std::string& out_path,
            int64_t seed_override, int jobs) {
  dplab::config::Config cfg = load_config(config_path);
  dplab::run_setup::RunSetup setup = dplab::run_setup::build_run_setup(cfg);
  if (seed_override >= 0) setup.seed = static_cast<uint64_t>(seed_override);
  auto [mean, stderr_] = dplab::analysis::estimate_generalization_gap(
      setup.problem, setup.sgd, setup.mc_runs, setup.seed, jobs);
  std::string csv = "gap_mean,std_err,mc_runs\n";
  csv += format_double(mean) + "," + format_double(stderr_) + "," +
         std::to_string(setup.mc_runs) + "\n";
  write_output(out_path, csv);
  return kExitOk;
}

int cmd_bounds(const std::string& config_path, const std::string& out_path,
               int64_t seed_override, int jobs) {
  dplab::config::Config cfg = load_config(config_path);
  dplab::run_setup::RunSetup setup = dplab::run_setup::build_run_setup(cfg);
  if (seed_override >= 0) setup.seed = static_cast<uint64_t>(seed_override);

  dplab::analysis::RiskProfile profile = dplab::analysis::collect_risk_profile(
      setup.problem, setup.sgd, setup.mc_runs, setup.seed, jobs);

  const bool pairwise =
      setup.problem.kind == dplab::problems::Problem::Kind::kPairwise;
  const bool smooth = setup.problem.smoothness().is_smooth();
  dplab::analysis::BoundInputs in = dplab::analysis::BoundInputs::from_smoothness(
      setup.problem.smoothness(),
      pairwise ? setup.problem.pair_loss->M : setup.problem.loss->M,
      setup.problem.lipschitz());
  in.n = setup.n;
  in.T = setup.sgd.schedule.T;
  in.d = setup.d;
  in.eta = setup.sgd.schedule.eta;
  in.sigma2 = setup.sgd.sigma2;
  in.w_star_norm = dplab::numerics::norm(setup.problem.w_star);
  in.f_star_empirical = profile.mean_f_star_empirical;
  in.risk_terms = smooth ? profile.mean_risk : profile.mean_risk_power;

  const int64_t T = setup.sgd.schedule.T;
  std::string csv = "t,stability_bound,optimization_bound\n";
  for (int64_t t : {std::max<int64_t>(1, T / 4), std::max<int64_t>(1, T / 2),
                    T}) {
    double sb;
    if (pairwise) {
      sb = smooth ? dplab::analysis::stability_bound_pairwise_smooth(in, t)
                  : dplab::analysis::stability_bound_pairwise_holder(in, t);
    } else {
      sb = smooth ? dplab::analysis::stability_bound_smooth(in, t)
                  : dplab::analysis::stability_bound_holder(in, t);
    }
    double ob = dplab::analysis::optimization_bound(in, t, smooth);
    csv += std::to_string(t) + "," + format_double(sb) + "," +
           format_double(ob) + "\n";
  }
  write_output(out_path, csv);
  return kExitOk;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_dir,
              bool dry_run, int jobs) {
  dplab::config::Config cfg = load_config(spec_path);
  dplab::experiments::SweepSpec spec = dplab::run_setup::build_sweep_spec(cfg);
  spec.jobs = jobs;

  if (dry_run) {
    dplab::problems::ProblemParams probe_params = spec.params;
    probe_params.oracle_samples = 1000;
    dplab::problems::Problem probe = dplab::problems::make_problem(
        spec.problem, probe_params, dplab::derive_seed(spec.seed_base, 7, 7));
    auto mech = probe.kind == dplab::problems::Problem::Kind::kPairwise
                    ? dplab::privacy::Mechanism::kPairwise
                    : dplab::privacy::Mechanism::kPointwise;
    std::string csv = "n,beta,lambda,sigma2,feasible,eps_achieved\n";
    for (int64_t n : spec.n_values) {
      dplab::sgd::Schedule sched = dplab::sgd::make_schedule(
          spec.regime, n, spec.params.d, spec.epsilon, spec.delta,
          probe.smoothness(), 1.0);
      dplab::privacy::Calibration cal = dplab::privacy::find_beta(
          n, sched.T, probe.lipschitz(), {spec.epsilon, spec.delta}, mech);
      csv += std::to_string(n) + "," +
             calibration_row(cal, n, sched.T, probe.lipschitz());
    }
    std::cout << csv;
    return kExitOk;
  }

  if (out_dir.empty()) {
    throw dplab::ConfigError("sweep: --out is required unless --dry-run");
  }
  dplab::experiments::SweepResult result =
      dplab::experiments::run_sweep(spec, out_dir + "/records");
  dplab::experiments::emit_report(result, spec, out_dir);
  for (const auto& block : result.blocks) {
    std::cerr << "c = " << format_double(block.c)
              << ": slope = " << format_double(block.fit.slope)
              << ", r2 = " << format_double(block.fit.r2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private SGD laboratory"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // calibrate
  auto* calibrate = app.add_subcommand(
      "calibrate", "Scan beta and print the noise calibration table "
                   "(CSV: beta,lambda,sigma2,feasible,eps_achieved)");
  int64_t cal_n = 0, cal_T = 0;
  double cal_G = 1.0, cal_eps = 1.0, cal_delta = 1e-5, cal_beta = -1.0;
  std::string cal_which = "pointwise", cal_out;
  calibrate->add_option("--n", cal_n, "Dataset size")->required();
  calibrate->add_option("--T", cal_T,
                        "Iteration count (defaults to n when omitted)");
  calibrate->add_option("--G", cal_G, "Certified Lipschitz constant");
  calibrate->add_option("--epsilon", cal_eps, "Target epsilon")->required();
  calibrate->add_option("--delta", cal_delta, "Target delta")->required();
  calibrate->add_option("--which", cal_which, "pointwise or pairwise")
      ->check(CLI::IsMember({"pointwise", "pairwise"}));
  calibrate->add_option("--beta", cal_beta,
                        "Evaluate a single beta instead of the scan grid");
  calibrate->add_option("--out", cal_out, "Write CSV here instead of stdout");

  // min-eps
  auto* mineps = app.add_subcommand(
      "min-eps", "Sufficient epsilon for feasibility at T = n, delta = 1/n^2");
  int64_t mineps_n = 0;
  mineps->add_option("--n", mineps_n, "Dataset size (> 18)")->required();

  // config-driven subcommands
  std::string cfg_path, out_path;
  int64_t seed_override = -1;
  int jobs = dplab::default_jobs();

  auto add_config_opts = [&](CLI::App* sub, bool with_jobs) {
    sub->add_option("--config", cfg_path, "Run config file")->required();
    sub->add_option("--out", out_path, "Write output here instead of stdout");
    sub->add_option("--seed", seed_override,
                    "Override the config's seed (all randomness flows from "
                    "it)");
    if (with_jobs) {
      sub->add_option("--jobs", jobs, "Worker threads for Monte-Carlo runs");
    }
  };

  auto* train = app.add_subcommand(
      "train", "One calibrated run; emits a JSON run report");
  add_config_opts(train, false);
  auto* stability = app.add_subcommand(
      "stability", "Paired-trajectory stability estimate "
                   "(CSV: t,estimate,std_err,mc_runs,bound)");
  add_config_opts(stability, true);
  auto* gap = app.add_subcommand(
      "gap", "Generalization gap estimate (CSV: gap_mean,std_err,mc_runs)");
  add_config_opts(gap, true);
  auto* bounds = app.add_subcommand(
      "bounds", "Closed-form bound calculators at t in {T/4, T/2, T} "
                "(CSV: t,stability_bound,optimization_bound)");
  add_config_opts(bounds, true);

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "Excess-risk-vs-n study from a spec file");
  std::string sweep_spec_path, sweep_out;
  bool dry_run = false;
  sweep->add_option("--spec", sweep_spec_path, "Sweep spec file")->required();
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_flag("--dry-run", dry_run, "Print the calibration table only");
  sweep->add_option("--jobs", jobs, "Worker threads for Monte-Carlo runs");

  // selftest
  auto* selftest = app.add_subcommand(
      "selftest", "Fast invariant suite; nonzero exit on any failure");
  bool corrupt_l = false;
  selftest
      ->add_flag("--corrupt-l-certificate", corrupt_l,
                 "Negative control: halve certified L values (must fail)")
      ->group("");  // test hook, hidden from help

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (calibrate->parsed()) {
      if (cal_T == 0) cal_T = cal_n;
      return cmd_calibrate(cal_n, cal_T, cal_G, cal_eps, cal_delta, cal_which,
                           cal_beta, cal_out);
    }
    if (mineps->parsed()) {
      std::cout << format_double(dplab::privacy::min_epsilon_for_beta(mineps_n))
                << "\n";
      return kExitOk;
    }
    if (train->parsed()) return cmd_train(cfg_path, out_path, seed_override);
    if (stability->parsed()) {
      return cmd_stability(cfg_path, out_path, seed_override, jobs);
    }
    if (gap->parsed()) return cmd_gap(cfg_path, out_path, seed_override, jobs);
    if (bounds->parsed()) {
      return cmd_bounds(cfg_path, out_path, seed_override, jobs);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_spec_path, sweep_out, dry_run, jobs);
    }
    if (selftest->parsed()) {
      return dplab::selftest::run(corrupt_l, std::cout) == 0 ? kExitOk
                                                             : kExitRuntime;
    }
  } catch (const dplab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const dplab::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
