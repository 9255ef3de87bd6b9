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

#include "dplab/run_setup.hpp"

#include <cmath>
#include <set>

namespace dplab {
namespace run_setup {

namespace {

std::string expected_loss_for(const std::string& problem) {
  if (problem == "realizable_least_squares") return "least_squares";
  if (problem == "separable_hinge") return "hinge_q";
  if (problem == "noisy_logistic") return "logistic";
  if (problem == "realizable_pairwise") return "pair_squared";
  if (problem == "separable_auc") return "auc_hinge_q";
  if (problem == "noisy_auc_logistic") return "auc_logistic";
  return "";
}

problems::ProblemParams read_problem_params(const config::Config& cfg,
                                            std::vector<std::string>& errors) {
  problems::ProblemParams params;
  params.d = static_cast<int>(cfg.get_integer("d", 10, errors));
  params.feature_bound = cfg.get_number("feature_bound", 1.0, errors);
  params.radius = cfg.get_number("radius", 1.0, errors);
  params.margin = cfg.get_number("margin", 0.2, errors);
  params.label_flip = cfg.get_number("label_flip", 0.1, errors);
  params.oracle_samples = cfg.get_integer("oracle_samples", 1000000, errors);
  if (params.d < 1) errors.push_back("d must be a positive integer");
  if (!(params.feature_bound > 0.0)) {
    errors.push_back("feature_bound must be positive");
  }
  if (!(params.radius > 0.0)) errors.push_back("radius must be positive");
  if (!(params.label_flip >= 0.0 && params.label_flip <= 0.5)) {
    errors.push_back("label_flip must lie in [0, 0.5]");
  }
  if (params.oracle_samples < 1000) {
    errors.push_back("oracle_samples must be at least 1000");
  }
  return params;
}

void check_problem_and_loss(const config::Config& cfg,
                            const std::string& problem_name,
                            std::vector<std::string>& errors) {
  if (!problems::is_problem_name(problem_name)) {
    errors.push_back("unknown problem '" + problem_name + "'");
    return;
  }
  std::string expected = expected_loss_for(problem_name);
  std::string loss = cfg.get_string("loss", expected, errors);
  if (!losses::is_pointwise_loss_name(loss) &&
      !losses::is_pairwise_loss_name(loss)) {
    errors.push_back("unknown loss '" + loss + "'");
  } else if (loss != expected) {
    errors.push_back("loss '" + loss + "' does not match problem '" +
                     problem_name + "' (expected '" + expected + "')");
  }
  double q = cfg.get_number("loss_q", 1.0, errors);
  if (q != 1.0) {
    errors.push_back(
        "loss_q: the builtin problem generators pair with q = 1");
  }
}

void check_regime_consistency(const std::string& regime_name,
                              const problems::Problem& problem,
                              std::vector<std::string>& errors) {
  bool smooth_regime = regime_name == "smooth_general" ||
                       regime_name == "smooth_lownoise";
  const losses::SmoothnessClass& s = problem.smoothness();
  if (smooth_regime && !s.is_smooth()) {
    errors.push_back("regime '" + regime_name +
                     "' requires a smooth loss, but problem '" +
                     problem.name + "' has alpha = " + format_double(s.alpha));
  }
  if (!smooth_regime && s.is_smooth()) {
    errors.push_back("regime '" + regime_name +
                     "' requires Hoelder smoothness with alpha in [0,1), "
                     "but problem '" +
                     problem.name + "' has a smooth loss (alpha = 1)");
  }
}

}  // namespace

RunSetup build_run_setup(const config::Config& cfg) {
  std::vector<std::string> errors;
  static const std::set<std::string> allowed = {
      "problem", "loss", "loss_q", "regime", "n", "d", "feature_bound",
      "radius", "margin", "label_flip", "oracle_samples", "epsilon", "delta",
      "c", "seed", "sigma2_override", "risk_stride", "mc_runs",
      "replacement_indices"};
  cfg.reject_unknown(allowed, errors);

  for (const char* key : {"problem", "regime", "n", "epsilon", "delta"}) {
    if (!cfg.has(key)) {
      errors.push_back(std::string("missing required key '") + key + "'");
    }
  }

  RunSetup setup;
  setup.config_echo = cfg.canonical_echo();

  std::string problem_name = cfg.get_string("problem", "", errors);
  std::string regime_name = cfg.get_string("regime", "smooth_general", errors);
  if (!sgd::is_regime_name(regime_name)) {
    errors.push_back("unknown regime '" + regime_name +
                     "' (expected smooth_general, smooth_lownoise, "
                     "holder_general or holder_lownoise)");
  }
  if (!problem_name.empty()) {
    check_problem_and_loss(cfg, problem_name, errors);
  }

  problems::ProblemParams params = read_problem_params(cfg, errors);

  setup.n = cfg.get_integer("n", 0, errors);
  setup.target.epsilon = cfg.get_number("epsilon", 1.0, errors);
  setup.target.delta = cfg.get_number("delta", 1e-5, errors);
  setup.c = cfg.get_number("c", 1.0, errors);
  setup.seed = static_cast<uint64_t>(cfg.get_integer("seed", 0, errors));
  setup.mc_runs = static_cast<int>(cfg.get_integer("mc_runs", 50, errors));
  setup.replacement_indices =
      static_cast<int>(cfg.get_integer("replacement_indices", 8, errors));
  int64_t risk_stride = cfg.get_integer("risk_stride", -1, errors);

  if (!(setup.target.epsilon > 0.0)) {
    errors.push_back("epsilon must be positive");
  }
  if (!(setup.target.delta > 0.0 && setup.target.delta < 1.0)) {
    errors.push_back("delta must lie in (0,1)");
  }
  if (!(setup.c > 0.0)) errors.push_back("c must be positive");
  bool pairwise = problems::problem_is_pairwise(problem_name);
  if (setup.n < (pairwise ? 2 : 1)) {
    errors.push_back(pairwise ? "pairwise learning needs n >= 2"
                              : "n must be a positive integer");
  }
  if (setup.mc_runs < 1) errors.push_back("mc_runs must be >= 1");
  if (setup.replacement_indices < 1) {
    errors.push_back("replacement_indices must be >= 1");
  }
  if (cfg.has("sigma2_override")) {
    double s2 = cfg.get_number("sigma2_override", 0.0, errors);
    if (s2 < 0.0) {
      errors.push_back("sigma2_override must be >= 0");
    } else {
      setup.sigma2_override = s2;
    }
  }
  config::raise_if_errors(errors);

  try {
    setup.problem = problems::make_problem(problem_name, params,
                                           derive_seed(setup.seed, 7, 7));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("configuration invalid:\n  - ") + e.what());
  }
  setup.d = params.d;
  check_regime_consistency(regime_name, setup.problem, errors);
  config::raise_if_errors(errors);
  setup.regime = sgd::regime_from_name(regime_name);

  sgd::Schedule schedule =
      sgd::make_schedule(setup.regime, setup.n, setup.d, setup.target.epsilon,
                         setup.target.delta, setup.problem.smoothness(),
                         setup.c);

  double sigma2 = 0.0;
  if (setup.sigma2_override) {
    sigma2 = *setup.sigma2_override;
  } else {
    privacy::Mechanism mech = pairwise ? privacy::Mechanism::kPairwise
                                       : privacy::Mechanism::kPointwise;
    privacy::Calibration cal =
        privacy::find_beta(setup.n, schedule.T, setup.problem.lipschitz(),
                           setup.target, mech);
    if (!cal.feasible) {
      std::string hint;
      if (setup.n > 18) {
        hint = "; for T = n and delta = 1/n^2 a sufficient epsilon is " +
               format_double(privacy::min_epsilon_for_beta(setup.n));
      }
      throw InfeasibleError(
          "no feasible noise calibration for n = " + std::to_string(setup.n) +
          ", T = " + std::to_string(schedule.T) + ", epsilon = " +
          format_double(setup.target.epsilon) + hint +
          "; pass sigma2_override to run without a privacy guarantee");
    }
    auto [eps_achieved, delta_achieved] = privacy::verify_run_privacy(
        cal, setup.n, schedule.T, setup.problem.lipschitz());
    if (eps_achieved > setup.target.epsilon + 1e-12) {
      throw InfeasibleError("accountant audit failed: achieved epsilon " +
                            format_double(eps_achieved) + " exceeds target " +
                            format_double(setup.target.epsilon));
    }
    setup.calibration = cal;
    sigma2 = cal.sigma2;
  }

  setup.sgd.radius = setup.problem.radius;
  setup.sgd.schedule = schedule;
  setup.sgd.sigma2 = sigma2;
  setup.sgd.seed = setup.seed;
  setup.sgd.n = setup.n;
  setup.sgd.d = setup.d;
  setup.sgd.risk_stride = risk_stride;
  return setup;
}

experiments::SweepSpec build_sweep_spec(const config::Config& cfg) {
  std::vector<std::string> errors;
  static const std::set<std::string> allowed = {
      "name", "problem", "loss", "loss_q", "regime", "n_values", "d",
      "feature_bound", "radius", "margin", "label_flip", "oracle_samples",
      "epsilon", "delta", "c_values", "mc_runs", "seed_base",
      "force_sigma0"};
  cfg.reject_unknown(allowed, errors);
  for (const char* key :
       {"problem", "regime", "n_values", "epsilon", "delta"}) {
    if (!cfg.has(key)) {
      errors.push_back(std::string("missing required key '") + key + "'");
    }
  }

  experiments::SweepSpec spec;
  spec.name = cfg.get_string("name", "sweep", errors);
  spec.problem = cfg.get_string("problem", "", errors);
  if (!spec.problem.empty()) {
    check_problem_and_loss(cfg, spec.problem, errors);
  }
  std::string regime_name = cfg.get_string("regime", "smooth_general", errors);
  if (!sgd::is_regime_name(regime_name)) {
    errors.push_back("unknown regime '" + regime_name + "'");
  }
  spec.params = read_problem_params(cfg, errors);
  spec.n_values = cfg.get_integer_list("n_values", errors);
  spec.mc_runs = static_cast<int>(cfg.get_integer("mc_runs", 50, errors));
  spec.epsilon = cfg.get_number("epsilon", 1.0, errors);
  spec.delta = cfg.get_number("delta", 1e-5, errors);
  if (cfg.has("c_values")) {
    spec.c_values = cfg.get_number_list("c_values", errors);
  }
  spec.seed_base =
      static_cast<uint64_t>(cfg.get_integer("seed_base", 0, errors));
  spec.force_sigma0 = cfg.get_bool("force_sigma0", false, errors);
  if (!(spec.epsilon > 0.0)) errors.push_back("epsilon must be positive");
  if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
    errors.push_back("delta must lie in (0,1)");
  }
  config::raise_if_errors(errors);
  spec.regime = sgd::regime_from_name(regime_name);

  // Regime/loss consistency needs the loss class but not the oracle; a
  // tiny probe instance is enough to reject mismatches early.
  problems::ProblemParams probe = spec.params;
  probe.oracle_samples = 1000;
  problems::Problem probe_problem;
  try {
    probe_problem = problems::make_problem(spec.problem, probe, 1);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("configuration invalid:\n  - ") + e.what());
  }
  check_regime_consistency(regime_name, probe_problem, errors);
  config::raise_if_errors(errors);

  spec.validate();
  return spec;
}

}  // namespace run_setup
}  // namespace dplab
