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

#pragma once

#include <optional>
#include <string>

#include "dplab/config.hpp"
#include "dplab/experiments.hpp"
#include "dplab/privacy.hpp"
#include "dplab/problems.hpp"
#include "dplab/sgd.hpp"

namespace dplab {
namespace run_setup {

// A validated single-run (or single-study) configuration: the problem,
// the schedule, and the noise level, either calibrated through the
// accountant or taken from an explicit sigma2_override. Built from a
// strict config document; every violation is reported at once.
struct RunSetup {
  problems::Problem problem;
  sgd::Regime regime = sgd::Regime::kSmoothGeneral;
  privacy::DpTarget target;
  int64_t n = 0;
  int d = 0;
  double c = 1.0;
  uint64_t seed = 0;
  int mc_runs = 50;
  int replacement_indices = 8;
  std::optional<double> sigma2_override;
  std::optional<privacy::Calibration> calibration;  // when calibrated
  sgd::SgdConfig sgd;
  std::string config_echo;
};

// Parses and validates a run config document. Keys:
//   problem (required), loss, loss_q, regime (required), n (required),
//   d, feature_bound, radius, margin, label_flip, oracle_samples,
//   epsilon (required), delta (required), c, seed, sigma2_override,
//   risk_stride, mc_runs, replacement_indices
// Unknown keys are rejected. When sigma2_override is absent the noise is
// calibrated via the beta scan and the result re-verified through the
// accountant; an infeasible target raises InfeasibleError.
RunSetup build_run_setup(const config::Config& cfg);

// Parses a sweep spec document (keys mirror SweepSpec fields).
experiments::SweepSpec build_sweep_spec(const config::Config& cfg);

}  // namespace run_setup
}  // namespace dplab
