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

#include <cstdint>
#include <utility>
#include <vector>

#include "dplab/problems.hpp"
#include "dplab/sgd.hpp"

namespace dplab {
namespace analysis {

// Everything the closed-form bound calculators consume. The per-iterate
// expectation terms are Monte-Carlo means measured from the same runs the
// bound is confronted with: E[F_S(w_j)] for the smooth bounds and
// E[F_S^{2 alpha/(1+alpha)}(w_j)] for the Hoelder ones (the plug-in
// estimate of the power is the bound's own target).
struct BoundInputs {
  int64_t n = 0;
  int64_t T = 0;
  int d = 0;
  double eta = 0.0;
  double sigma2 = 0.0;

  bool smooth = true;
  double L = 0.0;
  double G = 0.0;
  double alpha = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;  // NaN for smooth losses

  double w_star_norm = 0.0;
  double f_star_empirical = 0.0;        // F_S(w*)
  std::vector<double> risk_terms;       // per-iterate expectation terms

  // Fills the loss-derived constants.
  static BoundInputs from_smoothness(const losses::SmoothnessClass& s,
                                     double M, double G);
};

// On-average squared parameter displacement upper bounds, evaluated at
// iteration t with the constant step size in `inputs`:
//   smooth pointwise:   (8e(1+t/n) L / n) sum_{j<=t} eta^2 E[F_S(w_j)]
//   hoelder pointwise:  c3^2 e sum eta^{2/(1-alpha)}
//                       + (4e c1^2 (1+t/n)/n) sum eta^2 E[F_S^{...}(w_j)]
//   smooth pairwise:    (16 L (1+2t/n) e / n) sum eta^2 E[F_S(w_j)]
//   hoelder pairwise:   e * c3^2 e sum eta^{2/(1-alpha)}
//                       + (8e c1^2 (1+2t/n)/n) sum eta^2 E[F_S^{...}(w_j)]
// (the pairwise Hoelder constant carries an extra factor sqrt(e) inside
// c3, hence the leading e).
double stability_bound_smooth(const BoundInputs& in, int64_t t);
double stability_bound_holder(const BoundInputs& in, int64_t t);
double stability_bound_pairwise_smooth(const BoundInputs& in, int64_t t);
double stability_bound_pairwise_holder(const BoundInputs& in, int64_t t);

// Upper bound on sum_{j<=t} eta E[F_S(w_j) - F_S(w*)]:
//   smooth:  (1/2 + 3 L eta) |w*|^2 + 3L sum (3 eta^3 sigma2 d
//            + 2 eta^2 F_S(w*)) + sum 3 eta^2 sigma2 d
//   hoelder: (1/2)|w*|^2 + (3/4) c1^2 (sum eta^2)^{(1-a)/(1+a)} [2 eta
//            |w*|^2 + sum(6 eta^3 sigma2 d + 4 eta^2 F_S(w*)
//            + 3 c2 eta^{(3-a)/(1-a)})]^{2a/(1+a)} + sum 3 eta^2 sigma2 d
double optimization_bound(const BoundInputs& in, int64_t t, bool smooth);

struct StabilityEstimate {
  int64_t t = 0;
  double value = 0.0;  // mean of |w_t - w_t^{(i)}|^2 over runs and indices
  int mc_runs = 0;
  double std_err = 0.0;
};

struct StabilityStudy {
  std::vector<StabilityEstimate> estimates;  // at t in {T/4, T/2, T}
  // Monte-Carlo means over the base runs, one entry per iteration:
  std::vector<double> mean_risk;        // E[F_S(w_j)]
  std::vector<double> mean_risk_power;  // E[F_S^{2a/(1+a)}(w_j)]
  double mean_f_star_empirical = 0.0;   // E[F_S(w_star)]
};

// Paired-trajectory stability estimator. Per Monte-Carlo run: draw S and
// replacement examples, pick `replacement_indices` positions, and rerun
// the trajectory for each single replacement with the index and noise
// streams shared with the base run (the added noise is identical across
// neighboring datasets, so it cancels from the displacement). Records
// squared displacements at t in {T/4, T/2, T}. With `replace_with_same`
// the replacement equals the original example and the estimate must be
// exactly zero.
StabilityStudy estimate_stability(const problems::Problem& problem,
                                  const sgd::SgdConfig& config, int mc_runs,
                                  int replacement_indices, uint64_t seed,
                                  int jobs = 1,
                                  bool replace_with_same = false);

// Monte-Carlo mean and standard error of F(w_priv) - F_S(w_priv).
std::pair<double, double> estimate_generalization_gap(
    const problems::Problem& problem, const sgd::SgdConfig& config,
    int mc_runs, uint64_t seed, int jobs = 1);

// Per-iterate Monte-Carlo risk means from mc_runs fresh runs, without
// paired replacements; feeds the closed-form bound calculators.
struct RiskProfile {
  std::vector<double> mean_risk;        // E[F_S(w_j)], j = 1..T
  std::vector<double> mean_risk_power;  // E[F_S^{2a/(1+a)}(w_j)]
  double mean_f_star_empirical = 0.0;   // E[F_S(w_star)]
};
RiskProfile collect_risk_profile(const problems::Problem& problem,
                                 const sgd::SgdConfig& config, int mc_runs,
                                 uint64_t seed, int jobs = 1);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::vector<std::pair<double, double>> points;  // (log n, log excess)
};

// Ordinary least squares of log(excess risk) on log(n). Requires >= 4
// points with strictly positive excess values; nonpositive values raise
// an error suggesting more Monte-Carlo runs.
RateFit fit_rate(const std::vector<std::pair<double, double>>& n_excess);

}  // namespace analysis
}  // namespace dplab
