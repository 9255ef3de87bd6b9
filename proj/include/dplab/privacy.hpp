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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dplab/common.hpp"

namespace dplab {
namespace privacy {

// Target (epsilon, delta). epsilon > 0, delta in (0, 1).
struct DpTarget {
  double epsilon = 1.0;
  double delta = 1e-5;

  void validate() const;
};

// A (lambda, rho) Renyi divergence bound, lambda > 1, rho >= 0.
struct RdpClaim {
  double lambda = 2.0;
  double rho = 0.0;
};

// l2 sensitivity of a deterministic map under one-record replacement.
struct Sensitivity {
  double delta2 = 0.0;
};

enum class Mechanism { kPointwise, kPairwise };

// Per-run noise calibration. When `feasible` is set, (beta, sigma2,
// lambda) jointly satisfy the validity window of the subsampled Gaussian
// bound at this mechanism's sampling rate, so the accountant's guarantee
// applies end to end. Infeasibility is a reported state here; launching a
// run with an infeasible calibration is what raises an error.
struct Calibration {
  double beta = 0.0;
  double sigma2 = 0.0;
  double lambda = 0.0;
  bool feasible = false;
  Mechanism which = Mechanism::kPointwise;
  DpTarget target;
};

// One-example replacement changes the sampled (pair) gradient by at most
// the sum of two gradient norms, so the sensitivity is 2G.
Sensitivity gradient_sensitivity(double G);

// Returns the reason the subsampled Gaussian bound does not apply at
// (p, lambda, sigma2, delta2), or nullopt when it does. Both the
// calibrators and the auditor route through this single check so they can
// never disagree on borderline arithmetic. Conditions:
//   sigma^2 >= 0.67 delta2^2
//   lambda - 1 <= (2 sigma^2 / (3 delta2^2)) *
//                 log(1 / (lambda p (1 + sigma^2/delta2^2)))
std::optional<std::string> subsampled_rdp_violation(double p, double lambda,
                                                    Sensitivity delta2,
                                                    double sigma2);

// (lambda, 3.5 p^2 lambda delta2^2 / sigma^2) for the Gaussian mechanism
// on a uniform subsample at rate p. Throws InfeasibleError naming the
// violated condition when the validity window does not hold; a number
// outside the window would be an unsound privacy claim.
RdpClaim subsampled_rdp(double p, double lambda, Sensitivity delta2,
                        double sigma2);

// Adaptive composition: claims at a common lambda sum their rho.
// An empty sequence composes to the perfect claim (lambda = inf, rho = 0).
RdpClaim compose(const std::vector<RdpClaim>& claims);

// epsilon = rho + log(1/delta) / (lambda - 1).
double rdp_to_dp(const RdpClaim& claim, double delta);

// Noise for the pointwise mechanism at a fixed beta in (0, 1):
//   lambda = log(1/delta) / ((1-beta) epsilon) + 1
//   sigma^2 = 14 G^2 T / (beta n^2 epsilon) * lambda
// The feasible flag reports whether the validity window holds at p = 1/n.
Calibration calibrate_pointwise(int64_t n, int64_t T, double G,
                                const DpTarget& target, double beta);

// Pairwise variant: coefficient 56 in place of 14, sampling rate p = 2/n.
Calibration calibrate_pairwise(int64_t n, int64_t T, double G,
                               const DpTarget& target, double beta);

// Deterministic beta scan grid: 0.001..0.999 in steps of 0.001, extended
// below 0.001 with log-spaced points down to 1e-7. The extension matters:
// at T = n and large n*epsilon the whole feasible region sits below 1e-3
// (the sigma^2 floor forces beta <= 14 lambda / (2.68 n epsilon)).
const std::vector<double>& beta_grid();

// Scans beta_grid() and returns the feasible calibration minimizing
// sigma^2, or an infeasible report when no grid point qualifies.
Calibration find_beta(int64_t n, int64_t T, double G, const DpTarget& target,
                      Mechanism which);

// Sufficient epsilon threshold for a feasible beta to exist when T = n
// and delta = 1/n^2 (requires n > 18):
//   (7 (n^{1/3} - 1) + 4 log(n) n + 7) / (2 n (n^{1/3} - 1)).
double min_epsilon_for_beta(int64_t n);

// Re-derives the end-to-end (epsilon, delta) of a run from first
// principles: per-step subsampled RDP at p = 1/n (or 2/n), composed over
// T steps, converted at the calibration's lambda. Throws InfeasibleError
// if the calibration is not feasible. The returned epsilon must not
// exceed the target beyond arithmetic slack.
std::pair<double, double> verify_run_privacy(const Calibration& cal,
                                             int64_t n, int64_t T, double G);

}  // namespace privacy
}  // namespace dplab
