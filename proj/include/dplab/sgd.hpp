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
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dplab/losses.hpp"
#include "dplab/numerics.hpp"

namespace dplab {
namespace sgd {

enum class Regime {
  kSmoothGeneral,
  kSmoothLowNoise,
  kHoelderGeneral,
  kHoelderLowNoise,
};

std::string regime_name(Regime r);
Regime regime_from_name(const std::string& name);
bool is_regime_name(const std::string& name);

// Constant step size and iteration count for one run. Everything in this
// lab uses a constant eta; decaying schedules are out of scope.
struct Schedule {
  double eta = 0.0;
  int64_t T = 0;
  Regime regime = Regime::kSmoothGeneral;
  double c = 1.0;
};

// Builds the schedule for a regime:
//   smooth general:    eta = c min{1/sqrt(n), eps/sqrt(d log(1/delta))},
//                      T = n
//   smooth low-noise:  eta = c eps/sqrt(d log(1/delta)), T = n
//   hoelder general:   alpha >= 1/2 as smooth general; alpha < 1/2 uses
//                      eta = c min{n^{3(alpha-1)/(2(1+alpha))}, eps/...},
//                      T = ceil(n^{(2-alpha)/(1+alpha)})
//   hoelder low-noise: T = ceil(n^{2/(1+alpha)}),
//                      eta = c min{n^{(alpha^2+2alpha-3)/(2(1+alpha))},
//                                  n eps / (T sqrt(d log(1/delta)))}
// The result is always capped at min{2/L, 1}. Hoelder regimes require a
// Hoelder loss and smooth regimes a smooth one; mismatches throw.
Schedule make_schedule(Regime regime, int64_t n, int d, double epsilon,
                       double delta, const losses::SmoothnessClass& s,
                       double c = 1.0);

struct SgdConfig {
  double radius = std::numeric_limits<double>::infinity();
  Schedule schedule;
  double sigma2 = 0.0;  // per-coordinate noise variance; 0 = non-private
  uint64_t seed = 0;
  int64_t n = 0;
  int d = 0;
  // Empirical risk is recorded every `risk_stride` steps (plus the final
  // step). -1 selects the default max(1, T/256); 0 disables recording —
  // pairwise risk evaluation is O(n^2) and dominates long runs otherwise.
  int64_t risk_stride = -1;
};

struct RunReport {
  Vector w_priv;
  // (t, F_S(w_t)) at the recorded steps; w_t is the iterate before step t.
  std::vector<std::pair<int64_t, double>> iterate_risks;
  // F_S(w_priv); NaN when risk recording is disabled.
  double final_empirical_risk = std::numeric_limits<double>::quiet_NaN();
  double wall_time_sec = 0.0;
  uint64_t seed = 0;
};

// Projected noisy SGD from w_1 = 0: at each step sample one index
// uniformly, take the perturbed gradient step, project onto the radius
// ball. Returns the average of the T pre-step iterates w_1..w_T.
// Bit-reproducible given (config, data).
RunReport run_pointwise(const SgdConfig& config, const losses::PointwiseLoss& f,
                        const std::vector<losses::Example>& data);

// Pairwise variant: samples an ordered distinct pair per step and
// measures empirical risk over all n(n-1) ordered pairs.
RunReport run_pairwise(const SgdConfig& config, const losses::PairwiseLoss& f,
                       const std::vector<losses::Example>& data);

// Exact finite averages (compensated summation).
double empirical_risk(const losses::PointwiseLoss& f, const Vector& w,
                      const std::vector<losses::Example>& data);
double empirical_pairwise_risk(const losses::PairwiseLoss& f, const Vector& w,
                               const std::vector<losses::Example>& data);

// Low-level access to the same update loop the run engines use: observe
// is invoked with (t, w_t) for t = 1..T+1, i.e. with each pre-step
// iterate and finally with the post-run iterate. The stability estimator
// replays paired trajectories through this hook with shared streams.
using IterateObserver = std::function<void(int64_t, const Vector&)>;
void iterate_pointwise(const SgdConfig& config, const losses::PointwiseLoss& f,
                       const std::vector<losses::Example>& data,
                       const IterateObserver& observe);
void iterate_pairwise(const SgdConfig& config, const losses::PairwiseLoss& f,
                      const std::vector<losses::Example>& data,
                      const IterateObserver& observe);

}  // namespace sgd
}  // namespace dplab
