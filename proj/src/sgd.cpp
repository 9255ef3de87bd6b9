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

#include "dplab/sgd.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace dplab {
namespace sgd {

namespace {

using losses::Example;
using losses::SmoothnessClass;

double schedule_cap(const SmoothnessClass& s) {
  return std::min(2.0 / s.L, 1.0);
}

int64_t resolve_stride(const SgdConfig& config) {
  if (config.risk_stride >= 0) return config.risk_stride;
  return std::max<int64_t>(1, config.schedule.T / 256);
}

void validate_config(const SgdConfig& config, int64_t min_n) {
  if (config.n < min_n) {
    throw std::invalid_argument(min_n == 2 ? "pairwise learning needs n >= 2"
                                           : "run: n must be >= 1");
  }
  if (config.d < 1) throw std::invalid_argument("run: d must be >= 1");
  if (config.sigma2 < 0.0) {
    throw std::invalid_argument("run: sigma2 must be >= 0");
  }
  if (!(config.schedule.eta >= 0.0) || config.schedule.T < 1) {
    throw std::invalid_argument("run: schedule must have eta >= 0 and T >= 1");
  }
  if (!(config.radius > 0.0)) {
    throw std::invalid_argument("run: radius must be > 0");
  }
}

}  // namespace

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::kSmoothGeneral:
      return "smooth_general";
    case Regime::kSmoothLowNoise:
      return "smooth_lownoise";
    case Regime::kHoelderGeneral:
      return "holder_general";
    case Regime::kHoelderLowNoise:
      return "holder_lownoise";
  }
  throw std::logic_error("unreachable");
}

Regime regime_from_name(const std::string& name) {
  if (name == "smooth_general") return Regime::kSmoothGeneral;
  if (name == "smooth_lownoise") return Regime::kSmoothLowNoise;
  if (name == "holder_general") return Regime::kHoelderGeneral;
  if (name == "holder_lownoise") return Regime::kHoelderLowNoise;
  throw std::invalid_argument("unknown regime: " + name);
}

bool is_regime_name(const std::string& name) {
  return name == "smooth_general" || name == "smooth_lownoise" ||
         name == "holder_general" || name == "holder_lownoise";
}

Schedule make_schedule(Regime regime, int64_t n, int d, double epsilon,
                       double delta, const SmoothnessClass& s, double c) {
  if (n < 1) throw std::invalid_argument("make_schedule: n must be >= 1");
  if (d < 1) throw std::invalid_argument("make_schedule: d must be >= 1");
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("make_schedule: epsilon must be > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("make_schedule: delta must lie in (0,1)");
  }
  if (!(c > 0.0)) throw std::invalid_argument("make_schedule: c must be > 0");

  const bool smooth_regime =
      regime == Regime::kSmoothGeneral || regime == Regime::kSmoothLowNoise;
  if (smooth_regime && !s.is_smooth()) {
    throw std::invalid_argument(
        "make_schedule: smooth regime requires a smooth loss");
  }
  if (!smooth_regime && s.is_smooth()) {
    throw std::invalid_argument(
        "make_schedule: holder regime requires a Hoelder loss");
  }

  const double nd = static_cast<double>(n);
  const double priv = epsilon / std::sqrt(static_cast<double>(d) *
                                          std::log(1.0 / delta));
  const double a = s.alpha;

  Schedule sch;
  sch.regime = regime;
  sch.c = c;

  double eta0 = 0.0;
  switch (regime) {
    case Regime::kSmoothGeneral:
      eta0 = std::min(1.0 / std::sqrt(nd), priv);
      sch.T = n;
      break;
    case Regime::kSmoothLowNoise:
      eta0 = priv;
      sch.T = n;
      break;
    case Regime::kHoelderGeneral:
      if (a >= 0.5) {
        eta0 = std::min(1.0 / std::sqrt(nd), priv);
        sch.T = n;
      } else {
        eta0 = std::min(std::pow(nd, 3.0 * (a - 1.0) / (2.0 * (1.0 + a))),
                        priv);
        sch.T = ceil_snap(std::pow(nd, (2.0 - a) / (1.0 + a)));
      }
      break;
    case Regime::kHoelderLowNoise: {
      sch.T = ceil_snap(std::pow(nd, 2.0 / (1.0 + a)));
      double priv_low = nd * epsilon /
                        (static_cast<double>(sch.T) *
                         std::sqrt(static_cast<double>(d) *
                                   std::log(1.0 / delta)));
      eta0 = std::min(std::pow(nd, (a * a + 2.0 * a - 3.0) / (2.0 * (1.0 + a))),
                      priv_low);
      break;
    }
  }

  sch.eta = std::min(c * eta0, schedule_cap(s));
  return sch;
}

// One update loop shared by the run engines and the iterate observers.
// observe(t, w_t) fires for t = 1..T with the pre-step iterate and once
// more at T+1 with the final iterate.
template <typename StepFn, typename Observe>
static void core_loop(const SgdConfig& config, StepFn&& sample_and_grad,
                      Observe&& observe) {
  const int64_t T = config.schedule.T;
  const double eta = config.schedule.eta;
  const double sigma = std::sqrt(config.sigma2);

  numerics::RngState rng_idx(config.seed, numerics::kIndexStream);
  numerics::RngState rng_noise(config.seed, numerics::kNoiseStream);

  Vector w(static_cast<size_t>(config.d), 0.0);
  Vector grad(static_cast<size_t>(config.d), 0.0);
  Vector noise(static_cast<size_t>(config.d), 0.0);

  for (int64_t t = 1; t <= T; ++t) {
    observe(t, w);
    sample_and_grad(rng_idx, w, grad);
    numerics::gaussian_vector_into(rng_noise, sigma, noise);
    for (size_t k = 0; k < w.size(); ++k) {
      w[k] -= eta * (grad[k] + noise[k]);
    }
    try {
      w = numerics::project_ball(std::move(w), config.radius);
    } catch (const std::domain_error&) {
      throw std::runtime_error(
          "run: non-finite iterate at step t=" + std::to_string(t) +
          " (eta=" + format_double(eta) + ", sigma2=" +
          format_double(config.sigma2) + ")");
    }
  }
  observe(T + 1, w);
}

template <typename StepFn, typename RiskFn>
static RunReport run_loop(const SgdConfig& config, StepFn&& sample_and_grad,
                          RiskFn&& risk_at) {
  const auto start = std::chrono::steady_clock::now();
  const int64_t T = config.schedule.T;
  const int64_t stride = resolve_stride(config);

  std::vector<KahanSum> mean(static_cast<size_t>(config.d));
  RunReport report;
  report.seed = config.seed;

  core_loop(config, sample_and_grad, [&](int64_t t, const Vector& w) {
    if (t > T) return;
    if (stride > 0 && ((t - 1) % stride == 0 || t == T)) {
      report.iterate_risks.emplace_back(t, risk_at(w));
    }
    for (size_t k = 0; k < w.size(); ++k) mean[k].add(w[k]);
  });

  report.w_priv.resize(static_cast<size_t>(config.d));
  for (size_t k = 0; k < report.w_priv.size(); ++k) {
    report.w_priv[k] = mean[k].value() / static_cast<double>(T);
  }
  // The mean of points in the ball lies in the ball; projecting once
  // removes any last-ulp overshoot from the division.
  report.w_priv = numerics::project_ball(std::move(report.w_priv),
                                         config.radius);
  if (stride > 0) {
    report.final_empirical_risk = risk_at(report.w_priv);
  }
  report.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

RunReport run_pointwise(const SgdConfig& config, const losses::PointwiseLoss& f,
                        const std::vector<Example>& data) {
  validate_config(config, 1);
  if (static_cast<int64_t>(data.size()) != config.n) {
    throw std::invalid_argument("run_pointwise: |data| must equal n");
  }
  auto step = [&](numerics::RngState& rng, const Vector& w, Vector& g) {
    int64_t i = numerics::uniform_index(rng, config.n);
    f.gradient_into(w, data[static_cast<size_t>(i)], g);
  };
  auto risk = [&](const Vector& w) { return empirical_risk(f, w, data); };
  return run_loop(config, step, risk);
}

RunReport run_pairwise(const SgdConfig& config, const losses::PairwiseLoss& f,
                       const std::vector<Example>& data) {
  validate_config(config, 2);
  if (static_cast<int64_t>(data.size()) != config.n) {
    throw std::invalid_argument("run_pairwise: |data| must equal n");
  }
  auto step = [&](numerics::RngState& rng, const Vector& w, Vector& g) {
    auto [i, j] = numerics::uniform_distinct_pair(rng, config.n);
    f.gradient_into(w, data[static_cast<size_t>(i)],
                    data[static_cast<size_t>(j)], g);
  };
  auto risk = [&](const Vector& w) {
    return empirical_pairwise_risk(f, w, data);
  };
  return run_loop(config, step, risk);
}

void iterate_pointwise(const SgdConfig& config, const losses::PointwiseLoss& f,
                       const std::vector<Example>& data,
                       const IterateObserver& observe) {
  validate_config(config, 1);
  if (static_cast<int64_t>(data.size()) != config.n) {
    throw std::invalid_argument("iterate_pointwise: |data| must equal n");
  }
  auto step = [&](numerics::RngState& rng, const Vector& w, Vector& g) {
    int64_t i = numerics::uniform_index(rng, config.n);
    f.gradient_into(w, data[static_cast<size_t>(i)], g);
  };
  core_loop(config, step, observe);
}

void iterate_pairwise(const SgdConfig& config, const losses::PairwiseLoss& f,
                      const std::vector<Example>& data,
                      const IterateObserver& observe) {
  validate_config(config, 2);
  if (static_cast<int64_t>(data.size()) != config.n) {
    throw std::invalid_argument("iterate_pairwise: |data| must equal n");
  }
  auto step = [&](numerics::RngState& rng, const Vector& w, Vector& g) {
    auto [i, j] = numerics::uniform_distinct_pair(rng, config.n);
    f.gradient_into(w, data[static_cast<size_t>(i)],
                    data[static_cast<size_t>(j)], g);
  };
  core_loop(config, step, observe);
}

double empirical_risk(const losses::PointwiseLoss& f, const Vector& w,
                      const std::vector<Example>& data) {
  if (data.empty()) throw std::invalid_argument("empirical_risk: n must be >= 1");
  KahanSum s;
  for (const Example& z : data) s.add(f.value(w, z));
  return s.value() / static_cast<double>(data.size());
}

double empirical_pairwise_risk(const losses::PairwiseLoss& f, const Vector& w,
                               const std::vector<Example>& data) {
  const size_t n = data.size();
  if (n < 2) throw std::invalid_argument("pairwise learning needs n >= 2");
  KahanSum s;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      s.add(f.value(w, data[i], data[j]));
    }
  }
  return s.value() / (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace sgd
}  // namespace dplab
