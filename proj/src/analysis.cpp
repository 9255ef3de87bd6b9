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

#include "dplab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dplab/parallel.hpp"

namespace dplab {
namespace analysis {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;

void require_risks(const BoundInputs& in, int64_t t, const char* what) {
  if (t < 1 || t > in.T) {
    throw std::invalid_argument(std::string(what) +
                                ": t must lie in [1, T]");
  }
  if (static_cast<int64_t>(in.risk_terms.size()) < t) {
    throw std::invalid_argument(std::string(what) +
                                ": missing per-iterate risks");
  }
}

double risk_sum(const BoundInputs& in, int64_t t) {
  KahanSum s;
  for (int64_t j = 0; j < t; ++j) {
    s.add(in.risk_terms[static_cast<size_t>(j)]);
  }
  return s.value();
}

std::vector<int64_t> checkpoints(int64_t T) {
  std::vector<int64_t> cps{std::max<int64_t>(1, T / 4),
                           std::max<int64_t>(1, T / 2), T};
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

// Draws k distinct positions from [0, n) by partial Fisher-Yates.
std::vector<int64_t> distinct_positions(numerics::RngState& rng, int64_t n,
                                        int k) {
  std::vector<int64_t> all(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
  std::vector<int64_t> out;
  out.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    int64_t j = i + numerics::uniform_index(rng, n - i);
    std::swap(all[static_cast<size_t>(i)], all[static_cast<size_t>(j)]);
    out.push_back(all[static_cast<size_t>(i)]);
  }
  return out;
}

double squared_distance(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

}  // namespace

BoundInputs BoundInputs::from_smoothness(const losses::SmoothnessClass& s,
                                         double M, double G) {
  BoundInputs in;
  in.smooth = s.is_smooth();
  in.L = s.L;
  in.alpha = s.alpha;
  in.G = G;
  in.c1 = losses::c_alpha_1(s, M);
  in.c2 = losses::c_alpha_2(s, M);
  in.c3 = in.smooth ? std::numeric_limits<double>::quiet_NaN()
                    : losses::c_alpha_3(s);
  return in;
}

double stability_bound_smooth(const BoundInputs& in, int64_t t) {
  if (!in.smooth) {
    throw std::invalid_argument(
        "stability_bound_smooth requires a smooth loss");
  }
  if (in.eta > 2.0 / in.L * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "stability_bound_smooth requires eta <= 2/L");
  }
  require_risks(in, t, "stability_bound_smooth");
  double tn = static_cast<double>(t) / static_cast<double>(in.n);
  return 8.0 * kE * (1.0 + tn) * in.L / static_cast<double>(in.n) *
         in.eta * in.eta * risk_sum(in, t);
}

double stability_bound_holder(const BoundInputs& in, int64_t t) {
  if (in.smooth) {
    throw std::invalid_argument(
        "stability_bound_holder requires a Hoelder loss");
  }
  require_risks(in, t, "stability_bound_holder");
  double tn = static_cast<double>(t) / static_cast<double>(in.n);
  double step_term = in.c3 * in.c3 * kE * static_cast<double>(t) *
                     std::pow(in.eta, 2.0 / (1.0 - in.alpha));
  double risk_term = 4.0 * kE * in.c1 * in.c1 * (1.0 + tn) /
                     static_cast<double>(in.n) * in.eta * in.eta *
                     risk_sum(in, t);
  return step_term + risk_term;
}

double stability_bound_pairwise_smooth(const BoundInputs& in, int64_t t) {
  if (!in.smooth) {
    throw std::invalid_argument(
        "stability_bound_pairwise_smooth requires a smooth loss");
  }
  if (in.eta > 2.0 / in.L * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "stability_bound_pairwise_smooth requires eta <= 2/L");
  }
  require_risks(in, t, "stability_bound_pairwise_smooth");
  double tn = 2.0 * static_cast<double>(t) / static_cast<double>(in.n);
  return 16.0 * in.L * (1.0 + tn) * kE / static_cast<double>(in.n) *
         in.eta * in.eta * risk_sum(in, t);
}

double stability_bound_pairwise_holder(const BoundInputs& in, int64_t t) {
  if (in.smooth) {
    throw std::invalid_argument(
        "stability_bound_pairwise_holder requires a Hoelder loss");
  }
  require_risks(in, t, "stability_bound_pairwise_holder");
  double tn = 2.0 * static_cast<double>(t) / static_cast<double>(in.n);
  // The pairwise form of the displacement constant carries sqrt(e) inside
  // c3, so the step-size term picks up one more factor of e than the
  // pointwise one.
  double step_term = kE * in.c3 * in.c3 * kE * static_cast<double>(t) *
                     std::pow(in.eta, 2.0 / (1.0 - in.alpha));
  double risk_term = 8.0 * kE * in.c1 * in.c1 * (1.0 + tn) /
                     static_cast<double>(in.n) * in.eta * in.eta *
                     risk_sum(in, t);
  return step_term + risk_term;
}

double optimization_bound(const BoundInputs& in, int64_t t, bool smooth) {
  if (t < 1 || t > in.T) {
    throw std::invalid_argument("optimization_bound: t must lie in [1, T]");
  }
  const double td = static_cast<double>(t);
  const double eta = in.eta;
  const double s2d = in.sigma2 * static_cast<double>(in.d);
  const double w2 = in.w_star_norm * in.w_star_norm;
  const double fstar = in.f_star_empirical;
  const double noise_tail = 3.0 * td * eta * eta * s2d;

  if (smooth) {
    return (0.5 + 3.0 * in.L * eta) * w2 +
           3.0 * in.L *
               (3.0 * td * eta * eta * eta * s2d +
                2.0 * td * eta * eta * fstar) +
           noise_tail;
  }
  const double a = in.alpha;
  double inner = 2.0 * eta * w2 +
                 td * (6.0 * eta * eta * eta * s2d +
                       4.0 * eta * eta * fstar +
                       3.0 * in.c2 * std::pow(eta, (3.0 - a) / (1.0 - a)));
  return 0.5 * w2 +
         0.75 * in.c1 * in.c1 *
             std::pow(td * eta * eta, (1.0 - a) / (1.0 + a)) *
             std::pow(inner, 2.0 * a / (1.0 + a)) +
         noise_tail;
}

StabilityStudy estimate_stability(const problems::Problem& problem,
                                  const sgd::SgdConfig& config, int mc_runs,
                                  int replacement_indices, uint64_t seed,
                                  int jobs, bool replace_with_same) {
  if (mc_runs < 10) {
    throw std::invalid_argument("estimate_stability: mc_runs must be >= 10");
  }
  if (replacement_indices < 1 || replacement_indices > config.n) {
    throw std::invalid_argument(
        "estimate_stability: replacement_indices must lie in [1, n]");
  }
  const int64_t T = config.schedule.T;
  const std::vector<int64_t> cps = checkpoints(T);
  const bool pairwise = problem.kind == problems::Problem::Kind::kPairwise;
  const double q =
      pairwise ? (problem.pair_loss->smoothness.is_smooth()
                      ? 1.0
                      : 2.0 * problem.pair_loss->smoothness.alpha /
                            (1.0 + problem.pair_loss->smoothness.alpha))
               : (problem.loss->smoothness.is_smooth()
                      ? 1.0
                      : 2.0 * problem.loss->smoothness.alpha /
                            (1.0 + problem.loss->smoothness.alpha));

  std::vector<std::vector<double>> run_vals(
      static_cast<size_t>(mc_runs), std::vector<double>(cps.size(), 0.0));
  std::vector<std::vector<double>> run_risks(
      static_cast<size_t>(mc_runs),
      std::vector<double>(static_cast<size_t>(T), 0.0));
  std::vector<double> run_fstar(static_cast<size_t>(mc_runs), 0.0);

  parallel_for_indexed(mc_runs, jobs, [&](int64_t r) {
    const uint64_t data_seed = derive_seed(seed, static_cast<uint64_t>(r), 11);
    const uint64_t sgd_seed = derive_seed(seed, static_cast<uint64_t>(r), 22);

    numerics::RngState data_rng(data_seed, numerics::kDataStream);
    std::vector<losses::Example> base(static_cast<size_t>(config.n));
    for (auto& z : base) z = problem.sample(data_rng);
    std::vector<losses::Example> fresh(
        static_cast<size_t>(replacement_indices));
    for (auto& z : fresh) z = problem.sample(data_rng);

    numerics::RngState pick_rng(data_seed, 31);
    std::vector<int64_t> positions =
        distinct_positions(pick_rng, config.n, replacement_indices);

    sgd::SgdConfig run_cfg = config;
    run_cfg.seed = sgd_seed;

    std::vector<Vector> snaps(cps.size());
    auto snap_observer = [&](std::vector<Vector>& out, bool record_risks,
                             int64_t r_idx) {
      return [&, record_risks, r_idx](int64_t t, const Vector& w) {
        if (record_risks && t <= T) {
          run_risks[static_cast<size_t>(r_idx)][static_cast<size_t>(t - 1)] =
              pairwise
                  ? sgd::empirical_pairwise_risk(*problem.pair_loss, w, base)
                  : sgd::empirical_risk(*problem.loss, w, base);
        }
        for (size_t c = 0; c < cps.size(); ++c) {
          if (t - 1 == cps[c]) out[c] = w;
        }
      };
    };

    if (pairwise) {
      sgd::iterate_pairwise(run_cfg, *problem.pair_loss, base,
                            snap_observer(snaps, true, r));
      run_fstar[static_cast<size_t>(r)] = sgd::empirical_pairwise_risk(
          *problem.pair_loss, problem.w_star, base);
    } else {
      sgd::iterate_pointwise(run_cfg, *problem.loss, base,
                             snap_observer(snaps, true, r));
      run_fstar[static_cast<size_t>(r)] =
          sgd::empirical_risk(*problem.loss, problem.w_star, base);
    }

    std::vector<double> acc(cps.size(), 0.0);
    std::vector<Vector> snaps2(cps.size());
    for (int k = 0; k < replacement_indices; ++k) {
      std::vector<losses::Example> neighbor = base;
      if (!replace_with_same) {
        neighbor[static_cast<size_t>(positions[static_cast<size_t>(k)])] =
            fresh[static_cast<size_t>(k)];
      }
      if (pairwise) {
        sgd::iterate_pairwise(run_cfg, *problem.pair_loss, neighbor,
                              snap_observer(snaps2, false, r));
      } else {
        sgd::iterate_pointwise(run_cfg, *problem.loss, neighbor,
                               snap_observer(snaps2, false, r));
      }
      for (size_t c = 0; c < cps.size(); ++c) {
        acc[c] += squared_distance(snaps[c], snaps2[c]);
      }
    }
    for (size_t c = 0; c < cps.size(); ++c) {
      run_vals[static_cast<size_t>(r)][c] =
          acc[c] / static_cast<double>(replacement_indices);
    }
  });

  StabilityStudy study;
  study.estimates.resize(cps.size());
  for (size_t c = 0; c < cps.size(); ++c) {
    KahanSum mean;
    for (int r = 0; r < mc_runs; ++r) {
      mean.add(run_vals[static_cast<size_t>(r)][c]);
    }
    double m = mean.value() / mc_runs;
    KahanSum ss;
    for (int r = 0; r < mc_runs; ++r) {
      double d = run_vals[static_cast<size_t>(r)][c] - m;
      ss.add(d * d);
    }
    double sd = mc_runs > 1 ? std::sqrt(ss.value() / (mc_runs - 1)) : 0.0;
    study.estimates[c] = StabilityEstimate{
        cps[c], m, mc_runs, sd / std::sqrt(static_cast<double>(mc_runs))};
  }

  study.mean_risk.assign(static_cast<size_t>(T), 0.0);
  study.mean_risk_power.assign(static_cast<size_t>(T), 0.0);
  for (int64_t j = 0; j < T; ++j) {
    KahanSum m, mp;
    for (int r = 0; r < mc_runs; ++r) {
      double v = run_risks[static_cast<size_t>(r)][static_cast<size_t>(j)];
      m.add(v);
      mp.add(q == 1.0 ? v : std::pow(v, q));
    }
    study.mean_risk[static_cast<size_t>(j)] = m.value() / mc_runs;
    study.mean_risk_power[static_cast<size_t>(j)] = mp.value() / mc_runs;
  }
  KahanSum fs;
  for (int r = 0; r < mc_runs; ++r) fs.add(run_fstar[static_cast<size_t>(r)]);
  study.mean_f_star_empirical = fs.value() / mc_runs;
  return study;
}

std::pair<double, double> estimate_generalization_gap(
    const problems::Problem& problem, const sgd::SgdConfig& config,
    int mc_runs, uint64_t seed, int jobs) {
  if (mc_runs < 2) {
    throw std::invalid_argument(
        "estimate_generalization_gap: mc_runs must be >= 2");
  }
  const bool pairwise = problem.kind == problems::Problem::Kind::kPairwise;
  std::vector<double> gaps(static_cast<size_t>(mc_runs), 0.0);
  parallel_for_indexed(mc_runs, jobs, [&](int64_t r) {
    uint64_t data_seed = derive_seed(seed, static_cast<uint64_t>(r), 33);
    uint64_t sgd_seed = derive_seed(seed, static_cast<uint64_t>(r), 44);
    auto data = problems::draw_dataset(problem, config.n, data_seed);
    sgd::SgdConfig run_cfg = config;
    run_cfg.seed = sgd_seed;
    run_cfg.risk_stride = 0;
    double emp = 0.0;
    Vector w;
    if (pairwise) {
      w = sgd::run_pairwise(run_cfg, *problem.pair_loss, data).w_priv;
      emp = sgd::empirical_pairwise_risk(*problem.pair_loss, w, data);
    } else {
      w = sgd::run_pointwise(run_cfg, *problem.loss, data).w_priv;
      emp = sgd::empirical_risk(*problem.loss, w, data);
    }
    gaps[static_cast<size_t>(r)] = problem.population_risk(w) - emp;
  });
  KahanSum mean;
  for (double g : gaps) mean.add(g);
  double m = mean.value() / mc_runs;
  KahanSum ss;
  for (double g : gaps) ss.add((g - m) * (g - m));
  double sd = std::sqrt(ss.value() / (mc_runs - 1));
  return {m, sd / std::sqrt(static_cast<double>(mc_runs))};
}

RiskProfile collect_risk_profile(const problems::Problem& problem,
                                 const sgd::SgdConfig& config, int mc_runs,
                                 uint64_t seed, int jobs) {
  if (mc_runs < 1) {
    throw std::invalid_argument("collect_risk_profile: mc_runs must be >= 1");
  }
  const int64_t T = config.schedule.T;
  const bool pairwise = problem.kind == problems::Problem::Kind::kPairwise;
  const losses::SmoothnessClass& s = problem.smoothness();
  const double q = s.is_smooth() ? 1.0 : 2.0 * s.alpha / (1.0 + s.alpha);

  std::vector<std::vector<double>> run_risks(
      static_cast<size_t>(mc_runs),
      std::vector<double>(static_cast<size_t>(T), 0.0));
  std::vector<double> run_fstar(static_cast<size_t>(mc_runs), 0.0);

  parallel_for_indexed(mc_runs, jobs, [&](int64_t r) {
    uint64_t data_seed = derive_seed(seed, static_cast<uint64_t>(r), 55);
    uint64_t sgd_seed = derive_seed(seed, static_cast<uint64_t>(r), 66);
    auto data = problems::draw_dataset(problem, config.n, data_seed);
    sgd::SgdConfig run_cfg = config;
    run_cfg.seed = sgd_seed;
    auto observe = [&](int64_t t, const Vector& w) {
      if (t > T) return;
      run_risks[static_cast<size_t>(r)][static_cast<size_t>(t - 1)] =
          pairwise ? sgd::empirical_pairwise_risk(*problem.pair_loss, w, data)
                   : sgd::empirical_risk(*problem.loss, w, data);
    };
    if (pairwise) {
      sgd::iterate_pairwise(run_cfg, *problem.pair_loss, data, observe);
      run_fstar[static_cast<size_t>(r)] = sgd::empirical_pairwise_risk(
          *problem.pair_loss, problem.w_star, data);
    } else {
      sgd::iterate_pointwise(run_cfg, *problem.loss, data, observe);
      run_fstar[static_cast<size_t>(r)] =
          sgd::empirical_risk(*problem.loss, problem.w_star, data);
    }
  });

  RiskProfile profile;
  profile.mean_risk.assign(static_cast<size_t>(T), 0.0);
  profile.mean_risk_power.assign(static_cast<size_t>(T), 0.0);
  for (int64_t j = 0; j < T; ++j) {
    KahanSum m, mp;
    for (int r = 0; r < mc_runs; ++r) {
      double v = run_risks[static_cast<size_t>(r)][static_cast<size_t>(j)];
      m.add(v);
      mp.add(q == 1.0 ? v : std::pow(v, q));
    }
    profile.mean_risk[static_cast<size_t>(j)] = m.value() / mc_runs;
    profile.mean_risk_power[static_cast<size_t>(j)] = mp.value() / mc_runs;
  }
  KahanSum fs;
  for (int r = 0; r < mc_runs; ++r) fs.add(run_fstar[static_cast<size_t>(r)]);
  profile.mean_f_star_empirical = fs.value() / mc_runs;
  return profile;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& n_excess) {
  if (n_excess.size() < 4) {
    throw std::invalid_argument("fit_rate: need at least 4 points");
  }
  RateFit fit;
  fit.points.reserve(n_excess.size());
  for (const auto& [n, y] : n_excess) {
    if (!(n > 0.0)) throw std::invalid_argument("fit_rate: n must be > 0");
    if (!(y > 0.0)) {
      throw std::invalid_argument(
          "fit_rate: excess risk " + format_double(y) +
          " at n = " + format_double(n) +
          " is not positive; increase mc_runs until the mean excess is "
          "resolved above zero");
    }
    fit.points.emplace_back(std::log(n), std::log(y));
  }
  const double m = static_cast<double>(fit.points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : fit.points) {
    sx += x;
    sy += y;
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : fit.points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("fit_rate: all n values are equal");
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& [x, y] : fit.points) {
    double e = y - (fit.intercept + fit.slope * x);
    ss_res += e * e;
  }
  fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

}  // namespace analysis
}  // namespace dplab
