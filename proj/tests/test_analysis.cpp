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

#include <cmath>

#include <doctest.h>

#include "dplab/analysis.hpp"

using namespace dplab;
using namespace dplab::analysis;

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;

BoundInputs smooth_inputs(int64_t n, int64_t T, double eta, double L,
                          double risk) {
  BoundInputs in = BoundInputs::from_smoothness(
      losses::SmoothnessClass::smooth(L), 1.0, 1.0);
  in.n = n;
  in.T = T;
  in.d = 10;
  in.eta = eta;
  in.sigma2 = 0.0;
  in.risk_terms.assign(static_cast<size_t>(T), risk);
  return in;
}

}  // namespace

TEST_SUITE_BEGIN("analysis");

TEST_CASE("smooth stability bound closed form") {
  BoundInputs in = smooth_inputs(100, 100, 0.01, 1.0, 0.5);
  CHECK(stability_bound_smooth(in, 100) ==
        doctest::Approx(0.0021746254627672363).epsilon(1e-13));

  SUBCASE("zero risks give a zero bound") {
    in.risk_terms.assign(100, 0.0);
    CHECK(stability_bound_smooth(in, 100) == 0.0);
  }
  SUBCASE("doubling eta quadruples the bound") {
    double base = stability_bound_smooth(in, 100);
    in.eta *= 2.0;
    CHECK(stability_bound_smooth(in, 100) ==
          doctest::Approx(4.0 * base).epsilon(1e-12));
  }
  SUBCASE("missing risks are an error") {
    in.risk_terms.resize(10);
    CHECK_THROWS_WITH_AS(stability_bound_smooth(in, 100),
                         doctest::Contains("missing per-iterate risks"),
                         std::invalid_argument);
  }
  SUBCASE("eta above 2/L is rejected") {
    in.eta = 3.0;
    CHECK_THROWS_AS(stability_bound_smooth(in, 100), std::invalid_argument);
  }
}

TEST_CASE("holder stability bound reduces correctly at alpha = 0") {
  BoundInputs in = BoundInputs::from_smoothness(
      losses::SmoothnessClass::hoelder(0.0, 2.0), 1.0, 1.0);
  in.n = 100;
  in.T = 100;
  in.d = 10;
  in.eta = 0.01;
  in.risk_terms.assign(100, 0.0);
  // alpha = 0: the step term is c3^2 e sum eta^2 and the risk term
  // vanishes with zero risks.
  double expected = in.c3 * in.c3 * kE * 100.0 * 0.01 * 0.01;
  CHECK(stability_bound_holder(in, 100) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("holder stability bound with zero risks at alpha = 0.5") {
  BoundInputs in = BoundInputs::from_smoothness(
      losses::SmoothnessClass::hoelder(0.5, 1.0), 0.0, 1.0);
  in.n = 200;
  in.T = 100;
  in.d = 10;
  in.eta = 0.01;
  in.risk_terms.assign(100, 0.0);
  double expected = in.c3 * in.c3 * kE * 100.0 * std::pow(0.01, 4.0);
  CHECK(stability_bound_holder(in, 100) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("pairwise holder bound carries the extra e factor") {
  BoundInputs in = BoundInputs::from_smoothness(
      losses::SmoothnessClass::hoelder(0.0, 2.0), 1.0, 1.0);
  in.n = 100;
  in.T = 100;
  in.d = 10;
  in.eta = 0.01;
  in.risk_terms.assign(100, 0.0);
  // With zero risks the pairwise step term is e times the pointwise one.
  double point = stability_bound_holder(in, 100);
  double pair = stability_bound_pairwise_holder(in, 100);
  CHECK(pair == doctest::Approx(kE * point).epsilon(1e-12));

  // And with risks the coefficient doubles on top of the (1 + 2t/n) tilt.
  in.risk_terms.assign(100, 0.3);
  double tn = 1.0;
  double point_risk = stability_bound_holder(in, 100) - point;
  double pair_risk = stability_bound_pairwise_holder(in, 100) - pair;
  CHECK(pair_risk == doctest::Approx(2.0 * point_risk * (1.0 + 2.0 * tn) /
                                     (1.0 + tn))
                         .epsilon(1e-12));
}

TEST_CASE("holder optimization bound closed forms") {
  // alpha = 0.5, L = 1, M = 0: c1 = 3^{1/3}, c2 = 4/3.
  BoundInputs in = BoundInputs::from_smoothness(
      losses::SmoothnessClass::hoelder(0.5, 1.0), 0.0, 1.0);
  in.n = 100;
  in.T = 100;
  in.d = 10;
  in.eta = 0.01;
  in.sigma2 = 0.1;  // sigma2 d = 1
  in.w_star_norm = 1.0;
  in.f_star_empirical = 0.1;
  CHECK(optimization_bound(in, 100, false) ==
        doctest::Approx(0.5584292874952517).epsilon(1e-12));

  // alpha = 0: the bracket power collapses to 1.
  BoundInputs in0 = BoundInputs::from_smoothness(
      losses::SmoothnessClass::hoelder(0.0, 2.0), 1.0, 1.0);
  in0.n = 100;
  in0.T = 100;
  in0.d = 10;
  in0.eta = 0.01;
  in0.sigma2 = 0.1;
  in0.w_star_norm = 1.0;
  in0.f_star_empirical = 0.1;
  CHECK(optimization_bound(in0, 100, false) ==
        doctest::Approx(0.5975).epsilon(1e-12));

  // Monotone in the scale inputs.
  BoundInputs larger = in;
  larger.sigma2 *= 2.0;
  CHECK(optimization_bound(larger, 100, false) >=
        optimization_bound(in, 100, false));
  larger = in;
  larger.w_star_norm *= 1.5;
  CHECK(optimization_bound(larger, 100, false) >=
        optimization_bound(in, 100, false));
  larger = in;
  larger.f_star_empirical *= 2.0;
  CHECK(optimization_bound(larger, 100, false) >=
        optimization_bound(in, 100, false));
}

TEST_CASE("pairwise smooth bound doubles the pointwise coefficient") {
  BoundInputs in = smooth_inputs(100, 100, 0.01, 1.0, 0.5);
  for (int64_t t : {25, 50, 100}) {
    double point = stability_bound_smooth(in, t);
    double pair = stability_bound_pairwise_smooth(in, t);
    double tn = static_cast<double>(t) / 100.0;
    CHECK(pair == doctest::Approx(2.0 * point * (1.0 + 2.0 * tn) /
                                  (1.0 + tn))
                      .epsilon(1e-12));
  }
}

TEST_CASE("optimization bound closed form") {
  BoundInputs in = smooth_inputs(100, 100, 0.01, 1.0, 0.0);
  in.sigma2 = 0.1;  // sigma2 d = 1
  in.w_star_norm = 1.0;
  in.f_star_empirical = 0.1;
  CHECK(optimization_bound(in, 100, true) ==
        doctest::Approx(0.5669).epsilon(1e-12));

  SUBCASE("only the distance term survives a noiseless realizable run") {
    in.sigma2 = 0.0;
    in.f_star_empirical = 0.0;
    CHECK(optimization_bound(in, 100, true) ==
          doctest::Approx((0.5 + 3.0 * 1.0 * 0.01) * 1.0).epsilon(1e-14));
  }
  SUBCASE("linear growth in sigma2 d") {
    in.f_star_empirical = 0.0;
    in.sigma2 = 0.1;
    double b1 = optimization_bound(in, 100, true);
    in.sigma2 = 0.2;
    double b2 = optimization_bound(in, 100, true);
    in.sigma2 = 0.4;
    double b3 = optimization_bound(in, 100, true);
    double base = (0.5 + 0.03) * 1.0;
    CHECK(b3 - base == doctest::Approx(4.0 * (b1 - base)).epsilon(1e-10));
    CHECK(b2 - base == doctest::Approx(2.0 * (b1 - base)).epsilon(1e-10));
  }
}

TEST_CASE("bound calculators are monotone in their scale inputs") {
  numerics::RngState rng(606, 0);
  for (int trial = 0; trial < 200; ++trial) {
    int64_t T = 20 + static_cast<int64_t>(numerics::uniform_index(rng, 80));
    BoundInputs in = smooth_inputs(
        50 + static_cast<int64_t>(numerics::uniform_index(rng, 200)), T,
        0.001 + 0.05 * rng.next_uniform(), 1.0 + 2.0 * rng.next_uniform(),
        rng.next_uniform());
    in.sigma2 = rng.next_uniform();
    in.w_star_norm = rng.next_uniform();
    in.f_star_empirical = rng.next_uniform();
    int64_t t = 1 + static_cast<int64_t>(numerics::uniform_index(rng, T));

    double sb = stability_bound_smooth(in, t);
    double ob = optimization_bound(in, t, true);

    BoundInputs larger = in;
    larger.eta = std::min(in.eta * 1.3, 2.0 / in.L);
    CHECK(stability_bound_smooth(larger, t) >= sb * (1.0 - 1e-12));
    larger = in;
    larger.sigma2 *= 1.7;
    CHECK(optimization_bound(larger, t, true) >= ob * (1.0 - 1e-12));
    larger = in;
    larger.w_star_norm *= 1.5;
    CHECK(optimization_bound(larger, t, true) >= ob * (1.0 - 1e-12));
    larger = in;
    larger.f_star_empirical *= 2.0;
    CHECK(optimization_bound(larger, t, true) >= ob * (1.0 - 1e-12));
    larger = in;
    for (double& r : larger.risk_terms) r *= 2.0;
    CHECK(stability_bound_smooth(larger, t) >= sb * (1.0 - 1e-12));
  }
}

TEST_CASE("stability estimator is exactly zero under identical replacement") {
  problems::Problem p = problems::realizable_least_squares(4, 1.0, 1.0, 3);
  sgd::SgdConfig cfg;
  cfg.radius = p.radius;
  cfg.schedule = sgd::Schedule{0.05, 80, sgd::Regime::kSmoothGeneral, 1.0};
  cfg.sigma2 = 0.5;
  cfg.n = 30;
  cfg.d = 4;
  StabilityStudy study = estimate_stability(p, cfg, 10, 4, 77, 1,
                                            /*replace_with_same=*/true);
  for (const auto& est : study.estimates) {
    CHECK(est.value == 0.0);
    CHECK(est.std_err == 0.0);
  }
}

TEST_CASE("stability estimate sits below the smooth bound") {
  problems::Problem p = problems::realizable_least_squares(4, 1.0, 1.0, 5);
  sgd::SgdConfig cfg;
  cfg.radius = p.radius;
  cfg.schedule = sgd::Schedule{0.05, 64, sgd::Regime::kSmoothGeneral, 1.0};
  cfg.sigma2 = 0.0;
  cfg.n = 64;
  cfg.d = 4;
  StabilityStudy study = estimate_stability(p, cfg, 60, 6, 99, 2);

  BoundInputs in = BoundInputs::from_smoothness(p.loss->smoothness,
                                                p.loss->M, p.loss->G);
  in.n = cfg.n;
  in.T = cfg.schedule.T;
  in.d = cfg.d;
  in.eta = cfg.schedule.eta;
  in.sigma2 = cfg.sigma2;
  in.w_star_norm = numerics::norm(p.w_star);
  in.f_star_empirical = study.mean_f_star_empirical;
  in.risk_terms = study.mean_risk;

  for (const auto& est : study.estimates) {
    double bound = stability_bound_smooth(in, est.t);
    double slack = est.value > 0.0 ? 2.0 * est.std_err / est.value : 0.0;
    CHECK(est.value <= bound * (1.0 + slack) + 1e-15);
  }
}

TEST_CASE("weighted regret stays below the optimization bound at sigma = 0") {
  // 50-seed Monte-Carlo average of sum_j eta (F_S(w_j) - F_S(w*)) against
  // the closed-form bound with 2x slack.
  problems::Problem p = problems::realizable_least_squares(6, 1.0, 1.0, 21);
  const int64_t n = 80;
  sgd::Schedule sch{0.1, n, sgd::Regime::kSmoothGeneral, 1.0};
  sgd::SgdConfig cfg;
  cfg.radius = p.radius;
  cfg.schedule = sch;
  cfg.sigma2 = 0.0;
  cfg.n = n;
  cfg.d = 6;
  RiskProfile profile = collect_risk_profile(p, cfg, 50, 777, 2);
  KahanSum weighted;
  for (double r : profile.mean_risk) weighted.add(sch.eta * r);
  double measured = weighted.value() -
                    sch.eta * n * profile.mean_f_star_empirical;

  BoundInputs in = BoundInputs::from_smoothness(p.loss->smoothness,
                                                p.loss->M, p.loss->G);
  in.n = n;
  in.T = sch.T;
  in.d = 6;
  in.eta = sch.eta;
  in.sigma2 = 0.0;
  in.w_star_norm = numerics::norm(p.w_star);
  in.f_star_empirical = profile.mean_f_star_empirical;
  in.risk_terms = profile.mean_risk;
  double bound = optimization_bound(in, sch.T, true);
  CHECK(measured <= 2.0 * bound);
  CHECK(measured >= 0.0);
  // The profile also starts at the origin's risk.
  CHECK(profile.mean_risk.front() ==
        doctest::Approx(0.25 / 6.0).epsilon(0.2));
}

TEST_CASE("pairwise stability estimator respects its bound") {
  problems::Problem p = problems::realizable_pairwise(3, 1.0, 1.0, 13);
  sgd::SgdConfig cfg;
  cfg.radius = p.radius;
  cfg.schedule = sgd::Schedule{0.02, 32, sgd::Regime::kSmoothGeneral, 1.0};
  cfg.sigma2 = 0.0;
  cfg.n = 32;
  cfg.d = 3;
  StabilityStudy study = estimate_stability(p, cfg, 40, 4, 55, 2);

  BoundInputs in = BoundInputs::from_smoothness(p.pair_loss->smoothness,
                                                p.pair_loss->M,
                                                p.pair_loss->G);
  in.n = cfg.n;
  in.T = cfg.schedule.T;
  in.d = cfg.d;
  in.eta = cfg.schedule.eta;
  in.sigma2 = 0.0;
  in.w_star_norm = numerics::norm(p.w_star);
  in.f_star_empirical = study.mean_f_star_empirical;
  in.risk_terms = study.mean_risk;
  CHECK(study.mean_f_star_empirical <= 1e-20);  // realizable pairs
  for (const auto& est : study.estimates) {
    double bound = stability_bound_pairwise_smooth(in, est.t);
    double rel = est.value > 0.0 ? est.std_err / est.value : 0.0;
    CHECK(est.value <= bound * (1.0 + 2.0 * rel) + 1e-15);
  }

  StabilityStudy zero = estimate_stability(p, cfg, 10, 2, 55, 1,
                                           /*replace_with_same=*/true);
  for (const auto& est : zero.estimates) CHECK(est.value == 0.0);
}

TEST_CASE("generalization gap of a data-independent model is unbiased") {
  problems::Problem p = problems::noisy_logistic(4, 1.0, 1.0, 0.1, 7, 100000);
  Vector fixed{0.2, -0.1, 0.3, 0.1};
  const int runs = 200;
  const int n = 100;
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < runs; ++r) {
    auto data = problems::draw_dataset(p, n, derive_seed(4242, r, 0));
    double gap = p.population_risk(fixed) -
                 sgd::empirical_risk(*p.loss, fixed, data);
    sum += gap;
    sum2 += gap * gap;
  }
  double mean = sum / runs;
  double sd = std::sqrt((sum2 / runs - mean * mean) * runs / (runs - 1.0));
  CHECK(std::abs(mean) <= 3.0 * sd / std::sqrt(static_cast<double>(runs)) +
                              1e-4);
}

TEST_CASE("generalization gap estimator runs and reports a finite band") {
  problems::Problem p = problems::realizable_least_squares(4, 1.0, 1.0, 11);
  sgd::SgdConfig cfg;
  cfg.radius = p.radius;
  cfg.schedule = sgd::Schedule{0.05, 50, sgd::Regime::kSmoothGeneral, 1.0};
  cfg.sigma2 = 0.0;
  cfg.n = 50;
  cfg.d = 4;
  auto [mean, se] = estimate_generalization_gap(p, cfg, 40, 5, 2);
  CHECK(std::isfinite(mean));
  CHECK(se > 0.0);
  CHECK(std::abs(mean) < 1.0);
}

TEST_CASE("generalization gap shrinks with n at fixed T") {
  problems::Problem p = problems::noisy_logistic(4, 1.0, 1.0, 0.1, 9, 100000);
  std::vector<double> means, errs;
  for (int64_t n : {25, 100, 400}) {
    sgd::SgdConfig cfg;
    cfg.radius = p.radius;
    cfg.schedule = sgd::Schedule{0.1, 100, sgd::Regime::kSmoothGeneral, 1.0};
    cfg.sigma2 = 0.0;
    cfg.n = n;
    cfg.d = 4;
    auto [mean, se] = estimate_generalization_gap(p, cfg, 100, 31, 2);
    means.push_back(mean);
    errs.push_back(se);
  }
  // Monotone trend within Monte-Carlo noise: each step down may wiggle by
  // 2 sigma, and the ends must separate.
  for (size_t k = 1; k < means.size(); ++k) {
    double band = 2.0 * std::sqrt(errs[k] * errs[k] +
                                  errs[k - 1] * errs[k - 1]);
    CHECK(means[k] <= means[k - 1] + band);
  }
  CHECK(means.back() < means.front());
}

TEST_CASE("rate fitter recovers planted slopes") {
  std::vector<std::pair<double, double>> pts;
  for (double n : {100.0, 200.0, 400.0, 800.0, 1600.0}) {
    pts.emplace_back(n, 4.0 / std::sqrt(n));
  }
  RateFit fit = fit_rate(pts);
  CHECK(std::abs(fit.slope - (-0.5)) <= 1e-9);
  CHECK(std::abs(fit.intercept - std::log(4.0)) <= 1e-9);
  CHECK(fit.r2 >= 1.0 - 1e-12);

  pts.clear();
  for (double n : {100.0, 200.0, 400.0, 800.0}) pts.emplace_back(n, 3.0 / n);
  CHECK(std::abs(fit_rate(pts).slope - (-1.0)) <= 1e-9);
}

TEST_CASE("rate fitter flattens when an additive floor dominates") {
  std::vector<std::pair<double, double>> pts;
  for (double n : {100.0, 400.0, 1600.0, 6400.0, 25600.0}) {
    pts.emplace_back(n, 1.0 / std::sqrt(n) + 0.001);
  }
  RateFit fit = fit_rate(pts);
  CHECK(fit.slope > -0.5);
  CHECK(fit.slope < 0.0);
}

TEST_CASE("rate fitter input validation") {
  std::vector<std::pair<double, double>> three{{10.0, 1.0},
                                               {20.0, 0.5},
                                               {40.0, 0.25}};
  CHECK_THROWS_AS(fit_rate(three), std::invalid_argument);
  std::vector<std::pair<double, double>> with_zero{
      {10.0, 1.0}, {20.0, 0.5}, {40.0, 0.0}, {80.0, 0.1}};
  CHECK_THROWS_WITH_AS(fit_rate(with_zero),
                       doctest::Contains("increase mc_runs"),
                       std::invalid_argument);
}

TEST_SUITE_END();
