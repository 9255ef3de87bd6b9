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

#include "dplab/problems.hpp"
#include "dplab/sgd.hpp"

using namespace dplab;
using namespace dplab::problems;

TEST_SUITE_BEGIN("problems");

TEST_CASE("realizable least squares has the advertised closed form") {
  const int d = 4;
  const double B = 2.0;  // B^2 = d so a unit offset costs exactly 1
  Problem p = realizable_least_squares(d, B, 1.0, 42);
  CHECK(p.f_star == 0.0);
  CHECK(p.population_risk(p.w_star) == 0.0);
  CHECK(numerics::norm(p.w_star) == doctest::Approx(0.5).epsilon(1e-12));

  Vector w = p.w_star;
  w[0] += 1.0;
  CHECK(p.population_risk(w) == doctest::Approx(1.0).epsilon(1e-12));

  // Monte-Carlo cross-check of E <v, x>^2 = |v|^2 B^2 / d.
  numerics::RngState rng(1, numerics::kDataStream);
  long double acc = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    losses::Example z = p.sample(rng);
    double r = numerics::dot(w, z.x) - z.y;
    acc += r * r;
  }
  CHECK(static_cast<double>(acc / m) ==
        doctest::Approx(1.0).epsilon(0.02));

  // Empirical risk at w_star vanishes to machine precision.
  auto data = draw_dataset(p, 10000, 5);
  CHECK(sgd::empirical_risk(*p.loss, p.w_star, data) <= 1e-28);
}

TEST_CASE("separable hinge: margin construction and oracle") {
  Problem p = separable_hinge(6, 0.15, 1.0, 7, 20000);
  CHECK(p.f_star == 0.0);
  CHECK(numerics::norm(p.w_star) ==
        doctest::Approx(1.0 / 0.15).epsilon(1e-12));
  // All generated examples sit at margin >= 1, so the loss vanishes.
  auto data = draw_dataset(p, 5000, 3);
  for (const auto& z : data) {
    CHECK(z.y * numerics::dot(p.w_star, z.x) >= 1.0 - 1e-9);
    CHECK(p.loss->value(p.w_star, z) == 0.0);
  }
  CHECK(sgd::empirical_risk(*p.loss, p.w_star, data) == 0.0);
  // Hinge at the origin is exactly 1.
  Vector zero(6, 0.0);
  CHECK(p.population_risk(zero) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.population_risk(p.w_star) == 0.0);
}

TEST_CASE("separable problems reject conditioning without mass") {
  CHECK_THROWS_AS(separable_hinge(10, 0.99, 1.0, 1, 2000),
                  std::invalid_argument);
  CHECK_THROWS_AS(separable_hinge(10, 1.5, 1.0, 1, 2000),
                  std::invalid_argument);
  CHECK_THROWS_AS(separable_auc(10, 0.99, 1.0, 1, 2000),
                  std::invalid_argument);
}

TEST_CASE("noisy logistic: symmetric flip gives w_star at the origin") {
  Problem p = noisy_logistic(5, 1.0, 1.0, 0.5, 11, 50000);
  CHECK(numerics::norm(p.w_star) <= 1e-4);
  CHECK(p.f_star == doctest::Approx(std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("noisy logistic: risk floor grows with label noise") {
  double f0 = noisy_logistic(5, 1.0, 1.0, 0.0, 11, 50000).f_star;
  double f1 = noisy_logistic(5, 1.0, 1.0, 0.1, 11, 50000).f_star;
  double f2 = noisy_logistic(5, 1.0, 1.0, 0.2, 11, 50000).f_star;
  CHECK(f0 <= f1);
  CHECK(f1 <= f2);
}

TEST_CASE("noisy logistic: oracle is convex along random lines") {
  Problem p = noisy_logistic(5, 1.0, 1.0, 0.1, 13, 20000);
  numerics::RngState rng(2, 0);
  for (int trial = 0; trial < 50; ++trial) {
    Vector a = numerics::project_ball(numerics::gaussian_vector(rng, 5, 0.5),
                                      1.0);
    Vector b = numerics::project_ball(numerics::gaussian_vector(rng, 5, 0.5),
                                      1.0);
    Vector mid(5);
    for (int k = 0; k < 5; ++k) mid[k] = 0.5 * (a[k] + b[k]);
    CHECK(p.population_risk(mid) <=
          0.5 * p.population_risk(a) + 0.5 * p.population_risk(b) + 1e-9);
  }
}

TEST_CASE("noisy logistic: excess risk is nonnegative against its oracle") {
  Problem p = noisy_logistic(5, 1.0, 1.0, 0.1, 17, 50000);
  numerics::RngState rng(3, 0);
  for (int trial = 0; trial < 100; ++trial) {
    Vector w = numerics::project_ball(numerics::gaussian_vector(rng, 5, 0.6),
                                      1.0);
    CHECK(p.population_risk(w) - p.f_star >= -2e-6);
  }
}

TEST_CASE("realizable pairwise closed form") {
  const int d = 8;
  Problem p = realizable_pairwise(d, 1.0, 1.0, 19);
  CHECK(p.f_star == 0.0);
  CHECK(p.population_risk(p.w_star) == 0.0);
  Vector w = p.w_star;
  w[2] += 0.5;
  CHECK(p.population_risk(w) ==
        doctest::Approx(2.0 * 0.25 / d).epsilon(1e-12));

  // Monte-Carlo cross-check over fresh pairs.
  numerics::RngState rng(4, numerics::kDataStream);
  long double acc = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    losses::Example z = p.sample(rng);
    losses::Example zp = p.sample(rng);
    acc += p.pair_loss->value(w, z, zp);
  }
  CHECK(static_cast<double>(acc / m) ==
        doctest::Approx(p.population_risk(w)).epsilon(0.03));

  // Every pair of generated examples is interpolated by w_star.
  auto data = draw_dataset(p, 200, 23);
  CHECK(sgd::empirical_pairwise_risk(*p.pair_loss, p.w_star, data) <= 1e-26);
}

TEST_CASE("separable auc: zero pairwise risk at w_star") {
  Problem p = separable_auc(6, 0.15, 1.0, 29, 20000);
  CHECK(p.f_star == 0.0);
  CHECK(p.population_risk(p.w_star) == 0.0);
  auto data = draw_dataset(p, 300, 31);
  CHECK(sgd::empirical_pairwise_risk(*p.pair_loss, p.w_star, data) == 0.0);
  // Discordant pairs at the origin cost 1; concordant pairs cost 0.
  Vector zero(6, 0.0);
  double at_zero = p.population_risk(zero);
  CHECK(at_zero > 0.2);
  CHECK(at_zero < 0.8);
}

TEST_CASE("noisy auc logistic: located minimizer beats nearby points") {
  Problem p = noisy_auc_logistic(4, 1.0, 1.0, 0.1, 37, 20000);
  CHECK(p.f_star > 0.0);
  CHECK(numerics::norm(p.w_star) <= 1.0 + 1e-9);
  numerics::RngState rng(5, 0);
  for (int trial = 0; trial < 50; ++trial) {
    Vector w = numerics::project_ball(numerics::gaussian_vector(rng, 4, 0.5),
                                      1.0);
    CHECK(p.population_risk(w) - p.f_star >= -2e-6);
  }
}

TEST_CASE("generated examples respect the declared bounds") {
  for (const char* name :
       {"realizable_least_squares", "separable_hinge", "noisy_logistic",
        "realizable_pairwise", "separable_auc", "noisy_auc_logistic"}) {
    ProblemParams params;
    params.d = 5;
    params.oracle_samples = 5000;
    Problem p = make_problem(name, params, 101);
    auto data = draw_dataset(p, 2000, 7);
    for (const auto& z : data) {
      CHECK(numerics::norm(z.x) <= p.feature_bound * (1.0 + 1e-12));
      CHECK(std::abs(z.y) <= p.label_bound * (1.0 + 1e-12));
    }
    CHECK(numerics::norm(p.w_star) <= p.radius * (1.0 + 1e-12));
  }
  CHECK_THROWS_AS(make_problem("mystery", ProblemParams{}, 1),
                  std::invalid_argument);
}

TEST_CASE("samplers and oracles are reproducible from the seed") {
  ProblemParams params;
  params.d = 4;
  params.oracle_samples = 5000;
  Problem a = make_problem("noisy_logistic", params, 55);
  Problem b = make_problem("noisy_logistic", params, 55);
  CHECK(a.w_star == b.w_star);
  CHECK(a.f_star == b.f_star);
  auto da = draw_dataset(a, 100, 9);
  auto db = draw_dataset(b, 100, 9);
  for (size_t i = 0; i < da.size(); ++i) {
    CHECK(da[i].x == db[i].x);
    CHECK(da[i].y == db[i].y);
  }
  Problem c = make_problem("noisy_logistic", params, 56);
  CHECK(a.w_star != c.w_star);
}

TEST_CASE("empirical risk at w_star concentrates around f_star") {
  Problem p = noisy_logistic(4, 1.0, 1.0, 0.1, 61, 100000);
  const int n = 20000;
  auto data = draw_dataset(p, n, 13);
  double emp = sgd::empirical_risk(*p.loss, p.w_star, data);
  // Loss values lie in [0, softplus(B R)]; a 3-sigma band with the
  // crude bound sd <= 1 is generous but catches gross errors.
  CHECK(std::abs(emp - p.f_star) <= 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_SUITE_END();
