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
#include <limits>
#include <map>

#include <doctest.h>

#include "dplab/numerics.hpp"

using namespace dplab;
using namespace dplab::numerics;

TEST_SUITE_BEGIN("numerics");

TEST_CASE("project_ball on interior, boundary and origin") {
  Vector inside = project_ball({0.3, 0.4}, 1.0);
  CHECK(inside == Vector{0.3, 0.4});

  Vector scaled = project_ball({3.0, 4.0}, 1.0);
  CHECK(scaled[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(scaled[1] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(norm(scaled) <= 1.0);

  CHECK(project_ball({0.0, 0.0}, 0.5) == Vector{0.0, 0.0});

  Vector unconstrained = project_ball({3.0, 4.0},
                                      std::numeric_limits<double>::infinity());
  CHECK(unconstrained == Vector{3.0, 4.0});
}

TEST_CASE("project_ball rejects non-finite input and bad radius") {
  CHECK_THROWS_WITH_AS(
      project_ball({1.0, std::numeric_limits<double>::quiet_NaN()}, 1.0),
      "non-finite vector", std::domain_error);
  CHECK_THROWS_AS(
      project_ball({1.0, std::numeric_limits<double>::infinity()}, 1.0),
      std::domain_error);
  CHECK_THROWS_AS(project_ball({1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(project_ball({1.0}, -2.0), std::invalid_argument);
}

TEST_CASE("project_ball is exactly idempotent and never exceeds the radius") {
  RngState rng(101, 0);
  for (int trial = 0; trial < 5000; ++trial) {
    int d = 1 + static_cast<int>(uniform_index(rng, 12));
    double radius = 0.05 + 3.0 * rng.next_uniform();
    Vector w = gaussian_vector(rng, d, 4.0);
    Vector p = project_ball(w, radius);
    CHECK(squared_norm(p) <= radius * radius);
    CHECK(project_ball(p, radius) == p);  // bitwise fixed point
  }
}

TEST_CASE("project_ball is non-expansive") {
  RngState rng(202, 0);
  for (int trial = 0; trial < 5000; ++trial) {
    int d = 1 + static_cast<int>(uniform_index(rng, 8));
    double radius = 0.1 + 2.0 * rng.next_uniform();
    Vector u = gaussian_vector(rng, d, 3.0);
    Vector v = gaussian_vector(rng, d, 3.0);
    Vector pu = project_ball(u, radius);
    Vector pv = project_ball(v, radius);
    double before = 0.0, after = 0.0;
    for (int k = 0; k < d; ++k) {
      before += (u[k] - v[k]) * (u[k] - v[k]);
      after += (pu[k] - pv[k]) * (pu[k] - pv[k]);
    }
    CHECK(after <= before * (1.0 + 1e-12) + 1e-300);
  }
}

TEST_CASE("gaussian_vector degenerate and deterministic cases") {
  RngState rng(7, kNoiseStream);
  CHECK(gaussian_vector(rng, 3, 0.0) == Vector{0.0, 0.0, 0.0});

  RngState a(42, kNoiseStream);
  RngState b(42, kNoiseStream);
  CHECK(gaussian_vector(a, 17, 1.3) == gaussian_vector(b, 17, 1.3));

  RngState c(42, kNoiseStream);
  RngState d(43, kNoiseStream);
  CHECK(gaussian_vector(c, 17, 1.3) != gaussian_vector(d, 17, 1.3));

  // sigma = 0 advances the stream exactly like sigma > 0.
  RngState e(9, kNoiseStream);
  RngState f(9, kNoiseStream);
  (void)gaussian_vector(e, 5, 0.0);
  (void)gaussian_vector(f, 5, 2.0);
  CHECK(e.next_uniform() == f.next_uniform());

  CHECK_THROWS_AS(gaussian_vector(rng, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_vector(rng, 3, -1.0), std::invalid_argument);
}

TEST_CASE("gaussian_vector second moment matches sigma^2 d") {
  RngState rng(314, kNoiseStream);
  const int d = 100000;
  Vector b = gaussian_vector(rng, d, 2.0);
  CHECK(squared_norm(b) / d == doctest::Approx(4.0).epsilon(0.025));
}

TEST_CASE("gaussian_vector kurtosis is consistent with normality") {
  RngState rng(2718, kNoiseStream);
  const int n = 1000000;
  double s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    double g = rng.next_gaussian();
    s2 += g * g;
    s4 += g * g * g * g;
  }
  double kurtosis = (s4 / n) / ((s2 / n) * (s2 / n));
  CHECK(kurtosis == doctest::Approx(3.0).epsilon(0.0334));
}

TEST_CASE("uniform_index frequencies and determinism") {
  RngState one(5, kIndexStream);
  for (int i = 0; i < 100; ++i) CHECK(uniform_index(one, 1) == 0);

  RngState rng(6, kIndexStream);
  std::map<int64_t, int> counts;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[uniform_index(rng, 4)];
  for (int64_t v = 0; v < 4; ++v) {
    CHECK(static_cast<double>(counts[v]) / draws ==
          doctest::Approx(0.25).epsilon(0.04));
  }

  RngState a(99, kIndexStream);
  RngState b(99, kIndexStream);
  for (int i = 0; i < 1000; ++i) {
    CHECK(uniform_index(a, 1000) == uniform_index(b, 1000));
  }
}

TEST_CASE("uniform_distinct_pair covers ordered pairs uniformly") {
  RngState rng(77, kIndexStream);
  SUBCASE("n = 2 yields both orders") {
    int first = 0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
      auto [a, b] = uniform_distinct_pair(rng, 2);
      CHECK(a != b);
      if (a == 0) ++first;
    }
    CHECK(static_cast<double>(first) / draws ==
          doctest::Approx(0.5).epsilon(0.04));
  }
  SUBCASE("n = 3 gives each of the 6 ordered pairs 1/6") {
    std::map<std::pair<int64_t, int64_t>, int> counts;
    const int draws = 120000;
    for (int i = 0; i < draws; ++i) {
      auto pr = uniform_distinct_pair(rng, 3);
      CHECK(pr.first != pr.second);
      ++counts[pr];
    }
    CHECK(counts.size() == 6);
    for (const auto& [pair, count] : counts) {
      CHECK(static_cast<double>(count) / draws ==
            doctest::Approx(1.0 / 6.0).epsilon(0.06));
    }
  }
  SUBCASE("distinctness for larger n") {
    for (int i = 0; i < 10000; ++i) {
      auto [a, b] = uniform_distinct_pair(rng, 17);
      CHECK(a != b);
    }
  }
  SUBCASE("n < 2 is an error") {
    CHECK_THROWS_WITH_AS(uniform_distinct_pair(rng, 1),
                         "pairwise learning needs n >= 2",
                         std::invalid_argument);
  }
}

TEST_CASE("streams with different ids are distinct, same ids identical") {
  RngState idx(123, kIndexStream);
  RngState noise(123, kNoiseStream);
  bool all_equal = true;
  for (int i = 0; i < 32; ++i) {
    if (idx.next_uniform() != noise.next_uniform()) all_equal = false;
  }
  CHECK_FALSE(all_equal);
}

TEST_CASE("sphere_point lies on the sphere") {
  RngState rng(55, kDataStream);
  for (int i = 0; i < 200; ++i) {
    Vector x = sphere_point(rng, 10, 2.5);
    CHECK(norm(x) == doctest::Approx(2.5).epsilon(1e-12));
  }
}

TEST_CASE("ceil_snap snaps near-integers and ceils otherwise") {
  CHECK(ceil_snap(256.00000000000003) == 256);
  CHECK(ceil_snap(255.99999999999991) == 256);
  CHECK(ceil_snap(645.0795775461748) == 646);
  CHECK(ceil_snap(4.0) == 4);
  CHECK(ceil_snap(4.2) == 5);
}

TEST_SUITE_END();
