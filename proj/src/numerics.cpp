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

#include "dplab/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace dplab {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

int64_t ceil_snap(double x) {
  double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) {
    return static_cast<int64_t>(r);
  }
  return static_cast<int64_t>(std::ceil(x));
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

namespace numerics {

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(const Vector& v) { return dot(v, v); }

double norm(const Vector& v) { return std::sqrt(squared_norm(v)); }

RngState::RngState(uint64_t seed, uint64_t stream)
    : seed_(seed), stream_(stream) {
  // Two rounds of splitmix decorrelate nearby seeds and streams before
  // they reach the engine.
  engine_.seed(splitmix64(splitmix64(seed) ^ splitmix64(~stream)));
}

double RngState::next_uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngState::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] keeps the log finite.
  double u1 = 1.0 - next_uniform();
  double u2 = next_uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

uint64_t RngState::next_below(uint64_t n) {
  if (n == 0) throw std::invalid_argument("next_below: n must be positive");
  uint64_t rem = (std::numeric_limits<uint64_t>::max() % n + 1) % n;
  uint64_t bound = std::numeric_limits<uint64_t>::max() - rem;
  uint64_t x;
  do {
    x = engine_();
  } while (x > bound);
  return x % n;
}

Vector project_ball(Vector w, double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("project_ball: radius must be positive");
  }
  if (!all_finite(w)) throw std::domain_error("non-finite vector");
  if (std::isinf(radius)) return w;
  double n2 = squared_norm(w);
  double r2 = radius * radius;
  if (n2 <= r2) return w;
  double scale = radius / std::sqrt(n2);
  for (double& x : w) x *= scale;
  // Rounding can leave the norm a few ulps above the radius; nudge each
  // coordinate toward zero until the invariant holds exactly so that a
  // second projection is the identity.
  while (squared_norm(w) > r2) {
    for (double& x : w) x = std::nextafter(x, 0.0);
  }
  return w;
}

Vector gaussian_vector(RngState& rng, int d, double sigma) {
  if (d < 1) throw std::invalid_argument("gaussian_vector: d must be >= 1");
  Vector out(static_cast<size_t>(d));
  gaussian_vector_into(rng, sigma, out);
  return out;
}

void gaussian_vector_into(RngState& rng, double sigma, Vector& out) {
  if (sigma < 0.0) {
    throw std::invalid_argument("gaussian_vector: sigma must be >= 0");
  }
  for (double& x : out) x = sigma * rng.next_gaussian();
}

int64_t uniform_index(RngState& rng, int64_t n) {
  if (n < 1) throw std::invalid_argument("uniform_index: n must be >= 1");
  return static_cast<int64_t>(rng.next_below(static_cast<uint64_t>(n)));
}

std::pair<int64_t, int64_t> uniform_distinct_pair(RngState& rng, int64_t n) {
  if (n < 2) throw std::invalid_argument("pairwise learning needs n >= 2");
  int64_t i = static_cast<int64_t>(rng.next_below(static_cast<uint64_t>(n)));
  int64_t j =
      static_cast<int64_t>(rng.next_below(static_cast<uint64_t>(n - 1)));
  if (j >= i) ++j;
  return {i, j};
}

Vector sphere_point(RngState& rng, int d, double radius) {
  Vector x(static_cast<size_t>(d));
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& v : x) {
      v = rng.next_gaussian();
      n2 += v * v;
    }
  } while (n2 == 0.0);
  double scale = radius / std::sqrt(n2);
  for (double& v : x) v *= scale;
  return x;
}

}  // namespace numerics
}  // namespace dplab
