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
#include <random>
#include <utility>
#include <vector>

#include "dplab/common.hpp"

namespace dplab {

using Vector = std::vector<double>;

namespace numerics {

double dot(const Vector& a, const Vector& b);
double squared_norm(const Vector& v);
double norm(const Vector& v);

// Seedable random stream. Distinct stream ids on the same seed give
// independent-quality streams; a run keeps index sampling and noise on
// separate streams so paired trajectories can share either one.
//
// Determinism contract: identical (seed, stream) gives an identical draw
// sequence on the same build. The engine is std::mt19937_64 (fully
// specified by the standard); uniforms take the top 53 bits; normals use
// the Box-Muller transform with the second variate cached.
class RngState {
 public:
  explicit RngState(uint64_t seed, uint64_t stream = 0);

  // Uniform on [0, 1).
  double next_uniform();
  // Standard normal draw.
  double next_gaussian();
  // Unbiased uniform integer in [0, n), by rejection.
  uint64_t next_below(uint64_t n);

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

 private:
  std::mt19937_64 engine_;
  uint64_t seed_ = 0;
  uint64_t stream_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Conventional stream ids used throughout the harness.
inline constexpr uint64_t kIndexStream = 1;
inline constexpr uint64_t kNoiseStream = 2;
inline constexpr uint64_t kDataStream = 3;

// Euclidean projection onto the centered ball. radius may be +infinity
// (unconstrained). Throws std::domain_error("non-finite vector") on
// NaN/Inf input. The result has squared norm <= radius^2 exactly in
// floating point, which makes the projection idempotent bit-for-bit.
Vector project_ball(Vector w, double radius);

// d independent N(0, sigma^2) draws. sigma = 0 yields the zero vector;
// the stream advances by the same amount either way.
Vector gaussian_vector(RngState& rng, int d, double sigma);
void gaussian_vector_into(RngState& rng, double sigma, Vector& out);

// Uniform index in [0, n).
int64_t uniform_index(RngState& rng, int64_t n);

// Uniform ordered pair (i, j), i != j, each of the n(n-1) pairs with equal
// probability. Rejection-free: j is drawn in [0, n-1) and remapped past i.
std::pair<int64_t, int64_t> uniform_distinct_pair(RngState& rng, int64_t n);

// Uniform point on the sphere of the given radius.
Vector sphere_point(RngState& rng, int d, double radius);

}  // namespace numerics
}  // namespace dplab
