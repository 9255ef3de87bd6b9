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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dplab/losses.hpp"
#include "dplab/numerics.hpp"

namespace dplab {
namespace problems {

// A synthetic learning problem: a seedable example distribution, the loss
// it is paired with, and a population-risk oracle with known minimizer
// w_star and value f_star. Low-noise constructions have f_star = 0
// exactly. Immutable after construction; samplers take an explicit rng.
struct Problem {
  std::string name;
  enum class Kind { kPointwise, kPairwise } kind = Kind::kPointwise;
  std::optional<losses::PointwiseLoss> loss;
  std::optional<losses::PairwiseLoss> pair_loss;

  double feature_bound = 1.0;
  double label_bound = 1.0;
  double radius = 1.0;  // feasible ball, always contains w_star

  Vector w_star;
  double f_star = 0.0;
  // Closed form where available, otherwise an average over a frozen
  // Monte-Carlo sample drawn once at construction (the declared fields
  // below). A frozen oracle is exact as a function, so excess-risk
  // comparisons against its own minimizer are noise-free.
  std::function<double(const Vector&)> population_risk;
  int64_t oracle_samples = 0;  // 0 = closed form
  double oracle_std_err = 0.0;

  std::function<losses::Example(numerics::RngState&)> sample;

  double lipschitz() const {
    return kind == Kind::kPointwise ? loss->G : pair_loss->G;
  }
  const losses::SmoothnessClass& smoothness() const {
    return kind == Kind::kPointwise ? loss->smoothness
                                    : pair_loss->smoothness;
  }
};

// x uniform on the radius-B sphere, y = <w_star, x> with |w_star| = R/2,
// squared loss. Population risk is the closed form
// |w - w_star|^2 B^2 / d; f_star = 0 exactly.
Problem realizable_least_squares(int d, double B, double R, uint64_t seed);

// Linearly separable hinge problem: x on the radius-B sphere conditioned
// on |<u, x>| >= margin for a unit u, y = sign<u, x>, w_star = u / margin
// so that y <w_star, x> >= 1 almost surely; f_star = 0. Throws when the
// conditioning keeps fewer than 1% of draws.
Problem separable_hinge(int d, double margin, double B, uint64_t seed,
                        int64_t oracle_samples = 1000000);

// Logistic-model labels with flip noise; f_star > 0. w_star is located by
// projected gradient descent on the frozen oracle (gradient-mapping norm
// <= 1e-6) and cached.
Problem noisy_logistic(int d, double B, double R, double label_flip,
                       uint64_t seed, int64_t oracle_samples = 1000000);

// Pairwise analogue of realizable_least_squares for the pair_squared
// loss: population pairwise risk is 2 B^2 |w - w_star|^2 / d; f_star = 0.
Problem realizable_pairwise(int d, double B, double R, uint64_t seed);

// Two separated classes on the sphere (side s: s <u, x> >= margin),
// auc_hinge loss with w_star = u / (2 margin); f_star = 0.
Problem separable_auc(int d, double margin, double B, uint64_t seed,
                      int64_t oracle_samples = 1000000);

// Pairwise AUC problem with logistic-model labels and flip noise;
// f_star > 0, frozen pair oracle, w_star located numerically.
Problem noisy_auc_logistic(int d, double B, double R, double label_flip,
                           uint64_t seed, int64_t oracle_samples = 1000000);

struct ProblemParams {
  int d = 10;
  double feature_bound = 1.0;
  double radius = 1.0;
  double margin = 0.2;
  double label_flip = 0.1;
  int64_t oracle_samples = 1000000;
};

bool is_problem_name(const std::string& name);
bool problem_is_pairwise(const std::string& name);
Problem make_problem(const std::string& name, const ProblemParams& params,
                     uint64_t seed);

// n i.i.d. examples from the problem's sampler on the data stream of the
// given seed.
std::vector<losses::Example> draw_dataset(const Problem& p, int64_t n,
                                          uint64_t seed);

}  // namespace problems
}  // namespace dplab
