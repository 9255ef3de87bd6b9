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

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dplab {

// Raised when a user-supplied configuration fails parsing or validation.
// Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a requested run cannot be given a sound privacy guarantee.
// Maps to CLI exit code 3.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

// Compensated (Kahan) summation. The run reports promise the averaged
// iterate to 1e-12 relative accuracy even for T in the millions, which a
// naive accumulator does not give.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic seed derivation: seed_base combined with small integers
// (e.g. n and a run index). All per-run randomness flows through this so
// that parallel execution order cannot change results.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0) {
  return splitmix64(base ^ splitmix64(a ^ splitmix64(b)));
}

// Shortest-exact decimal for doubles (17 significant digits): the CSV and
// JSON outputs must round-trip losslessly and be byte-stable across runs.
std::string format_double(double x);

// ceil(x), except values within 1e-9 relative of an integer snap to that
// integer first. Iteration counts like n^{4/3} hit exact powers for many n
// and must not round up to one extra step.
int64_t ceil_snap(double x);

bool all_finite(const std::vector<double>& v);

}  // namespace dplab
