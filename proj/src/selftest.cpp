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

#include "dplab/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "dplab/analysis.hpp"
#include "dplab/losses.hpp"
#include "dplab/numerics.hpp"
#include "dplab/privacy.hpp"
#include "dplab/sgd.hpp"

namespace dplab {
namespace selftest {

namespace {

using losses::Example;
using losses::LossBounds;
using losses::PointwiseLoss;

bool check_projection() {
  numerics::RngState rng(20260801, 1);
  for (int trial = 0; trial < 2000; ++trial) {
    int d = 1 + static_cast<int>(numerics::uniform_index(rng, 16));
    double radius = 0.1 + 2.0 * rng.next_uniform();
    Vector u = numerics::gaussian_vector(rng, d, 2.0);
    Vector v = numerics::gaussian_vector(rng, d, 2.0);
    Vector pu = numerics::project_ball(u, radius);
    Vector pv = numerics::project_ball(v, radius);
    if (numerics::project_ball(pu, radius) != pu) return false;
    if (numerics::squared_norm(pu) > radius * radius) return false;
    double du = 0.0, dp = 0.0;
    for (size_t k = 0; k < pu.size(); ++k) {
      du += (u[k] - v[k]) * (u[k] - v[k]);
      dp += (pu[k] - pv[k]) * (pu[k] - pv[k]);
    }
    if (dp > du * (1.0 + 1e-12)) return false;
  }
  return true;
}

bool check_rng_moments() {
  numerics::RngState a(7, numerics::kNoiseStream);
  numerics::RngState b(7, numerics::kNoiseStream);
  Vector va = numerics::gaussian_vector(a, 64, 1.5);
  Vector vb = numerics::gaussian_vector(b, 64, 1.5);
  if (va != vb) return false;
  numerics::RngState rng(11, numerics::kNoiseStream);
  const int n = 100000;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double g = rng.next_gaussian();
    s2 += g * g;
  }
  return std::abs(s2 / n - 1.0) < 0.03;
}

bool check_certificates(bool corrupt_l) {
  const LossBounds bounds{1.0, 1.0, 1.0};
  std::vector<PointwiseLoss> fs = {
      losses::make_pointwise_loss("logistic", bounds),
      losses::make_pointwise_loss("least_squares", bounds),
      losses::make_pointwise_loss("hinge_q", bounds, 1.0),
      losses::make_pointwise_loss("hinge_q", bounds, 1.5),
      losses::make_pointwise_loss("qnorm", bounds, 1.5),
  };
  numerics::RngState rng(20260802, 2);
  int violations = 0;
  for (const PointwiseLoss& f : fs) {
    // The corrupt hook halves every certified L; the probes must then
    // report violations and fail this check.
    losses::SmoothnessClass cert = f.smoothness;
    if (corrupt_l) cert.L *= 0.5;
    for (int probe = 0; probe < 2000; ++probe) {
      Vector w = numerics::project_ball(
          numerics::gaussian_vector(rng, 6, 0.6), bounds.radius);
      Example z;
      z.x = numerics::sphere_point(rng, 6, bounds.feature_bound);
      z.y = rng.next_uniform() < 0.5 ? 1.0 : -1.0;
      double gn = numerics::norm(f.gradient(w, z));
      if (!losses::check_self_bounding_with(cert, f.M, gn, f.value(w, z))) {
        ++violations;
      }
    }
  }
  return violations == 0;
}

bool check_accountant_grid() {
  int feasible = 0;
  for (int64_t n : {64, 256, 1024, 4096}) {
    for (double eps : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      for (double beta : {0.001, 0.01, 0.1, 0.5, 0.9}) {
        for (auto which :
             {privacy::Mechanism::kPointwise, privacy::Mechanism::kPairwise}) {
          privacy::DpTarget target{eps, 1e-5};
          privacy::Calibration cal =
              which == privacy::Mechanism::kPointwise
                  ? privacy::calibrate_pointwise(n, n, 1.0, target, beta)
                  : privacy::calibrate_pairwise(n, n, 1.0, target, beta);
          if (!cal.feasible) continue;
          ++feasible;
          auto [eps_achieved, delta] =
              privacy::verify_run_privacy(cal, n, n, 1.0);
          if (eps_achieved > eps + 1e-12) return false;
          if (delta != 1e-5) return false;
        }
      }
    }
  }
  return feasible > 10;
}

bool check_rate_fitter() {
  std::vector<std::pair<double, double>> pts;
  for (double n : {128.0, 256.0, 512.0, 1024.0, 2048.0}) {
    pts.emplace_back(n, 4.0 / std::sqrt(n));
  }
  analysis::RateFit fit = analysis::fit_rate(pts);
  if (std::abs(fit.slope + 0.5) > 1e-9 || fit.r2 < 1.0 - 1e-12) return false;
  pts.clear();
  for (double n : {128.0, 256.0, 512.0, 1024.0, 2048.0}) {
    pts.emplace_back(n, 3.0 / n);
  }
  fit = analysis::fit_rate(pts);
  return std::abs(fit.slope + 1.0) <= 1e-9;
}

bool check_schedule_shapes() {
  auto hoelder = losses::SmoothnessClass::hoelder(0.0, 1.0);
  auto hoelder_half = losses::SmoothnessClass::hoelder(0.5, 1.0);
  for (int64_t n : {64, 128, 256, 512, 1024}) {
    sgd::Schedule s0 = sgd::make_schedule(sgd::Regime::kHoelderLowNoise, n,
                                          10, 1.0, 1e-5, hoelder, 1.0);
    if (s0.T != n * n) return false;
    sgd::Schedule s5 = sgd::make_schedule(sgd::Regime::kHoelderLowNoise, n,
                                          10, 1.0, 1e-5, hoelder_half, 1.0);
    if (s5.T != ceil_snap(std::pow(static_cast<double>(n), 4.0 / 3.0))) {
      return false;
    }
  }
  return true;
}

}  // namespace

int run(bool corrupt_l, std::ostream& out) {
  struct Check {
    std::string name;
    std::function<bool()> fn;
  };
  const std::vector<Check> checks = {
      {"projection_properties", [] { return check_projection(); }},
      {"rng_determinism_and_moments", [] { return check_rng_moments(); }},
      {"self_bounding_certificates",
       [corrupt_l] { return check_certificates(corrupt_l); }},
      {"accountant_grid_audit", [] { return check_accountant_grid(); }},
      {"rate_fitter_planted_slopes", [] { return check_rate_fitter(); }},
      {"schedule_shapes", [] { return check_schedule_shapes(); }},
  };

  int failures = 0;
  for (const Check& check : checks) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = check.fn();
    } catch (const std::exception& e) {
      note = std::string(" (") + e.what() + ")";
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    out << (ok ? "[ ok ] " : "[FAIL] ") << check.name << " ("
        << format_double(ms) << " ms)" << note << "\n";
    if (!ok) ++failures;
  }
  out << (failures == 0 ? "selftest passed\n"
                        : "selftest failed: " + std::to_string(failures) +
                              " check(s)\n");
  return failures;
}

}  // namespace selftest
}  // namespace dplab
