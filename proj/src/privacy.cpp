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

#include "dplab/privacy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dplab {
namespace privacy {

namespace {

constexpr double kSigmaFloorFactor = 0.67;  // sigma^2 >= 0.67 delta2^2

Calibration calibrate_impl(int64_t n, int64_t T, double G,
                           const DpTarget& target, double beta,
                           Mechanism which) {
  target.validate();
  if (n < 1 || T < 1) {
    throw std::invalid_argument("calibrate: n and T must be >= 1");
  }
  if (!(G > 0.0)) throw std::invalid_argument("calibrate: G must be > 0");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("calibrate: beta must lie in (0, 1)");
  }

  const double coeff = which == Mechanism::kPointwise ? 14.0 : 56.0;
  const double p = which == Mechanism::kPointwise
                       ? 1.0 / static_cast<double>(n)
                       : 2.0 / static_cast<double>(n);

  Calibration cal;
  cal.beta = beta;
  cal.which = which;
  cal.target = target;
  cal.lambda =
      std::log(1.0 / target.delta) / ((1.0 - beta) * target.epsilon) + 1.0;
  cal.sigma2 = coeff * G * G * static_cast<double>(T) /
               (beta * static_cast<double>(n) * static_cast<double>(n) *
                target.epsilon) *
               cal.lambda;
  cal.feasible = !subsampled_rdp_violation(p, cal.lambda,
                                           gradient_sensitivity(G), cal.sigma2)
                      .has_value();
  return cal;
}

}  // namespace

void DpTarget::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive and finite");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1)");
  }
}

Sensitivity gradient_sensitivity(double G) {
  if (!(G > 0.0)) {
    throw std::invalid_argument("gradient_sensitivity: G must be > 0");
  }
  return Sensitivity{2.0 * G};
}

std::optional<std::string> subsampled_rdp_violation(double p, double lambda,
                                                    Sensitivity delta2,
                                                    double sigma2) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("subsampled_rdp: p must lie in (0, 1]");
  }
  if (!(lambda > 1.0)) {
    throw std::invalid_argument("subsampled_rdp: lambda must be > 1");
  }
  if (!(delta2.delta2 > 0.0)) {
    throw std::invalid_argument("subsampled_rdp: sensitivity must be > 0");
  }
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("subsampled_rdp: sigma2 must be > 0");
  }
  const double d2 = delta2.delta2 * delta2.delta2;
  if (sigma2 < kSigmaFloorFactor * d2) {
    return "noise floor violated: sigma2 = " + format_double(sigma2) +
           " < 0.67 * Delta^2 = " + format_double(kSigmaFloorFactor * d2);
  }
  const double log_arg = 1.0 / (lambda * p * (1.0 + sigma2 / d2));
  const double rhs = 2.0 * sigma2 / (3.0 * d2) * std::log(log_arg);
  if (lambda - 1.0 > rhs) {
    return "order window violated: lambda - 1 = " +
           format_double(lambda - 1.0) +
           " > (2 sigma2 / 3 Delta^2) log(1/(lambda p (1 + sigma2/Delta^2)))"
           " = " +
           format_double(rhs);
  }
  return std::nullopt;
}

RdpClaim subsampled_rdp(double p, double lambda, Sensitivity delta2,
                        double sigma2) {
  if (auto why = subsampled_rdp_violation(p, lambda, delta2, sigma2)) {
    throw InfeasibleError("subsampled_rdp: " + *why);
  }
  const double d2 = delta2.delta2 * delta2.delta2;
  return RdpClaim{lambda, 3.5 * p * p * lambda * d2 / sigma2};
}

RdpClaim compose(const std::vector<RdpClaim>& claims) {
  if (claims.empty()) {
    return RdpClaim{std::numeric_limits<double>::infinity(), 0.0};
  }
  RdpClaim out{claims.front().lambda, 0.0};
  for (const RdpClaim& c : claims) {
    if (c.lambda != out.lambda) {
      throw std::invalid_argument(
          "compose: all claims must share the same lambda");
    }
    out.rho += c.rho;
  }
  return out;
}

double rdp_to_dp(const RdpClaim& claim, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("rdp_to_dp: delta must lie in (0,1)");
  }
  if (!(claim.lambda > 1.0) || claim.rho < 0.0) {
    throw std::invalid_argument("rdp_to_dp: invalid claim");
  }
  return claim.rho + std::log(1.0 / delta) / (claim.lambda - 1.0);
}

Calibration calibrate_pointwise(int64_t n, int64_t T, double G,
                                const DpTarget& target, double beta) {
  return calibrate_impl(n, T, G, target, beta, Mechanism::kPointwise);
}

Calibration calibrate_pairwise(int64_t n, int64_t T, double G,
                               const DpTarget& target, double beta) {
  return calibrate_impl(n, T, G, target, beta, Mechanism::kPairwise);
}

const std::vector<double>& beta_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g;
    // Log-spaced tail: 1e-7 up to (not including) 1e-3, 30 points per
    // decade.
    for (int k = 0; k < 120; ++k) {
      double b = std::pow(10.0, -7.0 + static_cast<double>(k) / 30.0);
      if (b >= 1e-3) break;
      g.push_back(b);
    }
    // Uniform grid 0.001 .. 0.999.
    for (int k = 1; k <= 999; ++k) {
      g.push_back(static_cast<double>(k) / 1000.0);
    }
    return g;
  }();
  return grid;
}

Calibration find_beta(int64_t n, int64_t T, double G, const DpTarget& target,
                      Mechanism which) {
  Calibration best;
  best.which = which;
  best.target = target;
  best.feasible = false;
  for (double beta : beta_grid()) {
    Calibration cal = calibrate_impl(n, T, G, target, beta, which);
    if (cal.feasible && (!best.feasible || cal.sigma2 < best.sigma2)) {
      best = cal;
    }
  }
  return best;
}

double min_epsilon_for_beta(int64_t n) {
  if (n <= 18) {
    throw std::invalid_argument("min_epsilon_for_beta requires n > 18");
  }
  const double nd = static_cast<double>(n);
  const double root = std::cbrt(nd) - 1.0;
  return (7.0 * root + 4.0 * std::log(nd) * nd + 7.0) / (2.0 * nd * root);
}

std::pair<double, double> verify_run_privacy(const Calibration& cal,
                                             int64_t n, int64_t T, double G) {
  if (!cal.feasible) {
    throw InfeasibleError(
        "verify_run_privacy: calibration is not feasible; refusing to "
        "account an unsound run");
  }
  const double p = cal.which == Mechanism::kPointwise
                       ? 1.0 / static_cast<double>(n)
                       : 2.0 / static_cast<double>(n);
  RdpClaim step = subsampled_rdp(p, cal.lambda, gradient_sensitivity(G),
                                 cal.sigma2);
  // T identical claims compose to T * rho exactly (sum of equals).
  RdpClaim total{step.lambda, static_cast<double>(T) * step.rho};
  return {rdp_to_dp(total, cal.target.delta), cal.target.delta};
}

}  // namespace privacy
}  // namespace dplab
