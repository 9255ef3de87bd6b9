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

#include "dplab/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace dplab {
namespace losses {

namespace {

// log(1 + exp(t)) without overflow; the exact asymptote t takes over for
// large positive t.
double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

// 1 / (1 + exp(-t)).
double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  double e = std::exp(t);
  return e / (1.0 + e);
}

void check_bounds(const LossBounds& b, bool needs_radius, bool needs_label) {
  if (!(b.feature_bound > 0.0)) {
    throw std::invalid_argument("loss bounds: feature_bound must be > 0");
  }
  if (needs_radius && !(b.radius > 0.0 && std::isfinite(b.radius))) {
    throw std::invalid_argument(
        "loss bounds: radius must be finite and > 0 for this loss");
  }
  if (needs_label && !(b.label_bound >= 0.0)) {
    throw std::invalid_argument("loss bounds: label_bound must be >= 0");
  }
}

void check_q(double q) {
  if (!(q >= 1.0 && q <= 2.0)) {
    throw std::invalid_argument("loss exponent q must lie in [1, 2]");
  }
}

SmoothnessClass q_class(double q, double L_hoelder, double L_smooth) {
  if (q == 2.0) return SmoothnessClass::smooth(L_smooth);
  return SmoothnessClass::hoelder(q - 1.0, L_hoelder);
}

}  // namespace

SmoothnessClass SmoothnessClass::smooth(double L) {
  if (!(L > 0.0)) throw std::invalid_argument("smoothness: L must be > 0");
  return SmoothnessClass{Kind::kSmooth, L, 1.0};
}

SmoothnessClass SmoothnessClass::hoelder(double alpha, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("smoothness: L must be > 0");
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("smoothness: alpha must lie in [0, 1)");
  }
  return SmoothnessClass{Kind::kHoelder, L, alpha};
}

PointwiseLoss make_pointwise_loss(const std::string& name,
                                  const LossBounds& bounds, double q) {
  const double B = bounds.feature_bound;
  const double R = bounds.radius;
  const double Y = bounds.label_bound;

  PointwiseLoss f;
  f.name = name;
  f.bounds = bounds;

  if (name == "logistic") {
    check_bounds(bounds, false, false);
    f.G = B;
    f.smoothness = SmoothnessClass::smooth(B * B / 4.0);
    f.M = std::log(2.0);
    f.value = [](const Vector& w, const Example& z) {
      return softplus(-z.y * numerics::dot(w, z.x));
    };
    f.gradient_into = [](const Vector& w, const Example& z, Vector& g) {
      double s = -z.y * sigmoid(-z.y * numerics::dot(w, z.x));
      for (size_t k = 0; k < g.size(); ++k) g[k] = s * z.x[k];
    };
    return f;
  }

  if (name == "least_squares") {
    check_bounds(bounds, true, true);
    f.G = 2.0 * B * (B * R + Y);
    f.smoothness = SmoothnessClass::smooth(2.0 * B * B);
    f.M = Y * Y;
    f.value = [](const Vector& w, const Example& z) {
      double r = numerics::dot(w, z.x) - z.y;
      return r * r;
    };
    f.gradient_into = [](const Vector& w, const Example& z, Vector& g) {
      double s = 2.0 * (numerics::dot(w, z.x) - z.y);
      for (size_t k = 0; k < g.size(); ++k) g[k] = s * z.x[k];
    };
    return f;
  }

  if (name == "hinge_q") {
    check_q(q);
    check_bounds(bounds, q > 1.0, false);
    if (q == 1.0) {
      f.G = B;
      // Subgradient jumps by at most ||y x|| <= B between the flat and
      // active regions.
      f.smoothness = SmoothnessClass::hoelder(0.0, B);
    } else {
      f.G = q * B * std::pow(1.0 + B * R, q - 1.0);
      f.smoothness = q_class(q, q * std::pow(B, q), 2.0 * B * B);
    }
    f.M = 1.0;
    f.value = [q](const Vector& w, const Example& z) {
      double m = 1.0 - z.y * numerics::dot(w, z.x);
      if (m <= 0.0) return 0.0;
      return q == 1.0 ? m : std::pow(m, q);
    };
    // At the kink (margin exactly 1) the chosen subgradient is 0, an
    // element of the subdifferential; this keeps value 0 => gradient 0.
    f.gradient_into = [q](const Vector& w, const Example& z, Vector& g) {
      double m = 1.0 - z.y * numerics::dot(w, z.x);
      double s = 0.0;
      if (m > 0.0) {
        s = -z.y * (q == 1.0 ? 1.0 : q * std::pow(m, q - 1.0));
      }
      for (size_t k = 0; k < g.size(); ++k) g[k] = s * z.x[k];
    };
    return f;
  }

  if (name == "qnorm") {
    check_q(q);
    check_bounds(bounds, true, true);
    if (q == 1.0) {
      f.G = B;
      f.smoothness = SmoothnessClass::hoelder(0.0, 2.0 * B);
      f.M = Y;
    } else {
      f.G = q * B * std::pow(Y + B * R, q - 1.0);
      // |sgn(a)|a|^{q-1} - sgn(b)|b|^{q-1}| <= 2^{2-q} |a-b|^{q-1}.
      f.smoothness =
          q_class(q, q * std::pow(2.0, 2.0 - q) * std::pow(B, q), 2.0 * B * B);
      f.M = std::pow(Y, q);
    }
    f.value = [q](const Vector& w, const Example& z) {
      double v = std::abs(z.y - numerics::dot(w, z.x));
      return q == 1.0 ? v : std::pow(v, q);
    };
    f.gradient_into = [q](const Vector& w, const Example& z, Vector& g) {
      double v = z.y - numerics::dot(w, z.x);
      double s = 0.0;
      if (v > 0.0) {
        s = -(q == 1.0 ? 1.0 : q * std::pow(v, q - 1.0));
      } else if (v < 0.0) {
        s = q == 1.0 ? 1.0 : q * std::pow(-v, q - 1.0);
      }
      for (size_t k = 0; k < g.size(); ++k) g[k] = s * z.x[k];
    };
    return f;
  }

  throw std::invalid_argument("unknown pointwise loss: " + name);
}

PairwiseLoss make_pairwise_loss(const std::string& name,
                                const LossBounds& bounds, double q) {
  const double B = bounds.feature_bound;
  const double R = bounds.radius;
  const double Y = bounds.label_bound;

  PairwiseLoss f;
  f.name = name;
  f.bounds = bounds;

  if (name == "auc_logistic") {
    check_bounds(bounds, false, false);
    f.G = 2.0 * B;
    f.smoothness = SmoothnessClass::smooth(B * B);
    f.M = std::log(2.0);
    f.value = [](const Vector& w, const Example& z, const Example& zp) {
      if (z.y == zp.y) return 0.0;
      double s = z.y > zp.y ? 1.0 : -1.0;
      double d = 0.0;
      for (size_t k = 0; k < w.size(); ++k) d += w[k] * (z.x[k] - zp.x[k]);
      return softplus(-s * d);
    };
    f.gradient_into = [](const Vector& w, const Example& z, const Example& zp,
                         Vector& g) {
      if (z.y == zp.y) {
        for (double& v : g) v = 0.0;
        return;
      }
      double s = z.y > zp.y ? 1.0 : -1.0;
      double d = 0.0;
      for (size_t k = 0; k < w.size(); ++k) d += w[k] * (z.x[k] - zp.x[k]);
      double c = -s * sigmoid(-s * d);
      for (size_t k = 0; k < g.size(); ++k) g[k] = c * (z.x[k] - zp.x[k]);
    };
    return f;
  }

  if (name == "auc_hinge_q") {
    check_q(q);
    check_bounds(bounds, q > 1.0, false);
    if (q == 1.0) {
      f.G = 2.0 * B;
      f.smoothness = SmoothnessClass::hoelder(0.0, 2.0 * B);
    } else {
      f.G = 2.0 * q * B * std::pow(1.0 + 2.0 * B * R, q - 1.0);
      f.smoothness = q_class(q, q * std::pow(2.0 * B, q), 8.0 * B * B);
    }
    f.M = 1.0;
    f.value = [q](const Vector& w, const Example& z, const Example& zp) {
      if (z.y == zp.y) return 0.0;
      double s = z.y > zp.y ? 1.0 : -1.0;
      double d = 0.0;
      for (size_t k = 0; k < w.size(); ++k) d += w[k] * (z.x[k] - zp.x[k]);
      double m = 1.0 - s * d;
      if (m <= 0.0) return 0.0;
      return q == 1.0 ? m : std::pow(m, q);
    };
    f.gradient_into = [q](const Vector& w, const Example& z, const Example& zp,
                          Vector& g) {
      for (double& v : g) v = 0.0;
      if (z.y == zp.y) return;
      double s = z.y > zp.y ? 1.0 : -1.0;
      double d = 0.0;
      for (size_t k = 0; k < w.size(); ++k) d += w[k] * (z.x[k] - zp.x[k]);
      double m = 1.0 - s * d;
      if (m <= 0.0) return;
      double c = -s * (q == 1.0 ? 1.0 : q * std::pow(m, q - 1.0));
      for (size_t k = 0; k < g.size(); ++k) g[k] = c * (z.x[k] - zp.x[k]);
    };
    return f;
  }

  if (name == "pair_squared") {
    check_bounds(bounds, true, true);
    f.G = 8.0 * B * (B * R + Y);
    f.smoothness = SmoothnessClass::smooth(8.0 * B * B);
    f.M = 4.0 * Y * Y;
    f.value = [](const Vector& w, const Example& z, const Example& zp) {
      double d = 0.0;
      for (size_t k = 0; k < w.size(); ++k) d += w[k] * (z.x[k] - zp.x[k]);
      double r = d - (z.y - zp.y);
      return r * r;
    };
    f.gradient_into = [](const Vector& w, const Example& z, const Example& zp,
                         Vector& g) {
      double d = 0.0;
      for (size_t k = 0; k < w.size(); ++k) d += w[k] * (z.x[k] - zp.x[k]);
      double c = 2.0 * (d - (z.y - zp.y));
      for (size_t k = 0; k < g.size(); ++k) g[k] = c * (z.x[k] - zp.x[k]);
    };
    return f;
  }

  throw std::invalid_argument("unknown pairwise loss: " + name);
}

bool is_pointwise_loss_name(const std::string& name) {
  return name == "logistic" || name == "least_squares" || name == "hinge_q" ||
         name == "qnorm";
}

bool is_pairwise_loss_name(const std::string& name) {
  return name == "auc_logistic" || name == "auc_hinge_q" ||
         name == "pair_squared";
}

double c_alpha_1(const SmoothnessClass& s, double M) {
  if (s.is_smooth()) return std::sqrt(2.0 * s.L);
  if (s.alpha == 0.0) return M + s.L;
  return std::pow(1.0 + 1.0 / s.alpha, s.alpha / (1.0 + s.alpha)) *
         std::pow(s.L, 1.0 / (1.0 + s.alpha));
}

double c_alpha_2(const SmoothnessClass& s, double M) {
  double c1 = c_alpha_1(s, M);
  if (s.is_smooth() || s.alpha == 0.0) return c1 * c1;
  double a = s.alpha;
  return (1.0 - a) / (1.0 + a) *
         std::pow(2.0 * a / (1.0 + a), 2.0 * a / (1.0 - a)) *
         std::pow(c1, (2.0 + 2.0 * a) / (1.0 - a));
}

double c_alpha_3(const SmoothnessClass& s) {
  if (s.is_smooth()) {
    throw std::invalid_argument("c_alpha_3 undefined for alpha = 1");
  }
  double a = s.alpha;
  return std::sqrt((1.0 - a) / (1.0 + a)) *
         std::pow(std::pow(2.0, -a) * s.L, 1.0 / (1.0 - a));
}

bool check_self_bounding_with(const SmoothnessClass& s, double M,
                              double grad_norm, double value) {
  double bound;
  if (s.is_smooth()) {
    bound = std::sqrt(2.0 * s.L * value);
  } else {
    bound = c_alpha_1(s, M) *
            (value == 0.0 && s.alpha == 0.0
                 ? 1.0
                 : std::pow(value, s.alpha / (1.0 + s.alpha)));
  }
  return grad_norm <= bound + 1e-9 * std::max(1.0, bound);
}

bool check_self_bounding(const PointwiseLoss& f, const Vector& w,
                         const Example& z) {
  return check_self_bounding_with(f.smoothness, f.M,
                                  numerics::norm(f.gradient(w, z)),
                                  f.value(w, z));
}

bool check_self_bounding(const PairwiseLoss& f, const Vector& w,
                         const Example& z, const Example& zp) {
  return check_self_bounding_with(f.smoothness, f.M,
                                  numerics::norm(f.gradient(w, z, zp)),
                                  f.value(w, z, zp));
}

}  // namespace losses
}  // namespace dplab
