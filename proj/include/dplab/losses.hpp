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

#include <functional>
#include <string>
#include <vector>

#include "dplab/numerics.hpp"

namespace dplab {
namespace losses {

struct Example {
  Vector x;
  double y = 0.0;
};

// Gradient regularity class: either L-strongly-smooth (Lipschitz gradient)
// or alpha-Hoelder continuous (sub)gradient with alpha in [0, 1).
// alpha = 0 covers Lipschitz losses with bounded subgradient jumps.
struct SmoothnessClass {
  enum class Kind { kSmooth, kHoelder };

  Kind kind = Kind::kSmooth;
  double L = 0.0;
  double alpha = 1.0;  // 1 for smooth; [0,1) for Hoelder

  static SmoothnessClass smooth(double L);
  static SmoothnessClass hoelder(double alpha, double L);
  bool is_smooth() const { return kind == Kind::kSmooth; }
};

// Declared data bounds from which every constant below is certified at
// construction time. Noise calibration scales with G^2, so certificates
// must never depend on a data realization.
struct LossBounds {
  double feature_bound = 1.0;  // ||x||_2 <= B
  double radius = 1.0;         // ||w||_2 <= R (may be +inf only for losses
                               // whose G does not depend on it)
  double label_bound = 1.0;    // |y| <= Y
};

// Convex nonnegative loss on a single example, with certified Lipschitz
// constant G on the feasible ball, smoothness class, and M = sup_z f(0;z).
// Instances are immutable after construction and freely shareable.
struct PointwiseLoss {
  std::string name;
  double G = 0.0;
  SmoothnessClass smoothness;
  double M = 0.0;
  LossBounds bounds;
  std::function<double(const Vector&, const Example&)> value;
  std::function<void(const Vector&, const Example&, Vector&)> gradient_into;

  Vector gradient(const Vector& w, const Example& z) const {
    Vector g(w.size());
    gradient_into(w, z, g);
    return g;
  }
};

// As PointwiseLoss, measured on an ordered pair of examples.
struct PairwiseLoss {
  std::string name;
  double G = 0.0;
  SmoothnessClass smoothness;
  double M = 0.0;
  LossBounds bounds;
  std::function<double(const Vector&, const Example&, const Example&)> value;
  std::function<void(const Vector&, const Example&, const Example&, Vector&)>
      gradient_into;

  Vector gradient(const Vector& w, const Example& z, const Example& zp) const {
    Vector g(w.size());
    gradient_into(w, z, zp, g);
    return g;
  }
};

// Builtin registries. Names: "logistic", "least_squares", "hinge_q",
// "qnorm" (pointwise); "auc_hinge_q", "auc_logistic", "pair_squared"
// (pairwise). q applies to the *_q families and must lie in [1, 2];
// q = 2 lands in the smooth class, q < 2 in Hoelder(q - 1).
PointwiseLoss make_pointwise_loss(const std::string& name,
                                  const LossBounds& bounds, double q = 1.0);
PairwiseLoss make_pairwise_loss(const std::string& name,
                                const LossBounds& bounds, double q = 1.0);

bool is_pointwise_loss_name(const std::string& name);
bool is_pairwise_loss_name(const std::string& name);

// Self-bounding constants. For Hoelder classes:
//   c1 = (1 + 1/alpha)^{alpha/(1+alpha)} L^{1/(1+alpha)}  (alpha > 0)
//   c1 = M + L                                            (alpha = 0)
// A smooth class takes the smooth self-bounding constant sqrt(2L).
double c_alpha_1(const SmoothnessClass& s, double M);

// c2 = (1-alpha)/(1+alpha) (2 alpha/(1+alpha))^{2 alpha/(1-alpha)}
//      c1^{(2+2 alpha)/(1-alpha)} for alpha > 0; c1^2 at alpha = 0.
// Smooth classes take the c1^2 convention; the smooth optimization bound
// has no term using it.
double c_alpha_2(const SmoothnessClass& s, double M);

// c3 = sqrt((1-alpha)/(1+alpha)) (2^{-alpha} L)^{1/(1-alpha)}.
// Defined for Hoelder classes only; throws for smooth ones (the smooth
// stability bound has no step-size-only term).
double c_alpha_3(const SmoothnessClass& s);

inline double c_alpha_1(const PointwiseLoss& f) {
  return c_alpha_1(f.smoothness, f.M);
}
inline double c_alpha_1(const PairwiseLoss& f) {
  return c_alpha_1(f.smoothness, f.M);
}
inline double c_alpha_2(const PointwiseLoss& f) {
  return c_alpha_2(f.smoothness, f.M);
}
inline double c_alpha_2(const PairwiseLoss& f) {
  return c_alpha_2(f.smoothness, f.M);
}
inline double c_alpha_3(const PointwiseLoss& f) {
  return c_alpha_3(f.smoothness);
}
inline double c_alpha_3(const PairwiseLoss& f) {
  return c_alpha_3(f.smoothness);
}

// True iff the self-bounding inequality holds at (w, z) up to relative
// tolerance 1e-9:
//   smooth:   ||grad f|| <= sqrt(2 L f)
//   Hoelder:  ||grad f|| <= c1 f^{alpha/(1+alpha)}
bool check_self_bounding(const PointwiseLoss& f, const Vector& w,
                         const Example& z);
bool check_self_bounding(const PairwiseLoss& f, const Vector& w,
                         const Example& z, const Example& zp);

// Same check against explicitly supplied certificates; used by the
// negative-control probes that corrupt L on purpose.
bool check_self_bounding_with(const SmoothnessClass& s, double M,
                              double grad_norm, double value);

}  // namespace losses
}  // namespace dplab
