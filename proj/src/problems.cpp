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

#include "dplab/problems.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace dplab {
namespace problems {

namespace {

using losses::Example;

// Internal stream ids for construction-time randomness. Dataset draws use
// the caller's seed, so problems and datasets never share streams.
constexpr uint64_t kDirectionStream = 17;
constexpr uint64_t kProbeStream = 19;
constexpr uint64_t kPoolStream = 23;
constexpr uint64_t kPairStream = 29;

double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  double e = std::exp(t);
  return e / (1.0 + e);
}

Vector unit_direction(int d, uint64_t seed) {
  numerics::RngState rng(seed, kDirectionStream);
  return numerics::sphere_point(rng, d, 1.0);
}

void validate_common(int d, double B) {
  if (d < 1) throw std::invalid_argument("problem: d must be >= 1");
  if (!(B > 0.0)) {
    throw std::invalid_argument("problem: feature bound must be > 0");
  }
}

// Projected gradient descent to gradient-mapping norm <= tol. The frozen
// objectives here are smooth with curvature bounded by L and strictly
// convex on the ball, so the fixed step 1/L converges linearly.
Vector minimize_on_ball(int d, double radius, double L,
                        const std::function<void(const Vector&, Vector&)>&
                            grad_into,
                        double tol = 1e-6, int max_iters = 500000) {
  Vector w(static_cast<size_t>(d), 0.0);
  Vector g(static_cast<size_t>(d), 0.0);
  const double eta = 1.0 / L;
  for (int it = 0; it < max_iters; ++it) {
    grad_into(w, g);
    Vector next(w.size());
    for (size_t k = 0; k < w.size(); ++k) next[k] = w[k] - eta * g[k];
    next = numerics::project_ball(std::move(next), radius);
    double gm2 = 0.0;
    for (size_t k = 0; k < w.size(); ++k) {
      double dk = (w[k] - next[k]) / eta;
      gm2 += dk * dk;
    }
    w = std::move(next);
    if (std::sqrt(gm2) <= tol) return w;
  }
  throw std::runtime_error(
      "problem: population minimizer search did not reach tolerance");
}

// Flat frozen sample: K rows of d features plus one scalar per row
// (a label or P(y=1|x) depending on the problem).
struct Pool {
  int d = 0;
  int64_t K = 0;
  std::vector<double> xs;  // K * d, row-major
  std::vector<double> s;   // per-row scalar

  const double* row(int64_t k) const {
    return xs.data() + static_cast<size_t>(k) * static_cast<size_t>(d);
  }
  double dot_row(int64_t k, const Vector& w) const {
    const double* x = row(k);
    double acc = 0.0;
    for (int j = 0; j < d; ++j) acc += x[j] * w[static_cast<size_t>(j)];
    return acc;
  }
};

double check_acceptance(const std::function<bool(const Vector&)>& accept,
                        int d, double B, uint64_t seed, const char* what) {
  numerics::RngState rng(seed, kProbeStream);
  const int probes = 20000;
  int kept = 0;
  for (int i = 0; i < probes; ++i) {
    if (accept(numerics::sphere_point(rng, d, B))) ++kept;
  }
  double rate = static_cast<double>(kept) / probes;
  if (rate < 0.01) {
    throw std::invalid_argument(
        std::string(what) + ": conditioning keeps only " +
        format_double(100.0 * rate) +
        "% of draws (< 1%); pick a margin with more mass under the sphere "
        "projection");
  }
  return rate;
}

double sample_std_err(const std::vector<double>& vals) {
  if (vals.size() < 2) return 0.0;
  long double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= static_cast<long double>(vals.size());
  long double ss = 0.0;
  for (double v : vals) ss += (v - mean) * (v - mean);
  long double var = ss / static_cast<long double>(vals.size() - 1);
  return static_cast<double>(
      std::sqrt(var / static_cast<long double>(vals.size())));
}

}  // namespace

Problem realizable_least_squares(int d, double B, double R, uint64_t seed) {
  validate_common(d, B);
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw std::invalid_argument("problem: radius must be finite and > 0");
  }
  Problem p;
  p.name = "realizable_least_squares";
  p.kind = Problem::Kind::kPointwise;
  p.feature_bound = B;
  p.radius = R;
  p.label_bound = B * R / 2.0;

  Vector u = unit_direction(d, seed);
  p.w_star.resize(u.size());
  for (size_t k = 0; k < u.size(); ++k) p.w_star[k] = 0.5 * R * u[k];

  p.loss = losses::make_pointwise_loss("least_squares",
                                       {B, R, p.label_bound});
  p.f_star = 0.0;

  const Vector ws = p.w_star;
  const double scale = B * B / static_cast<double>(d);
  p.population_risk = [ws, scale](const Vector& w) {
    double s = 0.0;
    for (size_t k = 0; k < w.size(); ++k) {
      double dk = w[k] - ws[k];
      s += dk * dk;
    }
    return scale * s;
  };
  p.sample = [ws, B, d](numerics::RngState& rng) {
    Example z;
    z.x = numerics::sphere_point(rng, d, B);
    z.y = numerics::dot(ws, z.x);
    return z;
  };
  return p;
}

Problem separable_hinge(int d, double margin, double B, uint64_t seed,
                        int64_t oracle_samples) {
  validate_common(d, B);
  if (!(margin > 0.0 && margin < B)) {
    throw std::invalid_argument(
        "separable_hinge: margin must lie in (0, feature_bound)");
  }
  Problem p;
  p.name = "separable_hinge";
  p.kind = Problem::Kind::kPointwise;
  p.feature_bound = B;
  p.label_bound = 1.0;
  p.radius = 1.0 / margin;

  Vector u = unit_direction(d, seed);
  check_acceptance(
      [&u, margin](const Vector& x) {
        return std::abs(numerics::dot(u, x)) >= margin;
      },
      d, B, seed, "separable_hinge");

  p.w_star.resize(u.size());
  for (size_t k = 0; k < u.size(); ++k) p.w_star[k] = u[k] / margin;
  p.loss = losses::make_pointwise_loss("hinge_q", {B, p.radius, 1.0}, 1.0);
  p.f_star = 0.0;

  p.sample = [u, margin, B, d](numerics::RngState& rng) {
    Example z;
    double t = 0.0;
    do {
      z.x = numerics::sphere_point(rng, d, B);
      t = numerics::dot(u, z.x);
    } while (std::abs(t) < margin);
    z.y = t >= 0.0 ? 1.0 : -1.0;
    return z;
  };

  auto pool = std::make_shared<Pool>();
  pool->d = d;
  pool->K = oracle_samples;
  pool->xs.resize(static_cast<size_t>(oracle_samples) *
                  static_cast<size_t>(d));
  pool->s.resize(static_cast<size_t>(oracle_samples));
  {
    numerics::RngState rng(seed, kPoolStream);
    for (int64_t k = 0; k < oracle_samples; ++k) {
      Example z = p.sample(rng);
      std::copy(z.x.begin(), z.x.end(),
                pool->xs.begin() +
                    static_cast<size_t>(k) * static_cast<size_t>(d));
      pool->s[static_cast<size_t>(k)] = z.y;
    }
  }
  p.oracle_samples = oracle_samples;
  p.population_risk = [pool](const Vector& w) {
    long double acc = 0.0;
    for (int64_t k = 0; k < pool->K; ++k) {
      double m = 1.0 - pool->s[static_cast<size_t>(k)] * pool->dot_row(k, w);
      if (m > 0.0) acc += m;
    }
    return static_cast<double>(acc / static_cast<long double>(pool->K));
  };
  // Spread of per-sample values at a half-way reference point.
  {
    Vector half(p.w_star.size());
    for (size_t k = 0; k < half.size(); ++k) half[k] = 0.5 * p.w_star[k];
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(std::min<int64_t>(pool->K, 100000)));
    for (int64_t k = 0; k < std::min<int64_t>(pool->K, 100000); ++k) {
      double m = 1.0 - pool->s[static_cast<size_t>(k)] * pool->dot_row(k, half);
      vals.push_back(m > 0.0 ? m : 0.0);
    }
    p.oracle_std_err = sample_std_err(vals) *
                       std::sqrt(static_cast<double>(vals.size()) /
                                 static_cast<double>(pool->K));
  }
  return p;
}

Problem noisy_logistic(int d, double B, double R, double label_flip,
                       uint64_t seed, int64_t oracle_samples) {
  validate_common(d, B);
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw std::invalid_argument("problem: radius must be finite and > 0");
  }
  if (!(label_flip >= 0.0 && label_flip <= 0.5)) {
    throw std::invalid_argument(
        "noisy_logistic: label_flip must lie in [0, 0.5]");
  }
  Problem p;
  p.name = "noisy_logistic";
  p.kind = Problem::Kind::kPointwise;
  p.feature_bound = B;
  p.label_bound = 1.0;
  p.radius = R;
  p.loss = losses::make_pointwise_loss("logistic", {B, R, 1.0});

  Vector u = unit_direction(d, seed);
  Vector w_true(u.size());
  for (size_t k = 0; k < u.size(); ++k) w_true[k] = 0.5 * R * u[k];

  p.sample = [w_true, label_flip, B, d](numerics::RngState& rng) {
    Example z;
    z.x = numerics::sphere_point(rng, d, B);
    double p1 = sigmoid(numerics::dot(w_true, z.x));
    z.y = rng.next_uniform() < p1 ? 1.0 : -1.0;
    if (rng.next_uniform() < label_flip) z.y = -z.y;
    return z;
  };

  auto pool = std::make_shared<Pool>();
  pool->d = d;
  pool->K = oracle_samples;
  pool->xs.resize(static_cast<size_t>(oracle_samples) *
                  static_cast<size_t>(d));
  pool->s.resize(static_cast<size_t>(oracle_samples));
  {
    numerics::RngState rng(seed, kPoolStream);
    for (int64_t k = 0; k < oracle_samples; ++k) {
      Vector x = numerics::sphere_point(rng, d, B);
      std::copy(x.begin(), x.end(),
                pool->xs.begin() +
                    static_cast<size_t>(k) * static_cast<size_t>(d));
      double p1 = sigmoid(numerics::dot(w_true, x));
      // Label noise is integrated out analytically in the oracle.
      pool->s[static_cast<size_t>(k)] =
          (1.0 - label_flip) * p1 + label_flip * (1.0 - p1);
    }
  }
  p.oracle_samples = oracle_samples;
  p.population_risk = [pool](const Vector& w) {
    long double acc = 0.0;
    for (int64_t k = 0; k < pool->K; ++k) {
      double t = pool->dot_row(k, w);
      double p1 = pool->s[static_cast<size_t>(k)];
      acc += p1 * softplus(-t) + (1.0 - p1) * softplus(t);
    }
    return static_cast<double>(acc / static_cast<long double>(pool->K));
  };
  auto grad_into = [pool](const Vector& w, Vector& g) {
    std::fill(g.begin(), g.end(), 0.0);
    for (int64_t k = 0; k < pool->K; ++k) {
      double t = pool->dot_row(k, w);
      double p1 = pool->s[static_cast<size_t>(k)];
      double c = -p1 * sigmoid(-t) + (1.0 - p1) * sigmoid(t);
      const double* x = pool->row(k);
      for (int j = 0; j < pool->d; ++j) g[static_cast<size_t>(j)] += c * x[j];
    }
    for (double& v : g) v /= static_cast<double>(pool->K);
  };

  p.w_star = minimize_on_ball(d, R, B * B / 4.0, grad_into);
  p.f_star = p.population_risk(p.w_star);
  {
    std::vector<double> vals;
    int64_t m = std::min<int64_t>(pool->K, 100000);
    vals.reserve(static_cast<size_t>(m));
    for (int64_t k = 0; k < m; ++k) {
      double t = pool->dot_row(k, p.w_star);
      double p1 = pool->s[static_cast<size_t>(k)];
      vals.push_back(p1 * softplus(-t) + (1.0 - p1) * softplus(t));
    }
    p.oracle_std_err = std::max(
        sample_std_err(vals) * std::sqrt(static_cast<double>(vals.size()) /
                                         static_cast<double>(pool->K)),
        2e-6 * R);
  }
  return p;
}

Problem realizable_pairwise(int d, double B, double R, uint64_t seed) {
  validate_common(d, B);
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw std::invalid_argument("problem: radius must be finite and > 0");
  }
  Problem p;
  p.name = "realizable_pairwise";
  p.kind = Problem::Kind::kPairwise;
  p.feature_bound = B;
  p.radius = R;
  p.label_bound = B * R / 2.0;

  Vector u = unit_direction(d, seed);
  p.w_star.resize(u.size());
  for (size_t k = 0; k < u.size(); ++k) p.w_star[k] = 0.5 * R * u[k];
  p.pair_loss =
      losses::make_pairwise_loss("pair_squared", {B, R, p.label_bound});
  p.f_star = 0.0;

  const Vector ws = p.w_star;
  const double scale = 2.0 * B * B / static_cast<double>(d);
  p.population_risk = [ws, scale](const Vector& w) {
    double s = 0.0;
    for (size_t k = 0; k < w.size(); ++k) {
      double dk = w[k] - ws[k];
      s += dk * dk;
    }
    return scale * s;
  };
  p.sample = [ws, B, d](numerics::RngState& rng) {
    Example z;
    z.x = numerics::sphere_point(rng, d, B);
    z.y = numerics::dot(ws, z.x);
    return z;
  };
  return p;
}

namespace {

// Shared scaffolding for the pairwise frozen oracles: a pool of examples
// plus a frozen sample of ordered index pairs. Evaluations precompute the
// pool projections once, so an oracle call is O(K d + M) rather than
// O(M d).
struct PairOracle {
  Pool pool;
  std::vector<int64_t> pi, pj;

  void draw_pairs(uint64_t seed, int64_t M) {
    numerics::RngState rng(seed, kPairStream);
    pi.resize(static_cast<size_t>(M));
    pj.resize(static_cast<size_t>(M));
    for (int64_t m = 0; m < M; ++m) {
      auto [i, j] = numerics::uniform_distinct_pair(rng, pool.K);
      pi[static_cast<size_t>(m)] = i;
      pj[static_cast<size_t>(m)] = j;
    }
  }

  void project(const Vector& w, std::vector<double>& out) const {
    out.resize(static_cast<size_t>(pool.K));
    for (int64_t k = 0; k < pool.K; ++k) {
      out[static_cast<size_t>(k)] = pool.dot_row(k, w);
    }
  }
};

}  // namespace

Problem separable_auc(int d, double margin, double B, uint64_t seed,
                      int64_t oracle_samples) {
  validate_common(d, B);
  if (!(margin > 0.0 && margin < B)) {
    throw std::invalid_argument(
        "separable_auc: margin must lie in (0, feature_bound)");
  }
  Problem p;
  p.name = "separable_auc";
  p.kind = Problem::Kind::kPairwise;
  p.feature_bound = B;
  p.label_bound = 1.0;
  p.radius = 1.0 / (2.0 * margin);

  Vector u = unit_direction(d, seed);
  check_acceptance(
      [&u, margin](const Vector& x) {
        return numerics::dot(u, x) >= margin;
      },
      d, B, seed, "separable_auc");

  p.w_star.resize(u.size());
  for (size_t k = 0; k < u.size(); ++k) {
    p.w_star[k] = u[k] / (2.0 * margin);
  }
  p.pair_loss =
      losses::make_pairwise_loss("auc_hinge_q", {B, p.radius, 1.0}, 1.0);
  p.f_star = 0.0;

  p.sample = [u, margin, B, d](numerics::RngState& rng) {
    Example z;
    double side = rng.next_uniform() < 0.5 ? 1.0 : -1.0;
    double t = 0.0;
    do {
      z.x = numerics::sphere_point(rng, d, B);
      t = numerics::dot(u, z.x);
    } while (side * t < margin);
    z.y = side;
    return z;
  };

  auto oracle = std::make_shared<PairOracle>();
  oracle->pool.d = d;
  oracle->pool.K = oracle_samples;
  oracle->pool.xs.resize(static_cast<size_t>(oracle_samples) *
                         static_cast<size_t>(d));
  oracle->pool.s.resize(static_cast<size_t>(oracle_samples));
  {
    numerics::RngState rng(seed, kPoolStream);
    for (int64_t k = 0; k < oracle_samples; ++k) {
      Example z = p.sample(rng);
      std::copy(z.x.begin(), z.x.end(),
                oracle->pool.xs.begin() +
                    static_cast<size_t>(k) * static_cast<size_t>(d));
      oracle->pool.s[static_cast<size_t>(k)] = z.y;
    }
  }
  oracle->draw_pairs(seed, oracle_samples);
  p.oracle_samples = oracle_samples;
  p.population_risk = [oracle](const Vector& w) {
    std::vector<double> v;
    oracle->project(w, v);
    long double acc = 0.0;
    const int64_t M = static_cast<int64_t>(oracle->pi.size());
    for (int64_t m = 0; m < M; ++m) {
      int64_t i = oracle->pi[static_cast<size_t>(m)];
      int64_t j = oracle->pj[static_cast<size_t>(m)];
      double yi = oracle->pool.s[static_cast<size_t>(i)];
      double yj = oracle->pool.s[static_cast<size_t>(j)];
      if (yi == yj) continue;
      double s = yi > yj ? 1.0 : -1.0;
      double mgn =
          1.0 - s * (v[static_cast<size_t>(i)] - v[static_cast<size_t>(j)]);
      if (mgn > 0.0) acc += mgn;
    }
    return static_cast<double>(acc / static_cast<long double>(M));
  };
  p.oracle_std_err = 0.0;  // exact zero at w_star by the margin construction
  return p;
}

Problem noisy_auc_logistic(int d, double B, double R, double label_flip,
                           uint64_t seed, int64_t oracle_samples) {
  validate_common(d, B);
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw std::invalid_argument("problem: radius must be finite and > 0");
  }
  if (!(label_flip >= 0.0 && label_flip <= 0.5)) {
    throw std::invalid_argument(
        "noisy_auc_logistic: label_flip must lie in [0, 0.5]");
  }
  Problem p;
  p.name = "noisy_auc_logistic";
  p.kind = Problem::Kind::kPairwise;
  p.feature_bound = B;
  p.label_bound = 1.0;
  p.radius = R;
  p.pair_loss = losses::make_pairwise_loss("auc_logistic", {B, R, 1.0});

  Vector u = unit_direction(d, seed);
  Vector w_true(u.size());
  for (size_t k = 0; k < u.size(); ++k) w_true[k] = 0.5 * R * u[k];

  p.sample = [w_true, label_flip, B, d](numerics::RngState& rng) {
    Example z;
    z.x = numerics::sphere_point(rng, d, B);
    double p1 = sigmoid(numerics::dot(w_true, z.x));
    z.y = rng.next_uniform() < p1 ? 1.0 : -1.0;
    if (rng.next_uniform() < label_flip) z.y = -z.y;
    return z;
  };

  auto oracle = std::make_shared<PairOracle>();
  oracle->pool.d = d;
  oracle->pool.K = oracle_samples;
  oracle->pool.xs.resize(static_cast<size_t>(oracle_samples) *
                         static_cast<size_t>(d));
  oracle->pool.s.resize(static_cast<size_t>(oracle_samples));
  {
    numerics::RngState rng(seed, kPoolStream);
    for (int64_t k = 0; k < oracle_samples; ++k) {
      Vector x = numerics::sphere_point(rng, d, B);
      std::copy(x.begin(), x.end(),
                oracle->pool.xs.begin() +
                    static_cast<size_t>(k) * static_cast<size_t>(d));
      double p1 = sigmoid(numerics::dot(w_true, x));
      oracle->pool.s[static_cast<size_t>(k)] =
          (1.0 - label_flip) * p1 + label_flip * (1.0 - p1);
    }
  }
  oracle->draw_pairs(seed, oracle_samples);
  p.oracle_samples = oracle_samples;

  p.population_risk = [oracle](const Vector& w) {
    std::vector<double> v;
    oracle->project(w, v);
    long double acc = 0.0;
    const int64_t M = static_cast<int64_t>(oracle->pi.size());
    for (int64_t m = 0; m < M; ++m) {
      int64_t i = oracle->pi[static_cast<size_t>(m)];
      int64_t j = oracle->pj[static_cast<size_t>(m)];
      double ai = oracle->pool.s[static_cast<size_t>(i)];
      double aj = oracle->pool.s[static_cast<size_t>(j)];
      double delta =
          v[static_cast<size_t>(i)] - v[static_cast<size_t>(j)];
      acc += ai * (1.0 - aj) * softplus(-delta) +
             aj * (1.0 - ai) * softplus(delta);
    }
    return static_cast<double>(acc / static_cast<long double>(M));
  };
  auto grad_into = [oracle](const Vector& w, Vector& g) {
    std::vector<double> v;
    oracle->project(w, v);
    const int64_t M = static_cast<int64_t>(oracle->pi.size());
    std::vector<double> a(static_cast<size_t>(oracle->pool.K), 0.0);
    for (int64_t m = 0; m < M; ++m) {
      int64_t i = oracle->pi[static_cast<size_t>(m)];
      int64_t j = oracle->pj[static_cast<size_t>(m)];
      double ai = oracle->pool.s[static_cast<size_t>(i)];
      double aj = oracle->pool.s[static_cast<size_t>(j)];
      double delta =
          v[static_cast<size_t>(i)] - v[static_cast<size_t>(j)];
      double c = -ai * (1.0 - aj) * sigmoid(-delta) +
                 aj * (1.0 - ai) * sigmoid(delta);
      a[static_cast<size_t>(i)] += c;
      a[static_cast<size_t>(j)] -= c;
    }
    std::fill(g.begin(), g.end(), 0.0);
    for (int64_t k = 0; k < oracle->pool.K; ++k) {
      double c = a[static_cast<size_t>(k)];
      if (c == 0.0) continue;
      const double* x = oracle->pool.row(k);
      for (int j = 0; j < oracle->pool.d; ++j) {
        g[static_cast<size_t>(j)] += c * x[j];
      }
    }
    for (double& gv : g) gv /= static_cast<double>(M);
  };

  p.w_star = minimize_on_ball(d, R, B * B, grad_into);
  p.f_star = p.population_risk(p.w_star);
  p.oracle_std_err = std::max(1.0 / std::sqrt(static_cast<double>(
                                  oracle_samples)) * 0.5,
                              2e-6 * R);
  return p;
}

bool is_problem_name(const std::string& name) {
  return name == "realizable_least_squares" || name == "separable_hinge" ||
         name == "noisy_logistic" || name == "realizable_pairwise" ||
         name == "separable_auc" || name == "noisy_auc_logistic";
}

bool problem_is_pairwise(const std::string& name) {
  return name == "realizable_pairwise" || name == "separable_auc" ||
         name == "noisy_auc_logistic";
}

Problem make_problem(const std::string& name, const ProblemParams& params,
                     uint64_t seed) {
  if (name == "realizable_least_squares") {
    return realizable_least_squares(params.d, params.feature_bound,
                                    params.radius, seed);
  }
  if (name == "separable_hinge") {
    return separable_hinge(params.d, params.margin, params.feature_bound,
                           seed, params.oracle_samples);
  }
  if (name == "noisy_logistic") {
    return noisy_logistic(params.d, params.feature_bound, params.radius,
                          params.label_flip, seed, params.oracle_samples);
  }
  if (name == "realizable_pairwise") {
    return realizable_pairwise(params.d, params.feature_bound, params.radius,
                               seed);
  }
  if (name == "separable_auc") {
    return separable_auc(params.d, params.margin, params.feature_bound, seed,
                         params.oracle_samples);
  }
  if (name == "noisy_auc_logistic") {
    return noisy_auc_logistic(params.d, params.feature_bound, params.radius,
                              params.label_flip, seed,
                              params.oracle_samples);
  }
  throw std::invalid_argument("unknown problem: " + name);
}

std::vector<losses::Example> draw_dataset(const Problem& p, int64_t n,
                                          uint64_t seed) {
  if (n < 1) throw std::invalid_argument("draw_dataset: n must be >= 1");
  numerics::RngState rng(seed, numerics::kDataStream);
  std::vector<losses::Example> data;
  data.reserve(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) data.push_back(p.sample(rng));
  return data;
}

}  // namespace problems
}  // namespace dplab
