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

#include "dplab/experiments.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dplab/parallel.hpp"

namespace dplab {
namespace experiments {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

}  // namespace

void SweepSpec::validate() const {
  if (!problems::is_problem_name(problem)) {
    throw ConfigError("sweep: unknown problem '" + problem + "'");
  }
  if (n_values.size() < 4) {
    throw ConfigError("sweep: n_values must contain at least 4 sizes");
  }
  for (size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] <= n_values[i - 1]) {
      throw ConfigError("sweep: n_values must be strictly increasing");
    }
  }
  if (mc_runs < 20) throw ConfigError("sweep: mc_runs must be >= 20");
  if (c_values.empty()) throw ConfigError("sweep: c_values must be nonempty");
  for (double c : c_values) {
    if (!(c > 0.0)) throw ConfigError("sweep: c values must be > 0");
  }
  if (!(epsilon > 0.0)) throw ConfigError("sweep: epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ConfigError("sweep: delta must lie in (0,1)");
  }
}

std::string canonical_spec_text(const SweepSpec& spec) {
  std::map<std::string, std::string> kv;
  kv["name"] = "\"" + spec.name + "\"";
  kv["problem"] = "\"" + spec.problem + "\"";
  kv["d"] = std::to_string(spec.params.d);
  kv["feature_bound"] = format_double(spec.params.feature_bound);
  kv["radius"] = format_double(spec.params.radius);
  kv["margin"] = format_double(spec.params.margin);
  kv["label_flip"] = format_double(spec.params.label_flip);
  kv["oracle_samples"] = std::to_string(spec.params.oracle_samples);
  kv["regime"] = "\"" + sgd::regime_name(spec.regime) + "\"";
  {
    std::string ns = "[";
    for (size_t i = 0; i < spec.n_values.size(); ++i) {
      if (i) ns += ", ";
      ns += std::to_string(spec.n_values[i]);
    }
    kv["n_values"] = ns + "]";
  }
  kv["mc_runs"] = std::to_string(spec.mc_runs);
  kv["epsilon"] = format_double(spec.epsilon);
  kv["delta"] = format_double(spec.delta);
  {
    std::string cs = "[";
    for (size_t i = 0; i < spec.c_values.size(); ++i) {
      if (i) cs += ", ";
      cs += format_double(spec.c_values[i]);
    }
    kv["c_values"] = cs + "]";
  }
  kv["seed_base"] = std::to_string(spec.seed_base);
  kv["force_sigma0"] = spec.force_sigma0 ? "true" : "false";

  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string content_hash(const std::string& text) {
  std::string blob = "blob " + std::to_string(text.size());
  blob.push_back('\0');
  blob += text;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) !=
      1) {
    throw std::runtime_error("sha1 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

SweepResult run_sweep(const SweepSpec& spec, const std::string& records_dir) {
  spec.validate();

  SweepResult result;
  result.config_text = canonical_spec_text(spec);
  result.config_hash = content_hash(result.config_text);

  problems::Problem problem = problems::make_problem(
      spec.problem, spec.params, derive_seed(spec.seed_base, 7, 7));
  const bool pairwise = problem.kind == problems::Problem::Kind::kPairwise;
  const double G = problem.lipschitz();
  const privacy::DpTarget target{spec.epsilon, spec.delta};
  const privacy::Mechanism mech = pairwise ? privacy::Mechanism::kPairwise
                                           : privacy::Mechanism::kPointwise;

  // Fail closed before any training: every n must calibrate, and each
  // emitted sigma^2 must survive the independent accountant audit.
  std::map<int64_t, privacy::Calibration> calibrations;
  std::map<int64_t, int64_t> iteration_counts;
  for (int64_t n : spec.n_values) {
    sgd::Schedule probe = sgd::make_schedule(spec.regime, n, spec.params.d,
                                             spec.epsilon, spec.delta,
                                             problem.smoothness(), 1.0);
    iteration_counts[n] = probe.T;
    if (spec.force_sigma0) continue;
    privacy::Calibration cal =
        privacy::find_beta(n, probe.T, G, target, mech);
    if (!cal.feasible) {
      std::string hint;
      if (n > 18) {
        hint = "; for T = n and delta = 1/n^2 a sufficient epsilon is " +
               format_double(privacy::min_epsilon_for_beta(n));
      }
      throw InfeasibleError(
          "sweep: no feasible noise calibration at n = " +
          std::to_string(n) + ", epsilon = " + format_double(spec.epsilon) +
          hint);
    }
    auto [eps_achieved, delta_achieved] =
        privacy::verify_run_privacy(cal, n, probe.T, G);
    if (eps_achieved > spec.epsilon + 1e-12) {
      throw InfeasibleError(
          "sweep: accountant audit failed: achieved epsilon " +
          format_double(eps_achieved) + " exceeds target " +
          format_double(spec.epsilon));
    }
    calibrations[n] = cal;
  }

  fs::path rec_dir;
  if (!records_dir.empty()) {
    rec_dir = records_dir;
    fs::create_directories(rec_dir);
  }
  const std::string tag = result.config_hash.substr(0, 12);

  for (size_t ci = 0; ci < spec.c_values.size(); ++ci) {
    const double c = spec.c_values[ci];
    SweepBlock block;
    block.c = c;

    for (int64_t n : spec.n_values) {
      sgd::Schedule schedule = sgd::make_schedule(spec.regime, n,
                                                  spec.params.d, spec.epsilon,
                                                  spec.delta,
                                                  problem.smoothness(), c);
      const double sigma2 =
          spec.force_sigma0 ? 0.0 : calibrations.at(n).sigma2;

      std::vector<double> excess(static_cast<size_t>(spec.mc_runs), 0.0);
      parallel_for_indexed(spec.mc_runs, spec.jobs, [&](int64_t run) {
        fs::path rec_path;
        if (!rec_dir.empty()) {
          rec_path = rec_dir / (tag + "_c" + std::to_string(ci) + "_n" +
                                std::to_string(n) + "_r" +
                                std::to_string(run) + ".json");
          if (fs::exists(rec_path)) {
            ordered_json j = ordered_json::parse(read_file(rec_path));
            excess[static_cast<size_t>(run)] = j.at("excess").get<double>();
            return;
          }
        }
        const uint64_t seed = derive_seed(
            spec.seed_base, static_cast<uint64_t>(n),
            static_cast<uint64_t>(run));
        auto data = problems::draw_dataset(problem, n, seed);
        sgd::SgdConfig cfg;
        cfg.radius = problem.radius;
        cfg.schedule = schedule;
        cfg.sigma2 = sigma2;
        cfg.seed = seed;
        cfg.n = n;
        cfg.d = spec.params.d;
        cfg.risk_stride = 0;
        Vector w = pairwise
                       ? sgd::run_pairwise(cfg, *problem.pair_loss, data)
                             .w_priv
                       : sgd::run_pointwise(cfg, *problem.loss, data).w_priv;
        double e = problem.population_risk(w) - problem.f_star;
        excess[static_cast<size_t>(run)] = e;
        if (!rec_dir.empty()) {
          ordered_json j;
          j["c"] = c;
          j["n"] = n;
          j["run"] = run;
          j["seed"] = seed;
          j["sigma2"] = sigma2;
          j["eta"] = schedule.eta;
          j["T"] = schedule.T;
          j["excess"] = e;
          write_file(rec_path, j.dump(2) + "\n");
        }
      });

      KahanSum mean;
      for (double e : excess) mean.add(e);
      double m = mean.value() / spec.mc_runs;
      KahanSum ss;
      for (double e : excess) ss.add((e - m) * (e - m));
      double sd = std::sqrt(ss.value() / (spec.mc_runs - 1));
      block.rows.push_back(SweepRow{
          n, m, sd / std::sqrt(static_cast<double>(spec.mc_runs)), sigma2,
          schedule.eta, schedule.T});
    }

    std::vector<std::pair<double, double>> pts;
    for (const SweepRow& r : block.rows) {
      pts.emplace_back(static_cast<double>(r.n), r.mean_excess);
    }
    block.fit = analysis::fit_rate(pts);
    result.blocks.push_back(std::move(block));
  }
  return result;
}

void emit_report(const SweepResult& result, const SweepSpec& spec,
                 const std::string& out_dir) {
  fs::path dir(out_dir);
  fs::create_directories(dir);

  for (size_t ci = 0; ci < result.blocks.size(); ++ci) {
    const SweepBlock& block = result.blocks[ci];
    std::string csv = "n,mean_excess,stderr,sigma2,eta,T\n";
    for (const SweepRow& r : block.rows) {
      csv += std::to_string(r.n) + "," + format_double(r.mean_excess) + "," +
             format_double(r.stderr_excess) + "," + format_double(r.sigma2) +
             "," + format_double(r.eta) + "," + std::to_string(r.T) + "\n";
    }
    std::string stem = spec.name;
    if (result.blocks.size() > 1) stem += "_c" + std::to_string(ci);
    write_file(dir / (stem + ".csv"), csv);
  }

  ordered_json meta;
  meta["config"] = result.config_text;
  meta["config_hash"] = result.config_hash;
  meta["seed_base"] = spec.seed_base;
  meta["seed_rule"] = "derive_seed(seed_base, n, run_index)";
  ordered_json fits = ordered_json::array();
  for (const SweepBlock& block : result.blocks) {
    ordered_json f;
    f["c"] = block.c;
    f["slope"] = block.fit.slope;
    f["intercept"] = block.fit.intercept;
    f["r2"] = block.fit.r2;
    fits.push_back(f);
  }
  meta["fits"] = fits;
  write_file(dir / (spec.name + ".json"), meta.dump(2) + "\n");
}

std::vector<SweepRow> parse_report_csv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line) || line != "n,mean_excess,stderr,sigma2,eta,T") {
    throw std::runtime_error("parse_report_csv: bad header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    SweepRow r;
    std::getline(ls, field, ',');
    r.n = std::stoll(field);
    std::getline(ls, field, ',');
    r.mean_excess = std::stod(field);
    std::getline(ls, field, ',');
    r.stderr_excess = std::stod(field);
    std::getline(ls, field, ',');
    r.sigma2 = std::stod(field);
    std::getline(ls, field, ',');
    r.eta = std::stod(field);
    std::getline(ls, field, ',');
    r.T = std::stoll(field);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace experiments
}  // namespace dplab
