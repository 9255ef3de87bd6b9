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
#include <string>
#include <vector>

#include "dplab/analysis.hpp"
#include "dplab/privacy.hpp"
#include "dplab/problems.hpp"
#include "dplab/sgd.hpp"

namespace dplab {
namespace experiments {

// One excess-risk-versus-n study: a problem, a schedule regime, an n
// grid, and Monte-Carlo repetitions per n. All randomness derives from
// seed_base; per-run seeds are derive_seed(seed_base, n, run).
struct SweepSpec {
  std::string name = "sweep";
  std::string problem;
  problems::ProblemParams params;
  sgd::Regime regime = sgd::Regime::kSmoothGeneral;
  std::vector<int64_t> n_values;
  int mc_runs = 50;
  double epsilon = 1.0;
  double delta = 1e-5;
  std::vector<double> c_values{1.0};
  uint64_t seed_base = 0;
  bool force_sigma0 = false;  // non-private baseline: skip calibration
  int jobs = 1;

  void validate() const;
};

struct SweepRow {
  int64_t n = 0;
  double mean_excess = 0.0;
  double stderr_excess = 0.0;
  double sigma2 = 0.0;
  double eta = 0.0;
  int64_t T = 0;
};

struct SweepBlock {
  double c = 1.0;
  std::vector<SweepRow> rows;
  analysis::RateFit fit;
};

struct SweepResult {
  std::string config_text;  // canonical spec echo
  std::string config_hash;  // git-style blob sha1 of config_text
  std::vector<SweepBlock> blocks;  // one per c value
};

// Canonical key = value echo of the spec (sorted keys, lossless floats).
std::string canonical_spec_text(const SweepSpec& spec);

// Hex sha1 of "blob <len>\0<text>".
std::string content_hash(const std::string& text);

// Runs the study. Fails closed before any training: every n must admit a
// feasible calibration (unless force_sigma0) and each emitted sigma^2 is
// re-verified through the accountant. When records_dir is nonempty,
// per-(c, n, run) records are written there incrementally and reused on
// re-runs, making a completed spec a byte-identical no-op.
SweepResult run_sweep(const SweepSpec& spec,
                      const std::string& records_dir = "");

// Writes <out_dir>/<name>.csv (plus _c<k> suffixes when several c values
// are swept) with the fixed header n,mean_excess,stderr,sigma2,eta,T and
// <out_dir>/<name>.json with the spec echo, hash, and fits.
void emit_report(const SweepResult& result, const SweepSpec& spec,
                 const std::string& out_dir);

// Parses a CSV produced by emit_report back into rows (tests use this for
// the round-trip contract).
std::vector<SweepRow> parse_report_csv(const std::string& csv_text);

}  // namespace experiments
}  // namespace dplab
