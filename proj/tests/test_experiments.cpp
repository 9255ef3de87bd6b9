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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "dplab/experiments.hpp"

using namespace dplab;
using namespace dplab::experiments;
namespace fs = std::filesystem;

namespace {

SweepSpec tiny_spec() {
  SweepSpec spec;
  spec.name = "tiny";
  spec.problem = "realizable_least_squares";
  spec.params.d = 3;
  spec.params.feature_bound = 1.0;
  spec.params.radius = 1.0;
  spec.regime = sgd::Regime::kSmoothGeneral;
  spec.n_values = {8, 12, 16, 24};
  spec.mc_runs = 20;
  spec.epsilon = 4.0;
  spec.delta = 1e-3;
  spec.c_values = {1.0};
  spec.seed_base = 12345;
  spec.force_sigma0 = true;
  spec.jobs = 2;
  return spec;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE_BEGIN("experiments");

TEST_CASE("canonical spec text and content hash are stable") {
  SweepSpec spec = tiny_spec();
  std::string text = canonical_spec_text(spec);
  CHECK(text == canonical_spec_text(spec));
  CHECK(text.find("problem = \"realizable_least_squares\"") !=
        std::string::npos);
  std::string hash = content_hash(text);
  CHECK(hash.size() == 40);
  CHECK(hash == content_hash(text));
  // git blob convention: known digest of the empty string
  CHECK(content_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  spec.seed_base += 1;
  CHECK(content_hash(canonical_spec_text(spec)) != hash);
}

TEST_CASE("spec validation rejects malformed studies") {
  SweepSpec spec = tiny_spec();
  spec.n_values = {8, 12, 16};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = tiny_spec();
  spec.n_values = {8, 12, 12, 16};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = tiny_spec();
  spec.mc_runs = 10;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = tiny_spec();
  spec.problem = "unknown";
  CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("sweep results are deterministic and emitted reports round-trip") {
  SweepSpec spec = tiny_spec();
  SweepResult a = run_sweep(spec);
  SweepResult b = run_sweep(spec);
  REQUIRE(a.blocks.size() == 1);
  REQUIRE(a.blocks[0].rows.size() == 4);
  for (size_t i = 0; i < a.blocks[0].rows.size(); ++i) {
    CHECK(a.blocks[0].rows[i].mean_excess ==
          b.blocks[0].rows[i].mean_excess);
    CHECK(a.blocks[0].rows[i].stderr_excess ==
          b.blocks[0].rows[i].stderr_excess);
  }
  CHECK(a.blocks[0].fit.slope == b.blocks[0].fit.slope);

  // Excess population risk never dips below the oracle noise band.
  for (const SweepRow& row : a.blocks[0].rows) {
    CHECK(row.mean_excess >= -3.0 * 1e-6);
    CHECK(row.sigma2 == 0.0);
  }

  TempDir dir("dplab_emit_test");
  emit_report(a, spec, dir.path.string());
  std::string csv = slurp(dir.path / "tiny.csv");
  CHECK(csv.rfind("n,mean_excess,stderr,sigma2,eta,T\n", 0) == 0);
  std::vector<SweepRow> parsed = parse_report_csv(csv);
  REQUIRE(parsed.size() == a.blocks[0].rows.size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    // 17 significant digits round-trip doubles exactly.
    CHECK(parsed[i].n == a.blocks[0].rows[i].n);
    CHECK(parsed[i].mean_excess == a.blocks[0].rows[i].mean_excess);
    CHECK(parsed[i].stderr_excess == a.blocks[0].rows[i].stderr_excess);
    CHECK(parsed[i].eta == a.blocks[0].rows[i].eta);
    CHECK(parsed[i].T == a.blocks[0].rows[i].T);
  }
}

TEST_CASE("sweeps resume from records and re-running is byte-identical") {
  SweepSpec spec = tiny_spec();
  TempDir dir("dplab_resume_test");
  std::string records = (dir.path / "records").string();

  SweepResult first = run_sweep(spec, records);
  emit_report(first, spec, dir.path.string());
  std::string csv_first = slurp(dir.path / "tiny.csv");
  std::string json_first = slurp(dir.path / "tiny.json");
  size_t record_count = 0;
  for (const auto& entry : fs::directory_iterator(records)) {
    (void)entry;
    ++record_count;
  }
  CHECK(record_count == spec.n_values.size() *
                            static_cast<size_t>(spec.mc_runs));

  // A re-run reuses every record and reproduces the outputs bytewise.
  SweepResult second = run_sweep(spec, records);
  emit_report(second, spec, dir.path.string());
  CHECK(slurp(dir.path / "tiny.csv") == csv_first);
  CHECK(slurp(dir.path / "tiny.json") == json_first);

  // Deleting one record forces exactly that run to be recomputed with its
  // derived seed, so outputs still match.
  fs::path victim;
  for (const auto& entry : fs::directory_iterator(records)) {
    victim = entry.path();
    break;
  }
  fs::remove(victim);
  SweepResult third = run_sweep(spec, records);
  emit_report(third, spec, dir.path.string());
  CHECK(slurp(dir.path / "tiny.csv") == csv_first);
  CHECK(fs::exists(victim));
}

TEST_CASE("sweeps fail closed when calibration is infeasible") {
  SweepSpec spec = tiny_spec();
  spec.force_sigma0 = false;
  spec.epsilon = 1e-6;  // hopeless target
  TempDir dir("dplab_failclosed_test");
  std::string records = (dir.path / "records").string();
  CHECK_THROWS_AS(run_sweep(spec, records), InfeasibleError);
  // Nothing was trained or recorded.
  size_t record_count = 0;
  if (fs::exists(records)) {
    for (const auto& entry : fs::directory_iterator(records)) {
      (void)entry;
      ++record_count;
    }
  }
  CHECK(record_count == 0);
}

TEST_CASE("private sweeps verify and attach the calibrated noise") {
  SweepSpec spec = tiny_spec();
  spec.force_sigma0 = false;
  spec.epsilon = 8.0;
  spec.delta = 1e-3;
  spec.n_values = {24, 32, 48, 64};
  SweepResult result = run_sweep(spec);
  for (const SweepRow& row : result.blocks[0].rows) {
    CHECK(row.sigma2 > 0.0);
  }
}

TEST_CASE("multi-c sweeps emit one block per constant") {
  SweepSpec spec = tiny_spec();
  spec.c_values = {0.5, 1.0};
  SweepResult result = run_sweep(spec);
  REQUIRE(result.blocks.size() == 2);
  CHECK(result.blocks[0].c == 0.5);
  CHECK(result.blocks[1].c == 1.0);
  CHECK(result.blocks[0].rows[0].eta != result.blocks[1].rows[0].eta);

  TempDir dir("dplab_multic_test");
  emit_report(result, spec, dir.path.string());
  CHECK(fs::exists(dir.path / "tiny_c0.csv"));
  CHECK(fs::exists(dir.path / "tiny_c1.csv"));
}

TEST_CASE("parse_report_csv rejects foreign headers") {
  CHECK_THROWS_AS(parse_report_csv("a,b,c\n1,2,3\n"), std::runtime_error);
}

TEST_SUITE_END();
