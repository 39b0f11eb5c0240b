// Copyright 2026 The delp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "delp/calibrate.hpp"
#include "delp/config.hpp"
#include "delp/cues.hpp"
#include "delp/priors.hpp"
#include "delp/records.hpp"
#include "delp/toyretriever.hpp"

// Deterministic data generators shared by the CLI, the tests and the
// benchmarks.
namespace delp::fixtures {

// mt19937_64 with portable helpers. The standard distributions are
// implementation-defined, so they are avoided to keep fixtures identical
// across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();                          // [0, 1)
  double uniform(double lo, double hi);      // [lo, hi)
  std::size_t below(std::size_t n);          // [0, n), n >= 1
  double normal(double mean, double stddev);  // Box-Muller

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

// 2,827 questions over the 13 languages; 2,404 have an English gold page.
struct GoldFixture {
  ProvenanceMap provenance;
  SitelinkMap sitelinks;
  std::map<std::string, std::size_t> both_per_language;  // planned `both` counts
  std::size_t questions = 0;
  std::size_t available = 0;
};

GoldFixture gold_availability_fixture();
// provenance.jsonl and sitelinks.jsonl under `dir`.
void write_gold_fixture(const std::filesystem::path& dir);

struct CueExample {
  std::string query_id;
  LanguageCode lang = LanguageCode::english();
  std::string q_local;
  std::string q_glob;
  CulturalCue cue;
  CueBundle bundle;
};

// Korean query about the Olympics with its annotation and anchor bundle.
CueExample korean_olympics();

// Scores generated from known coefficients: s = phi' beta + delta 1[same] + noise.
struct CalibrationFixture {
  PriorTable priors;
  PairScoreMatrix scores;
  std::array<double, kFeatureCount> beta{};
  double delta = 5.0;
};

CalibrationFixture synthetic_calibration(std::uint64_t seed = 20260611, double delta = 5.0,
                                         double noise_stddev = 0.5);

// Eight languages' worth of runs, provenance, sitelinks, corpus statistics, a
// populated cue cache and fusion queries in the pipeline layout, plus
// `pipeline.conf`. Existing files are replaced.
void write_pipeline_fixture(const std::filesystem::path& dir, std::uint64_t seed = 7);
std::vector<std::string> pipeline_fixture_languages();

// Fifty passages (twenty Korean gold passages, thirty English distractors)
// and twenty Korean questions with cues. Gold passages carry the WPID named in
// each case.
struct ToyCase {
  CueExample example;
  std::string gold_wpid;
};

struct ToyExperiment {
  ToyCorpus corpus;
  std::vector<ToyCase> cases;
};

ToyExperiment toy_experiment();

}  // namespace delp::fixtures
