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

#include <gtest/gtest.h>

#include <omp.h>

#include "delp/calibrate.hpp"
#include "delp/delta.hpp"
#include "delp/fixtures.hpp"
#include "delp/metrics.hpp"
#include "delp/priors.hpp"
#include "delp/text.hpp"

using namespace delp;

namespace {

LanguageCode L(const char* c) { return LanguageSet::standard().parse(c); }

const std::vector<const char*> kPool = {"en", "ko", "ja", "zh", "de"};

CandidateList random_list(fixtures::Rng& rng, const std::string& qid, int depth) {
  CandidateList list;
  for (int r = 1; r <= depth; ++r) {
    RankedCandidate c;
    c.query_id = qid;
    c.doc_id = qid + "-" + std::to_string(r);
    c.rank = r;
    c.doc_lang = L(kPool[rng.below(kPool.size())]);
    list.push_back(c);
  }
  return list;
}

CandidateList permuted(fixtures::Rng& rng, CandidateList list) {
  rng.shuffle(list);
  for (std::size_t i = 0; i < list.size(); ++i) list[i].rank = static_cast<int>(i) + 1;
  return list;
}

}  // namespace

TEST(Properties, MlrsBoundedAndMonotoneInPromotion) {
  fixtures::Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto init = random_list(rng, "q", 30);
    auto rerank = permuted(rng, init);
    const auto target = L("ko");
    double prev = mlrs_for_query(init, rerank, L("en"), target).score;
    ASSERT_GE(prev, 0.0);
    ASSERT_LE(prev, 100.0);
    // Bubble the last target document upward past non-target documents;
    // the score must never drop.
    std::size_t pos = rerank.size();
    for (std::size_t i = 0; i < rerank.size(); ++i) {
      if (rerank[i].doc_lang == target) pos = i;
    }
    if (pos == rerank.size()) continue;
    while (pos > 0 && rerank[pos - 1].doc_lang != target) {
      std::swap(rerank[pos - 1], rerank[pos]);
      rerank[pos - 1].rank = static_cast<int>(pos);
      rerank[pos].rank = static_cast<int>(pos) + 1;
      --pos;
      const double now = mlrs_for_query(init, rerank, L("en"), target).score;
      EXPECT_GE(now, prev - 1e-12);
      prev = now;
    }
  }
}

TEST(Properties, IdentityRerankScoresZero) {
  fixtures::Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto init = random_list(rng, "q", 40);
    for (const char* t : kPool) EXPECT_EQ(mlrs_for_query(init, init, L("ko"), L(t)).delta_r, 0);
  }
}

TEST(Properties, RecallNonDecreasingInK) {
  fixtures::Rng rng(3);
  RetrievalRun run;
  run.query_lang = L("en");
  ProvenanceMap prov;
  for (int q = 0; q < 60; ++q) {
    const std::string qid = "q" + std::to_string(q);
    auto list = random_list(rng, qid, 50);
    for (auto& c : list) c.wpid = "W" + std::to_string(rng.below(200));
    run.lists[qid] = list;
    prov.entries[qid] = {qid, {"W" + std::to_string(rng.below(200))}};
  }
  double prev = 0.0;
  for (int k = 1; k <= 50; ++k) {
    const double r = recall_at_k(run, prov, SitelinkMap{}, k).recall;
    EXPECT_GE(r, prev);
    EXPECT_LE(r, 1.0);
    prev = r;
  }
}

TEST(Properties, RepetitionMonotoneOnConfidenceGrid) {
  RepetitionPlan prev = repetition_policy(true, 0.0);
  for (int i = 0; i <= 100; ++i) {
    const double c = i / 100.0;
    const auto plan = repetition_policy(true, c);
    EXPECT_GE(plan.r_local, prev.r_local) << c;
    EXPECT_LE(plan.r_glob, prev.r_glob) << c;
    EXPECT_GE(plan.boost, prev.boost) << c;
    EXPECT_GE(plan.r_local, 1);
    EXPECT_LE(plan.r_local, 3);
    EXPECT_GE(plan.r_glob, 1);
    EXPECT_LE(plan.r_glob, 2);
    EXPECT_EQ(repetition_policy(false, c), (RepetitionPlan{1, 2, false, {}}));
    prev = plan;
  }
}

TEST(Properties, FusedLengthWithinBudget) {
  fixtures::Rng rng(4);
  const std::vector<std::string> words = {"서울", "올림픽", "東京", "olympics", "привет", "ไทย", "x"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Segment> segs;
    segs.push_back({"[GLOB]", words[rng.below(words.size())], 1 + static_cast<int>(rng.below(2))});
    segs.push_back({"[LOCAL:ko]", words[rng.below(words.size())], 1 + static_cast<int>(rng.below(3))});
    std::string long_text;
    for (std::size_t i = 0, n = rng.below(80); i < n; ++i) long_text += words[rng.below(words.size())] + " ";
    if (!long_text.empty()) segs.push_back({"[ALIASES:GLOB]", long_text, 1});
    const std::size_t budget = 1 + rng.below(300);
    const auto f = fuse(segs, {" | ", budget});
    EXPECT_LE(text::length(f.text), budget);
    const auto full = text::length(fuse(segs, {" | ", 100000}).text);
    EXPECT_EQ(f.truncated, full > budget);
  }
}

TEST(Properties, RidgeShrinksWithLambda) {
  const auto f = fixtures::synthetic_calibration();
  double prev = std::numeric_limits<double>::infinity();
  for (double lambda : {0.0, 0.1, 1.0, 10.0, 100.0, 1e4}) {
    const auto fit = residualize(f.scores, f.priors, {lambda, 1e-6, true});
    double norm = 0;
    for (double b : fit.model.beta) norm += b * b;
    EXPECT_LE(norm, prev * (1 + 1e-12)) << lambda;
    prev = norm;
  }
}

TEST(Properties, ExposureInvariantToRunAndQueryOrder) {
  fixtures::Rng rng(5);
  std::vector<RetrievalRun> runs;
  for (const char* ql : {"en", "ko", "ja"}) {
    RetrievalRun run;
    run.query_lang = L(ql);
    for (int q = 0; q < 30; ++q) run.lists[std::string(ql) + std::to_string(q)] = random_list(rng, "q", 1 + rng.below(50));
    runs.push_back(run);
  }
  const auto base = exposure_prior(runs, LanguageSet::standard());
  // Splitting a run into two and reversing the run order must not matter.
  std::vector<RetrievalRun> split;
  for (const auto& run : runs) {
    RetrievalRun a, b;
    a.query_lang = b.query_lang = run.query_lang;
    bool flip = false;
    for (const auto& [qid, list] : run.lists) ((flip = !flip) ? a : b).lists[qid] = list;
    split.push_back(b);
    split.push_back(a);
  }
  std::reverse(split.begin(), split.end());
  EXPECT_EQ(exposure_prior(split, LanguageSet::standard()), base);
}

TEST(Properties, ParallelKernelsIndependentOfThreadCount) {
  fixtures::Rng rng(6);
  RetrievalRun init, rerank;
  init.query_lang = rerank.query_lang = L("zh");
  for (int q = 0; q < 500; ++q) {
    const std::string qid = "q" + std::to_string(q);
    init.lists[qid] = random_list(rng, qid, 50);
    rerank.lists[qid] = permuted(rng, init.lists[qid]);
  }
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = mlrs_pair(init, rerank, L("ja"));
  omp_set_num_threads(4);
  const auto four = mlrs_pair(init, rerank, L("ja"));
  omp_set_num_threads(saved);
  EXPECT_EQ(one, four);
  EXPECT_EQ(one, mlrs_pair_serial(init, rerank, L("ja")));
}
