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

#include "delp/error.hpp"
#include "delp/fixtures.hpp"
#include "delp/metrics.hpp"
#include "oracles.hpp"

using namespace delp;

namespace {

const LanguageSet& langs() { return LanguageSet::standard(); }
LanguageCode L(const char* c) { return langs().parse(c); }

RankedCandidate cand(const std::string& qid, const std::string& doc, int rank, const char* lang) {
  RankedCandidate c;
  c.query_id = qid;
  c.doc_id = doc;
  c.rank = rank;
  c.doc_lang = L(lang);
  return c;
}

// Random initial run and a random permutation of it as the re-ranked run.
std::pair<RetrievalRun, RetrievalRun> random_runs(std::uint64_t seed, int queries, int depth,
                                                  const char* query_lang) {
  static const std::vector<const char*> pool = {"en", "ko", "ja", "zh", "de", "ar"};
  fixtures::Rng rng(seed);
  RetrievalRun init, rerank;
  init.query_lang = rerank.query_lang = L(query_lang);
  for (int q = 0; q < queries; ++q) {
    const std::string qid = "q" + std::to_string(q);
    CandidateList a;
    for (int r = 1; r <= depth; ++r) a.push_back(cand(qid, qid + "-d" + std::to_string(r), r, pool[rng.below(pool.size())]));
    CandidateList b = a;
    rng.shuffle(b);
    for (int r = 1; r <= depth; ++r) b[r - 1].rank = r;
    init.lists[qid] = a;
    rerank.lists[qid] = b;
  }
  return {init, rerank};
}

}  // namespace

TEST(RankGain, Examples) {
  EXPECT_EQ(rank_gain(3, 1), 2);
  EXPECT_EQ(rank_gain(1, 1), 0);
  EXPECT_EQ(rank_gain(2, 5), 0);
  EXPECT_THROW(rank_gain(0, 1), DomainError);
}

TEST(Mlrs, TwoTargetDocuments) {
  // Target documents at initial ranks 5 and 8 move to 2 and 8.
  CandidateList init, rerank;
  const char* order_init[] = {"en", "en", "en", "en", "ko", "en", "en", "ko"};
  for (int r = 1; r <= 8; ++r) init.push_back(cand("q", "d" + std::to_string(r), r, order_init[r - 1]));
  const std::vector<int> new_rank = {1, 3, 4, 5, 2, 6, 7, 8};
  for (int r = 1; r <= 8; ++r) rerank.push_back(cand("q", "d" + std::to_string(r), new_rank[r - 1], order_init[r - 1]));
  const auto m = mlrs_for_query(init, rerank, L("en"), L("ko"));
  EXPECT_EQ(m.delta_r, 3);
  EXPECT_EQ(m.delta_r_max, 11);
  EXPECT_NEAR(m.score, 27.2727, 1e-4);
  const auto o = oracle::mlrs_query(init, rerank, L("en"), L("ko"));
  EXPECT_EQ(o.delta_r, m.delta_r);
  EXPECT_EQ(o.delta_r_max, m.delta_r_max);
}

TEST(Mlrs, PairMeanOfQueries) {
  // One query scores 100, the other 0.
  RetrievalRun init, rerank;
  init.query_lang = rerank.query_lang = L("en");
  init.lists["a"] = {cand("a", "x", 1, "en"), cand("a", "y", 2, "ko")};
  rerank.lists["a"] = {cand("a", "y", 1, "ko"), cand("a", "x", 2, "en")};
  init.lists["b"] = {cand("b", "x", 1, "en"), cand("b", "y", 2, "ko")};
  rerank.lists["b"] = {cand("b", "x", 1, "en"), cand("b", "y", 2, "ko")};
  const auto cell = mlrs_pair(init, rerank, L("ko"));
  EXPECT_DOUBLE_EQ(cell.score, 50.0);
  EXPECT_EQ(cell.query_count, 2u);
}

TEST(Mlrs, ZeroNormalizerScoresZero) {
  RetrievalRun init, rerank;
  init.query_lang = rerank.query_lang = L("en");
  init.lists["a"] = {cand("a", "x", 1, "ko"), cand("a", "y", 2, "en")};
  rerank.lists["a"] = init.lists["a"];
  const auto cell = mlrs_pair(init, rerank, L("ko"));
  EXPECT_EQ(cell.per_query[0].delta_r_max, 0);
  EXPECT_DOUBLE_EQ(cell.score, 0.0);
  const auto none = mlrs_pair(init, rerank, L("ja"));
  EXPECT_EQ(none.zero_target_queries, 1u);
}

TEST(Mlrs, MismatchedListsAreIntegrityErrors) {
  RetrievalRun init, rerank;
  init.query_lang = rerank.query_lang = L("en");
  init.lists["a"] = {cand("a", "x", 1, "ko"), cand("a", "y", 2, "en")};
  rerank.lists["a"] = {cand("a", "x", 1, "ko"), cand("a", "z", 2, "en")};
  EXPECT_THROW(mlrs_pair(init, rerank, L("ko")), IntegrityError);
  rerank.lists.clear();
  rerank.lists["b"] = init.lists["a"];
  EXPECT_THROW(mlrs_pair(init, rerank, L("ko")), IntegrityError);
}

TEST(Mlrs, MatchesOracleOnRandomRuns) {
  for (const char* ql : {"en", "ko"}) {
    auto [init, rerank] = random_runs(11, 40, 50, ql);
    for (const char* dl : {"en", "ko", "ja", "ar"}) {
      for (bool global : {false, true}) {
        MlrsOptions o;
        o.normalizer = global ? Normalizer::all_translated : Normalizer::target_language;
        const auto cell = mlrs_pair(init, rerank, L(dl), o);
        double sum = 0;
        for (const auto& q : cell.per_query) {
          const auto ref = oracle::mlrs_query(init.lists.at(q.query_id), rerank.lists.at(q.query_id), L(ql), L(dl), global);
          EXPECT_EQ(q.delta_r, ref.delta_r);
          EXPECT_EQ(q.delta_r_max, ref.delta_r_max);
          EXPECT_NEAR(q.score, ref.score, 1e-9);
          sum += ref.score;
        }
        EXPECT_NEAR(cell.score, sum / 40.0, 1e-9);
      }
    }
  }
}

TEST(Mlrs, ParallelEqualsSerial) {
  auto [init, rerank] = random_runs(5, 300, 50, "ja");
  for (const char* dl : {"en", "ja", "zh"}) {
    EXPECT_EQ(mlrs_pair(init, rerank, L(dl)), mlrs_pair_serial(init, rerank, L(dl)));
  }
}

TEST(Recall, HalfOfFourQueries) {
  // Gold first appears at ranks 3, 60, never, 12.
  RetrievalRun run;
  run.query_lang = L("en");
  ProvenanceMap prov;
  const std::vector<int> gold_rank = {3, 60, 0, 12};
  for (int q = 0; q < 4; ++q) {
    const std::string qid = "q" + std::to_string(q);
    for (int r = 1; r <= 100; ++r) {
      auto c = cand(qid, qid + "-" + std::to_string(r), r, "en");
      c.wpid = r == gold_rank[q] ? "G" + qid : "N" + std::to_string(r);
      run.lists[qid].push_back(c);
    }
    prov.entries[qid] = {qid, {"G" + qid}};
  }
  const auto res = recall_at_k(run, prov, SitelinkMap{}, 50);
  EXPECT_DOUBLE_EQ(res.recall, 0.5);
  EXPECT_EQ(res.evaluated, 4u);
  EXPECT_DOUBLE_EQ(recall_at_k(run, prov, SitelinkMap{}, 100).recall, 0.75);
  EXPECT_THROW(recall_at_k(run, prov, SitelinkMap{}, 0), DomainError);
}

TEST(Recall, UnavailableGoldIsExcluded) {
  RetrievalRun run;
  run.query_lang = L("en");
  run.lists["a"] = {cand("a", "d", 1, "en")};
  run.lists["b"] = {cand("b", "e", 1, "en")};
  ProvenanceMap prov;
  prov.entries["a"] = {"a", {"W1"}};
  prov.entries["b"] = {"b", {"W2"}};
  SitelinkMap sl;
  sl.add("W1", {L("en")});
  sl.add("W2", {});
  DocWpidMap side = {{"d", "W1"}};
  const auto res = recall_at_k(run, prov, sl, 1, &side);
  EXPECT_EQ(res.evaluated, 1u);
  EXPECT_EQ(res.excluded_no_gold, 1u);
  EXPECT_DOUBLE_EQ(res.recall, 1.0);
}

TEST(CharNgramRecall, Examples) {
  EXPECT_NEAR(char_ngram_recall("abcd", "abcde"), 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(char_ngram_recall("xyz", "abcdef"), 0.0);
  EXPECT_DOUBLE_EQ(char_ngram_recall("서울특별시", "서울특별시"), 1.0);
  EXPECT_THROW(char_ngram_recall("abc", ""), DomainError);
}

TEST(CharNgramRecall, MatchesMultisetOracle) {
  const std::u32string cand = U"banana bandana";
  const std::u32string ref = U"bananas and bandanas";
  const auto cg = oracle::grams(cand, 3);
  const auto rg = oracle::grams(ref, 3);
  int total = 0, hit = 0;
  for (const auto& [g, n] : rg) {
    total += n;
    if (auto it = cg.find(g); it != cg.end()) hit += std::min(n, it->second);
  }
  EXPECT_NEAR(char_ngram_recall("banana bandana", "bananas and bandanas"), double(hit) / total, 1e-12);
}
