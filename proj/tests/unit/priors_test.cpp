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

#include <numeric>

#include "delp/error.hpp"
#include "delp/fixtures.hpp"
#include "delp/priors.hpp"
#include "oracles.hpp"

using namespace delp;

namespace {

LanguageCode L(const char* c) { return LanguageSet::standard().parse(c); }

RetrievalRun run_with(const char* qlang, const std::vector<std::vector<const char*>>& lists) {
  RetrievalRun run;
  run.run_id = std::string("init.") + qlang;
  run.query_lang = L(qlang);
  for (std::size_t q = 0; q < lists.size(); ++q) {
    const std::string qid = std::string(qlang) + "-q" + std::to_string(q);
    int rank = 0;
    for (const char* dl : lists[q]) {
      RankedCandidate c;
      c.query_id = qid;
      c.doc_id = qid + "-" + std::to_string(rank);
      c.rank = ++rank;
      c.doc_lang = L(dl);
      run.lists[qid].push_back(c);
    }
  }
  return run;
}

CulturalCue cue(const char* lang) {
  CulturalCue c;
  c.cultural_language = L(lang);
  c.confidence = 0.9;
  return c;
}

}  // namespace

TEST(ExposurePrior, SharesPerQueryThenMean) {
  // Query 1: 3 of 4 documents in ko. Query 2: 1 of 2.
  const auto runs = std::vector{run_with("ko", {{"ko", "ko", "ko", "en"}, {"ko", "en"}})};
  const auto p = exposure_prior(runs, LanguageSet::standard());
  EXPECT_DOUBLE_EQ(p.at({L("ko"), L("ko")}), (0.75 + 0.5) / 2);
  EXPECT_DOUBLE_EQ(p.at({L("ko"), L("en")}), (0.25 + 0.5) / 2);
  EXPECT_DOUBLE_EQ(p.at({L("ko"), L("ja")}), 0.0);
}

TEST(ExposurePrior, CandidatesBeyondDepthIgnored) {
  const auto runs = std::vector{run_with("en", {{"en", "en", "ja", "ja"}})};
  const auto p = exposure_prior(runs, LanguageSet::standard(), 2);
  EXPECT_DOUBLE_EQ(p.at({L("en"), L("en")}), 1.0);
  EXPECT_DOUBLE_EQ(p.at({L("en"), L("ja")}), 0.0);
  EXPECT_THROW(exposure_prior(runs, LanguageSet::standard(), 0), DomainError);
}

TEST(ExposurePrior, MatchesTallyOracle) {
  fixtures::Rng rng(99);
  const std::vector<const char*> pool = {"en", "ko", "ja", "zh", "fr"};
  std::vector<RetrievalRun> runs;
  for (const char* ql : {"en", "ko", "fr"}) {
    std::vector<std::vector<const char*>> lists(25);
    for (auto& l : lists) {
      const std::size_t n = 10 + rng.below(50);
      for (std::size_t i = 0; i < n; ++i) l.push_back(pool[rng.below(pool.size())]);
    }
    runs.push_back(run_with(ql, lists));
  }
  const auto langs = LanguageSet::standard();
  std::vector<std::string> codes;
  for (const auto& l : langs.languages()) codes.push_back(l.str());
  const auto got = exposure_prior(runs, langs, 50);
  const auto want = oracle::exposure(runs, codes, 50);
  for (const auto& [key, v] : want) {
    EXPECT_NEAR(got.at({L(key.first.c_str()), L(key.second.c_str())}), v, 1e-12)
        << key.first << "," << key.second;
  }
}

TEST(ExposurePrior, RowsSumToOne) {
  const auto runs = std::vector{run_with("ja", {{"ja", "en", "zh"}, {"ja"}})};
  const auto p = exposure_prior(runs, LanguageSet::standard());
  double sum = 0;
  for (const auto& [pair, v] : p) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(GoldPrior, FractionOfQueriesWithPage) {
  QuerySets qs = {{L("ko"), {"a", "b", "c", "d"}}};
  ProvenanceMap prov;
  prov.entries["a"] = {"a", {"W1"}};
  prov.entries["b"] = {"b", {"W2"}};
  prov.entries["c"] = {"c", {"W3", "W1"}};
  SitelinkMap sl;
  sl.add("W1", {L("en"), L("ko")});
  sl.add("W2", {L("en")});
  sl.add("W3", {});
  const auto p = gold_prior(qs, prov, sl, LanguageSet::standard());
  EXPECT_DOUBLE_EQ(p.at({L("ko"), L("en")}), 0.75);
  EXPECT_DOUBLE_EQ(p.at({L("ko"), L("ko")}), 0.5);
  EXPECT_DOUBLE_EQ(p.at({L("ko"), L("ja")}), 0.0);
}

TEST(CulturalPrior, LabelShares) {
  const std::vector<CulturalCue> cues = {cue("zh"), cue("zh"), cue("fr"), cue("en")};
  const auto p = cultural_prior(cues, LanguageSet::standard());
  EXPECT_DOUBLE_EQ(p.at(L("zh")), 0.5);
  EXPECT_DOUBLE_EQ(p.at(L("fr")), 0.25);
  EXPECT_DOUBLE_EQ(p.at(L("en")), 0.25);
  EXPECT_DOUBLE_EQ(p.at(L("ko")), 0.0);
  EXPECT_THROW(cultural_prior(std::vector<CulturalCue>{}, LanguageSet::standard()), DomainError);
  const auto narrow = LanguageSet::of({"en", "fr"});
  EXPECT_THROW(cultural_prior(cues, narrow), LanguageError);
}

TEST(CorpusPrior, PassageShares) {
  // Passage counts in units of 100k.
  const std::vector<std::pair<const char*, double>> counts = {
      {"en", 25}, {"ar", 3.3}, {"es", 10}, {"fi", 1.5}, {"fr", 13}, {"de", 14}, {"ja", 27},
      {"it", 8.2}, {"ko", 1.6}, {"pt", 4.7}, {"ru", 8.6}, {"zh", 11}, {"th", 3.7}};
  std::vector<CorpusStats> stats;
  std::uint64_t total = 0;
  for (const auto& [lang, n] : counts) {
    CorpusStats s;
    s.lang = L(lang);
    s.passage_count = static_cast<std::uint64_t>(n * 100000 + 0.5);
    s.median_passage_length = 100 + s.passage_count % 7;
    total += s.passage_count;
    stats.push_back(s);
  }
  const auto p = corpus_prior(stats);
  double sum = 0;
  for (const auto& s : stats) {
    EXPECT_DOUBLE_EQ(p.p_db.at(s.lang), double(s.passage_count) / double(total));
    EXPECT_DOUBLE_EQ(p.passage_len.at(s.lang), s.median_passage_length);
    sum += p.p_db.at(s.lang);
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_GT(p.p_db.at(L("ja")), p.p_db.at(L("en")));
  EXPECT_THROW(corpus_prior(stats, LengthStatistic::mean), DomainError);
  stats.push_back(stats.front());
  EXPECT_THROW(corpus_prior(stats), IntegrityError);
}

TEST(GoldCategory, Categorize) {
  SitelinkMap sl;
  sl.add("A", {L("en"), L("ja")});
  sl.add("B", {L("en")});
  sl.add("C", {L("ja")});
  const GoldProvenance a{"a", {"A"}}, b{"b", {"B"}}, c{"c", {"C"}};
  EXPECT_EQ(categorize(&a, sl, L("ja")), GoldCategory::both);
  EXPECT_EQ(categorize(&b, sl, L("ja")), GoldCategory::only_en);
  EXPECT_EQ(categorize(&c, sl, L("ja")), GoldCategory::none);
  EXPECT_EQ(categorize(&a, sl, L("en")), GoldCategory::only_en);
  EXPECT_EQ(categorize(nullptr, sl, L("en")), GoldCategory::none);
}

TEST(GoldReport, SmallExample) {
  SitelinkMap sl;
  sl.add("A", {L("en"), L("ja")});
  sl.add("B", {L("en")});
  sl.add("C", {L("ja")});
  ProvenanceMap prov;
  prov.entries["a"] = {"a", {"A"}};
  prov.entries["b"] = {"b", {"B"}};
  prov.entries["c"] = {"c", {"C"}};
  const std::vector<LanguageCode> ql = {L("ja"), L("en")};
  const auto r = gold_availability_report(prov, sl, ql);
  EXPECT_EQ(r.questions, 3u);
  EXPECT_EQ(r.gold_available_questions, 2u);
  EXPECT_EQ(r.local_only_questions, 1u);
  EXPECT_EQ(r.total_instances, 6u);
  ASSERT_EQ(r.per_query_language.size(), 2u);
  const auto& en = r.per_query_language[0];
  const auto& ja = r.per_query_language[1];
  EXPECT_EQ(en.only_en, 2u);
  EXPECT_EQ(en.none, 1u);
  EXPECT_EQ(ja.both, 1u);
  EXPECT_EQ(ja.only_en, 1u);
  EXPECT_EQ(ja.none, 1u);
  ASSERT_EQ(r.per_edition.size(), 2u);
  EXPECT_EQ(r.per_edition[0].instances, 3u);  // en: only_en summed over rows
  EXPECT_EQ(r.per_edition[1].instances, 1u);
  EXPECT_DOUBLE_EQ(r.per_edition[1].ratio, 1.0 / 6.0);
}

TEST(GoldReport, FixtureBothCounts) {
  const auto f = fixtures::gold_availability_fixture();
  const auto ql = LanguageSet::standard().languages();
  const auto r = gold_availability_report(f.provenance, f.sitelinks, ql);
  EXPECT_EQ(r.questions, 2827u);
  EXPECT_EQ(r.gold_available_questions, 2404u);
  for (const auto& row : r.per_query_language) {
    EXPECT_EQ(row.only_en + row.both + row.none, row.instances);
    if (row.lang.str() != "en") {
      EXPECT_EQ(row.both, f.both_per_language.at(row.lang.str())) << row.lang.str();
    }
  }
}

TEST(Priors, JsonRoundTrip) {
  const auto f = fixtures::synthetic_calibration();
  const auto back = priors_from_json(to_json(f.priors), LanguageSet::standard());
  EXPECT_EQ(back, f.priors);
}
