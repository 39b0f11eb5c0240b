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

#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "delp/cues.hpp"
#include "delp/records.hpp"
#include "delp/score_matrix.hpp"

namespace delp {

using PairPrior = std::map<LangPair, double>;
using LanguagePrior = std::map<LanguageCode, double>;

// The five structural priors, each keyed over the language inventory.
struct PriorTable {
  std::vector<LanguageCode> languages;  // ascending
  PairPrior p_ret;                      // exposure, (L_q, L_d)
  PairPrior p_gold;                     // gold availability, (L_q, L_d)
  LanguagePrior p_cult;                 // cultural, L_d
  LanguagePrior p_db;                   // corpus size, L_d
  LanguagePrior passage_len;            // passage-length statistic, L_d

  bool operator==(const PriorTable&) const = default;
};

nlohmann::json to_json(const PriorTable& priors);
PriorTable priors_from_json(const nlohmann::json& doc, const LanguageSet& languages);

// Mean over queries of the share of L_d documents among the first `depth`
// candidates. Runs sharing a query language are pooled. Every L_d of the
// inventory is present in each row (zeros included).
PairPrior exposure_prior(std::span<const RetrievalRun> runs, const LanguageSet& languages,
                         int depth = 50);

using QuerySets = std::map<LanguageCode, std::vector<std::string>>;
QuerySets query_sets(std::span<const RetrievalRun> runs);

// Fraction of L_q queries with at least one gold WPID present in the L_d
// edition. Queries without provenance count as gold-absent.
PairPrior gold_prior(const QuerySets& queries, const ProvenanceMap& provenance,
                     const SitelinkMap& sitelinks, const LanguageSet& languages);

// Normalized label frequency of cultural_language over the inventory.
LanguagePrior cultural_prior(std::span<const CulturalCue> cues, const LanguageSet& languages);

enum class LengthStatistic { median, mean };

struct CorpusPrior {
  LanguagePrior p_db;
  LanguagePrior passage_len;
};

CorpusPrior corpus_prior(std::span<const CorpusStats> stats,
                         LengthStatistic statistic = LengthStatistic::median);

// ---------------------------------------------------------------------------
// Gold availability

enum class GoldCategory { only_en, both, none };
std::string to_string(GoldCategory category);

// Category of one question x query-language instance. For English queries
// the monolingual case is reported as only_en.
GoldCategory categorize(const GoldProvenance* gold, const SitelinkMap& sitelinks,
                        const LanguageCode& query_lang);

struct QueryLanguageAvailability {
  LanguageCode lang = LanguageCode::english();
  std::size_t instances = 0;
  std::size_t only_en = 0;
  std::size_t both = 0;
  std::size_t none = 0;
};

// One row per Wikipedia edition: instances whose gold page the edition
// supplies (`en` counts only_en instances, other editions count `both`).
struct EditionAvailability {
  LanguageCode lang = LanguageCode::english();
  std::size_t instances = 0;
  double ratio = 0.0;  // instances / total_instances
};

struct GoldAvailabilityReport {
  std::size_t questions = 0;
  std::size_t gold_available_questions = 0;  // gold page present in en
  std::size_t local_only_questions = 0;      // present somewhere, but not in en
  std::size_t total_instances = 0;           // questions x |query languages|
  std::vector<QueryLanguageAvailability> per_query_language;
  std::vector<EditionAvailability> per_edition;
};

GoldAvailabilityReport gold_availability_report(const ProvenanceMap& provenance,
                                                const SitelinkMap& sitelinks,
                                                std::span<const LanguageCode> query_languages);

nlohmann::json to_json(const GoldAvailabilityReport& report);

}  // namespace delp
