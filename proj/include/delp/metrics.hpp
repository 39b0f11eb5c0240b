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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "delp/records.hpp"

namespace delp {

// ---------------------------------------------------------------------------
// MultiLingualRankShift

// max(init - rerank, 0). Both ranks must be >= 1.
std::int64_t rank_gain(int init_rank, int rerank_rank);

// Which documents enter the normalizer Δr_max.
enum class Normalizer {
  target_language,  // only documents in the target language (as Δr)
  all_translated,   // every document whose language differs from the query
};

struct MlrsOptions {
  Normalizer normalizer = Normalizer::target_language;
};

struct QueryMlrs {
  std::string query_id;
  std::int64_t delta_r = 0;
  std::int64_t delta_r_max = 0;
  double score = 0.0;        // 100 * delta_r / delta_r_max, 0 when delta_r_max = 0
  std::size_t target_docs = 0;

  bool operator==(const QueryMlrs&) const = default;
};

// Documents are filtered to doc_lang == target_lang. For cross-lingual
// targets documents in the query language are excluded as well; when
// target_lang equals the query language the filter keeps the monolingual
// documents (the same_lang cell).
QueryMlrs mlrs_for_query(std::span<const RankedCandidate> init,
                         std::span<const RankedCandidate> rerank, const LanguageCode& query_lang,
                         const LanguageCode& target_lang, const MlrsOptions& options = {});

struct MlrsCell {
  LanguageCode query_lang = LanguageCode::english();
  LanguageCode doc_lang = LanguageCode::english();
  double score = 0.0;                 // mean of per-query scores, 0..100
  std::size_t query_count = 0;
  std::size_t zero_target_queries = 0;  // queries with no target-language document
  std::vector<QueryMlrs> per_query;   // ascending query_id

  bool operator==(const MlrsCell&) const = default;
};

// OpenMP over queries. Per-query results are reduced in ascending query_id
// order, so the value is bit-identical to mlrs_pair_serial.
MlrsCell mlrs_pair(const RetrievalRun& init, const RetrievalRun& rerank,
                   const LanguageCode& doc_lang, const MlrsOptions& options = {});
MlrsCell mlrs_pair_serial(const RetrievalRun& init, const RetrievalRun& rerank,
                          const LanguageCode& doc_lang, const MlrsOptions& options = {});

// ---------------------------------------------------------------------------
// Recall@k

using DocWpidMap = std::unordered_map<std::string, std::string>;

struct RecallResult {
  double recall = 0.0;
  std::size_t evaluated = 0;      // gold-available queries in the denominator
  std::size_t hits = 0;
  std::size_t excluded_no_gold = 0;
};

// A candidate hits when its WPID (from the run record, else `doc_wpids`) is in
// the query's gold set. Queries without a provenance entry, or whose gold
// pages are absent from every edition of a non-empty sitelink map, are
// excluded from the denominator.
RecallResult recall_at_k(const RetrievalRun& run, const ProvenanceMap& provenance,
                         const SitelinkMap& sitelinks, int k, const DocWpidMap* doc_wpids = nullptr);

// ---------------------------------------------------------------------------
// Character n-gram recall

// Multiset recall of reference n-grams in the candidate after NFC and
// lowercasing. Throws DomainError when the normalized reference is empty.
double char_ngram_recall(std::string_view candidate, std::string_view reference, std::size_t n = 3);

}  // namespace delp
