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

#include "delp/metrics.hpp"

#include <algorithm>
#include <unordered_map>

#include "delp/error.hpp"
#include "delp/text.hpp"

namespace delp {

std::int64_t rank_gain(int init_rank, int rerank_rank) {
  if (init_rank < 1 || rerank_rank < 1) {
    throw DomainError("ranks are 1-based; got init=" + std::to_string(init_rank) +
                      " rerank=" + std::to_string(rerank_rank));
  }
  return std::max<std::int64_t>(std::int64_t{init_rank} - rerank_rank, 0);
}

QueryMlrs mlrs_for_query(std::span<const RankedCandidate> init,
                         std::span<const RankedCandidate> rerank, const LanguageCode& query_lang,
                         const LanguageCode& target_lang, const MlrsOptions& options) {
  std::unordered_map<std::string_view, int> rerank_rank;
  rerank_rank.reserve(rerank.size());
  for (const auto& c : rerank) rerank_rank.emplace(c.doc_id, c.rank);

  QueryMlrs out;
  if (!init.empty()) out.query_id = init.front().query_id;
  if (rerank_rank.size() != init.size()) {
    throw IntegrityError("query '" + out.query_id + "': initial and re-ranked lists differ in size");
  }

  const bool monolingual = target_lang == query_lang;
  for (const auto& c : init) {
    auto it = rerank_rank.find(c.doc_id);
    if (it == rerank_rank.end()) {
      throw IntegrityError("query '" + out.query_id + "': doc '" + c.doc_id +
                           "' missing from the re-ranked list");
    }
    const bool is_target = c.doc_lang == target_lang && (monolingual || c.doc_lang != query_lang);
    if (is_target) {
      ++out.target_docs;
      out.delta_r += rank_gain(c.rank, it->second);
    }
    const bool in_normalizer =
        options.normalizer == Normalizer::target_language
            ? is_target
            : (monolingual || c.doc_lang != query_lang);
    if (in_normalizer) out.delta_r_max += c.rank - 1;
  }
  out.score = out.delta_r_max > 0
                  ? 100.0 * static_cast<double>(out.delta_r) / static_cast<double>(out.delta_r_max)
                  : 0.0;
  return out;
}

namespace {

std::vector<const std::string*> checked_query_ids(const RetrievalRun& init,
                                                  const RetrievalRun& rerank) {
  if (init.query_lang != rerank.query_lang) {
    throw IntegrityError("initial run is " + init.query_lang.str() + " but re-ranked run is " +
                         rerank.query_lang.str());
  }
  if (init.lists.empty()) throw DomainError("MLRS over an empty query set");
  if (init.lists.size() != rerank.lists.size()) {
    throw IntegrityError("initial and re-ranked runs cover different query sets");
  }
  std::vector<const std::string*> ids;
  ids.reserve(init.lists.size());
  for (const auto& [qid, list] : init.lists) {
    if (!rerank.lists.contains(qid)) {
      throw IntegrityError("query '" + qid + "' missing from the re-ranked run");
    }
    ids.push_back(&qid);
  }
  return ids;
}

MlrsCell reduce(const RetrievalRun& init, const LanguageCode& doc_lang,
                std::vector<QueryMlrs> per_query) {
  MlrsCell cell;
  cell.query_lang = init.query_lang;
  cell.doc_lang = doc_lang;
  cell.query_count = per_query.size();
  double sum = 0.0;
  for (const auto& q : per_query) {
    sum += q.score;
    if (q.target_docs == 0) ++cell.zero_target_queries;
  }
  cell.score = sum / static_cast<double>(per_query.size());
  cell.per_query = std::move(per_query);
  return cell;
}

}  // namespace

MlrsCell mlrs_pair_serial(const RetrievalRun& init, const RetrievalRun& rerank,
                          const LanguageCode& doc_lang, const MlrsOptions& options) {
  auto ids = checked_query_ids(init, rerank);
  std::vector<QueryMlrs> per_query;
  per_query.reserve(ids.size());
  for (const auto* qid : ids) {
    QueryMlrs q = mlrs_for_query(init.lists.at(*qid), rerank.lists.at(*qid), init.query_lang,
                                 doc_lang, options);
    q.query_id = *qid;
    per_query.push_back(std::move(q));
  }
  return reduce(init, doc_lang, std::move(per_query));
}

MlrsCell mlrs_pair(const RetrievalRun& init, const RetrievalRun& rerank,
                   const LanguageCode& doc_lang, const MlrsOptions& options) {
  auto ids = checked_query_ids(init, rerank);
  const auto n = static_cast<std::ptrdiff_t>(ids.size());
  std::vector<QueryMlrs> per_query(ids.size());
  std::vector<const CandidateList*> init_lists(ids.size()), rerank_lists(ids.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    init_lists[i] = &init.lists.at(*ids[i]);
    rerank_lists[i] = &rerank.lists.at(*ids[i]);
  }

  // Exceptions must not cross the parallel region; keep the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      per_query[i] = mlrs_for_query(*init_lists[i], *rerank_lists[i], init.query_lang, doc_lang, options);
      per_query[i].query_id = *ids[i];
    } catch (...) {
#pragma omp critical(delp_mlrs_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return reduce(init, doc_lang, std::move(per_query));
}

RecallResult recall_at_k(const RetrievalRun& run, const ProvenanceMap& provenance,
                         const SitelinkMap& sitelinks, int k, const DocWpidMap* doc_wpids) {
  if (k < 1) throw DomainError("recall cutoff k must be >= 1");
  RecallResult out;
  for (const auto& [qid, list] : run.lists) {
    const GoldProvenance* gold = provenance.find(qid);
    bool available = gold != nullptr;
    if (available && !sitelinks.empty()) {
      available = std::any_of(gold->gold_wpids.begin(), gold->gold_wpids.end(),
                              [&](const std::string& w) { return sitelinks.available_anywhere(w); });
    }
    if (!available) {
      ++out.excluded_no_gold;
      continue;
    }
    ++out.evaluated;
    for (const auto& c : list) {
      if (c.rank > k) break;
      const std::string* wpid = c.wpid ? &*c.wpid : nullptr;
      if (!wpid && doc_wpids) {
        auto it = doc_wpids->find(c.doc_id);
        if (it != doc_wpids->end()) wpid = &it->second;
      }
      if (wpid && gold->gold_wpids.contains(*wpid)) {
        ++out.hits;
        break;
      }
    }
  }
  if (out.evaluated == 0) throw DomainError("no gold-available queries to evaluate recall on");
  out.recall = static_cast<double>(out.hits) / static_cast<double>(out.evaluated);
  return out;
}

double char_ngram_recall(std::string_view candidate, std::string_view reference, std::size_t n) {
  if (n == 0) throw DomainError("n-gram order must be >= 1");
  const auto ref = text::decode(text::normalize(reference));
  if (ref.empty()) throw DomainError("empty reference answer");
  const auto cand = text::decode(text::normalize(candidate));
  const auto ref_grams = text::char_ngrams(ref, n);
  const auto cand_grams = text::char_ngrams(cand, n);
  long total = 0;
  long matched = 0;
  for (const auto& [gram, count] : ref_grams) {
    total += count;
    auto it = cand_grams.find(gram);
    if (it != cand_grams.end()) matched += std::min(count, it->second);
  }
  return static_cast<double>(matched) / static_cast<double>(total);
}

}  // namespace delp
