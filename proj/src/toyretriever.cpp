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

#include "delp/toyretriever.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "delp/error.hpp"
#include "delp/io.hpp"

namespace delp {

text::GramCounts query_grams(const std::string& query) {
  return text::char_ngrams(text::decode(text::normalize(query)), ToyIndex::kGramOrder);
}

ToyCorpus parse_toy_corpus(const std::filesystem::path& path, const LanguageSet& languages) {
  ToyCorpus corpus;
  const std::string source = path.string();
  for_each_jsonl(path, [&](const json& rec, std::size_t line) {
    Passage p;
    p.doc_id = field::string(rec, "doc_id", source, line);
    p.lang = languages.parse(field::string(rec, "lang", source, line));
    p.text = field::string(rec, "text", source, line);
    if (auto it = rec.find("wpid"); it != rec.end() && !it->is_null()) {
      p.wpid = field::string(rec, "wpid", source, line);
    }
    corpus.passages.push_back(std::move(p));
  });
  return corpus;
}

std::vector<ToyQuery> parse_toy_queries(const std::filesystem::path& path,
                                        const LanguageSet& languages) {
  std::vector<ToyQuery> out;
  const std::string source = path.string();
  for_each_jsonl(path, [&](const json& rec, std::size_t line) {
    ToyQuery q;
    q.query_id = field::string(rec, "query_id", source, line);
    q.lang = languages.parse(field::string(rec, "lang", source, line));
    q.text = field::string(rec, "text", source, line);
    out.push_back(std::move(q));
  });
  return out;
}

ToyIndex ToyIndex::build(ToyCorpus corpus) {
  if (corpus.passages.empty()) throw DomainError("cannot index an empty corpus");
  std::set<std::string> ids;
  for (const auto& p : corpus.passages) {
    if (!ids.insert(p.doc_id).second) throw IntegrityError("duplicate doc_id '" + p.doc_id + "'");
  }
  ToyIndex index;
  index.doc_grams_.reserve(corpus.passages.size());
  for (std::size_t d = 0; d < corpus.passages.size(); ++d) {
    auto grams = query_grams(corpus.passages[d].text);
    for (const auto& [gram, count] : grams) {
      index.postings_[gram].push_back({static_cast<std::uint32_t>(d), count});
    }
    index.doc_grams_.push_back(std::move(grams));
  }
  index.corpus_ = std::move(corpus);
  return index;
}

std::size_t ToyIndex::postings_size(const std::u32string& gram) const {
  auto it = postings_.find(gram);
  return it == postings_.end() ? 0 : it->second.size();
}

CandidateList ToyIndex::rank(const std::vector<long>& scores, int k, const std::string& query_id,
                             const SearchOptions& options) const {
  if (k < 1) throw DomainError("search depth k must be >= 1");
  std::vector<std::uint32_t> order;
  order.reserve(scores.size());
  for (std::uint32_t d = 0; d < scores.size(); ++d) {
    if (scores[d] > 0 || options.include_zero_scores) order.push_back(d);
  }
  const auto better = [&](std::uint32_t a, std::uint32_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return corpus_.passages[a].doc_id < corpus_.passages[b].doc_id;
  };
  const auto keep = std::min(order.size(), static_cast<std::size_t>(k));
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(), better);
  order.resize(keep);

  CandidateList out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    const auto& p = corpus_.passages[order[i]];
    RankedCandidate c;
    c.query_id = query_id;
    c.doc_id = p.doc_id;
    c.rank = static_cast<int>(i) + 1;
    c.score = static_cast<double>(scores[order[i]]);
    c.doc_lang = p.lang;
    c.wpid = p.wpid;
    out.push_back(std::move(c));
  }
  return out;
}

CandidateList ToyIndex::search(const std::string& query, int k, const std::string& query_id,
                               const SearchOptions& options) const {
  std::vector<long> scores(corpus_.passages.size(), 0);
  for (const auto& [gram, qcount] : query_grams(query)) {
    auto it = postings_.find(gram);
    if (it == postings_.end()) continue;
    for (const auto& posting : it->second) scores[posting.doc] += std::min(qcount, posting.count);
  }
  return rank(scores, k, query_id, options);
}

CandidateList ToyIndex::search_reference(const std::string& query, int k,
                                         const std::string& query_id,
                                         const SearchOptions& options) const {
  const auto q = query_grams(query);
  std::vector<long> scores(corpus_.passages.size(), 0);
  for (std::size_t d = 0; d < doc_grams_.size(); ++d) {
    for (const auto& [gram, qcount] : q) {
      auto it = doc_grams_[d].find(gram);
      if (it != doc_grams_[d].end()) scores[d] += std::min(qcount, it->second);
    }
  }
  return rank(scores, k, query_id, options);
}

namespace {

RetrievalRun assemble(std::span<const ToyQuery> queries, std::vector<CandidateList> lists,
                      const LanguageCode& query_lang, const std::string& run_id) {
  RetrievalRun run;
  run.run_id = run_id;
  run.query_lang = query_lang;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (lists[i].empty()) continue;
    if (!run.lists.emplace(queries[i].query_id, std::move(lists[i])).second) {
      throw IntegrityError("duplicate query_id '" + queries[i].query_id + "'");
    }
  }
  return run;
}

}  // namespace

RetrievalRun search_batch_serial(const ToyIndex& index, std::span<const ToyQuery> queries,
                                 const LanguageCode& query_lang, int k, const std::string& run_id,
                                 const SearchOptions& options) {
  std::vector<CandidateList> lists;
  lists.reserve(queries.size());
  for (const auto& q : queries) lists.push_back(index.search(q.text, k, q.query_id, options));
  return assemble(queries, std::move(lists), query_lang, run_id);
}

RetrievalRun search_batch(const ToyIndex& index, std::span<const ToyQuery> queries,
                          const LanguageCode& query_lang, int k, const std::string& run_id,
                          const SearchOptions& options) {
  if (k < 1) throw DomainError("search depth k must be >= 1");
  std::vector<CandidateList> lists(queries.size());
  const auto n = static_cast<std::ptrdiff_t>(queries.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    lists[i] = index.search(queries[i].text, k, queries[i].query_id, options);
  }
  return assemble(queries, std::move(lists), query_lang, run_id);
}

}  // namespace delp
