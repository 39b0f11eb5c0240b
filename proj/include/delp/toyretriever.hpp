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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "delp/records.hpp"
#include "delp/text.hpp"

namespace delp {

// Desk-scale lexical retriever: a document's score is the size of the
// multiset intersection between its character 3-grams and the query's
// (after NFC and lowercasing). No idf, no length normalization.

struct Passage {
  std::string doc_id;
  LanguageCode lang = LanguageCode::english();
  std::string text;
  std::optional<std::string> wpid;
};

struct ToyCorpus {
  std::vector<Passage> passages;
};

struct ToyQuery {
  std::string query_id;
  LanguageCode lang = LanguageCode::english();
  std::string text;
};

// JSONL {doc_id, lang, text, wpid?} and {query_id, lang, text}.
ToyCorpus parse_toy_corpus(const std::filesystem::path& path,
                           const LanguageSet& languages = LanguageSet::standard());
std::vector<ToyQuery> parse_toy_queries(const std::filesystem::path& path,
                                        const LanguageSet& languages = LanguageSet::standard());

struct SearchOptions {
  bool include_zero_scores = false;
};

class ToyIndex {
 public:
  static constexpr std::size_t kGramOrder = 3;

  // Throws IntegrityError on duplicate doc_ids, DomainError on an empty corpus.
  static ToyIndex build(ToyCorpus corpus);

  // Top-k by (score desc, doc_id asc), ranks 1..k. Uses the postings lists.
  CandidateList search(const std::string& query, int k, const std::string& query_id = {},
                       const SearchOptions& options = {}) const;
  // Brute force over stored per-document gram counts; same ordering contract.
  CandidateList search_reference(const std::string& query, int k, const std::string& query_id = {},
                                 const SearchOptions& options = {}) const;

  const text::GramCounts& doc_grams(std::size_t doc) const { return doc_grams_[doc]; }
  std::size_t postings_size(const std::u32string& gram) const;
  std::size_t vocabulary_size() const { return postings_.size(); }
  const ToyCorpus& corpus() const { return corpus_; }

 private:
  struct Posting {
    std::uint32_t doc;
    int count;
  };

  CandidateList rank(const std::vector<long>& scores, int k, const std::string& query_id,
                     const SearchOptions& options) const;

  ToyCorpus corpus_;
  std::vector<text::GramCounts> doc_grams_;
  std::unordered_map<std::u32string, std::vector<Posting>> postings_;
};

text::GramCounts query_grams(const std::string& query);

// Runs every query and assembles a run for `query_lang`. The OpenMP version
// parallelizes over queries and yields the same run as the serial one.
RetrievalRun search_batch(const ToyIndex& index, std::span<const ToyQuery> queries,
                          const LanguageCode& query_lang, int k, const std::string& run_id = "toy",
                          const SearchOptions& options = {});
RetrievalRun search_batch_serial(const ToyIndex& index, std::span<const ToyQuery> queries,
                                 const LanguageCode& query_lang, int k,
                                 const std::string& run_id = "toy", const SearchOptions& options = {});

}  // namespace delp
