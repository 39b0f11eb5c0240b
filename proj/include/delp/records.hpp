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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "delp/language.hpp"

namespace delp {

// One entry of a ranked list. Ranks are 1-based.
struct RankedCandidate {
  std::string query_id;
  std::string doc_id;
  int rank = 1;
  double score = 0.0;  // carried as opaque metadata
  LanguageCode doc_lang = LanguageCode::english();
  std::optional<std::string> wpid;

  bool operator==(const RankedCandidate&) const = default;
};

using CandidateList = std::vector<RankedCandidate>;

// Per-query ranked lists for a single query language, sorted by rank with
// ranks contiguous from 1.
struct RetrievalRun {
  std::string run_id;
  LanguageCode query_lang = LanguageCode::english();
  std::map<std::string, CandidateList> lists;
  std::size_t dropped_beyond_depth = 0;

  bool operator==(const RetrievalRun& other) const {
    return run_id == other.run_id && query_lang == other.query_lang && lists == other.lists;
  }
};

struct GoldProvenance {
  std::string query_id;
  std::set<std::string> gold_wpids;

  bool operator==(const GoldProvenance&) const = default;
};

struct ProvenanceMap {
  std::map<std::string, GoldProvenance> entries;
  std::size_t rejected_empty = 0;

  const GoldProvenance* find(const std::string& query_id) const {
    auto it = entries.find(query_id);
    return it == entries.end() ? nullptr : &it->second;
  }
  bool operator==(const ProvenanceMap&) const = default;
};

// WPID -> language edition -> page present. Every entry carries an `en` key.
class SitelinkMap {
 public:
  void add(const std::string& wpid, const std::set<LanguageCode>& present_in);

  bool present(const std::string& wpid, const LanguageCode& lang) const;
  bool contains(const std::string& wpid) const { return entries_.contains(wpid); }
  // True when the page exists in at least one edition.
  bool available_anywhere(const std::string& wpid) const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::map<LanguageCode, bool>>& entries() const { return entries_; }

  bool operator==(const SitelinkMap&) const = default;

 private:
  std::map<std::string, std::map<LanguageCode, bool>> entries_;
};

struct CorpusStats {
  LanguageCode lang = LanguageCode::english();
  std::uint64_t passage_count = 0;
  double median_passage_length = 0.0;  // Unicode characters
  std::optional<double> mean_passage_length;

  bool operator==(const CorpusStats&) const = default;
};

}  // namespace delp
