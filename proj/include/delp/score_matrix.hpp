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

#include <compare>
#include <map>
#include <string>

#include <json.hpp>

#include "delp/language.hpp"

namespace delp {

struct LangPair {
  LanguageCode query;
  LanguageCode doc;

  bool same_lang() const { return query == doc; }
  std::string str() const { return "(" + query.str() + ", " + doc.str() + ")"; }
  auto operator<=>(const LangPair&) const = default;
};

enum class ScoreKind { raw_mlrs, delp };

// Per-encoder preference score over (query language, document language).
// On the wire the monolingual cell of each query language is written with
// `"doc_lang": "same_lang"` so it never collides with a cross-lingual column.
class PairScoreMatrix {
 public:
  PairScoreMatrix() = default;
  PairScoreMatrix(std::string encoder_id, ScoreKind kind)
      : encoder_id_(std::move(encoder_id)), kind_(kind) {}

  // raw_mlrs cells must lie in [0, 100]; throws DomainError otherwise.
  void set(const LangPair& pair, double score);
  double at(const LangPair& pair) const;
  bool contains(const LangPair& pair) const { return cells_.contains(pair); }

  const std::string& encoder_id() const { return encoder_id_; }
  ScoreKind kind() const { return kind_; }
  const std::map<LangPair, double>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  bool operator==(const PairScoreMatrix&) const = default;

 private:
  std::string encoder_id_;
  ScoreKind kind_ = ScoreKind::raw_mlrs;
  std::map<LangPair, double> cells_;
};

nlohmann::json to_json(const PairScoreMatrix& matrix);
PairScoreMatrix matrix_from_json(const nlohmann::json& doc, const LanguageSet& languages);

std::string to_string(ScoreKind kind);

}  // namespace delp
