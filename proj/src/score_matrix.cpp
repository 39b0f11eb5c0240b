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

#include "delp/score_matrix.hpp"

#include <cmath>

#include "delp/error.hpp"

namespace delp {

std::string to_string(ScoreKind kind) { return kind == ScoreKind::raw_mlrs ? "raw_mlrs" : "delp"; }

void PairScoreMatrix::set(const LangPair& pair, double score) {
  if (!std::isfinite(score)) throw DomainError("non-finite score for pair " + pair.str());
  if (kind_ == ScoreKind::raw_mlrs && (score < 0.0 || score > 100.0)) {
    throw DomainError("raw MLRS cell " + pair.str() + " outside [0, 100]: " + std::to_string(score));
  }
  cells_[pair] = score;
}

double PairScoreMatrix::at(const LangPair& pair) const {
  auto it = cells_.find(pair);
  if (it == cells_.end()) throw IntegrityError("score matrix has no cell " + pair.str());
  return it->second;
}

nlohmann::json to_json(const PairScoreMatrix& matrix) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& [pair, score] : matrix.cells()) {
    cells.push_back({{"query_lang", pair.query.str()},
                     {"doc_lang", pair.same_lang() ? std::string("same_lang") : pair.doc.str()},
                     {"score", score}});
  }
  return {{"encoder_id", matrix.encoder_id()}, {"kind", to_string(matrix.kind())}, {"cells", cells}};
}

PairScoreMatrix matrix_from_json(const nlohmann::json& doc, const LanguageSet& languages) {
  const std::string source = "score matrix";
  if (!doc.is_object() || !doc.contains("cells") || !doc["cells"].is_array()) {
    throw ParseError(source, 0, "expected an object with a 'cells' list");
  }
  const std::string kind = doc.value("kind", std::string("raw_mlrs"));
  ScoreKind k;
  if (kind == "raw_mlrs") {
    k = ScoreKind::raw_mlrs;
  } else if (kind == "delp") {
    k = ScoreKind::delp;
  } else {
    throw ParseError(source, 0, "unknown kind '" + kind + "'");
  }
  PairScoreMatrix m(doc.value("encoder_id", std::string()), k);
  for (const auto& cell : doc["cells"]) {
    if (!cell.is_object() || !cell.contains("query_lang") || !cell.contains("doc_lang") ||
        !cell.contains("score") || !cell["score"].is_number()) {
      throw ParseError(source, 0, "cell must carry query_lang, doc_lang and a numeric score");
    }
    auto q = languages.parse(cell["query_lang"].get<std::string>());
    const auto d_str = cell["doc_lang"].get<std::string>();
    LangPair pair{q, d_str == "same_lang" ? q : languages.parse(d_str)};
    if (m.contains(pair)) throw IntegrityError("duplicate score cell " + pair.str());
    m.set(pair, cell["score"].get<double>());
  }
  return m;
}

}  // namespace delp
