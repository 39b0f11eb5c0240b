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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "delp/language.hpp"

namespace delp {

// Cultural-context annotation of a query: (y, c, L_loc) plus metadata.
struct CulturalCue {
  std::string country_or_region;
  LanguageCode cultural_language = LanguageCode::english();
  bool is_culture_specific = false;
  double confidence = 0.0;
  std::string rationale;

  bool operator==(const CulturalCue&) const = default;
};

// Title/alias anchors and disambiguation hint for fused-query construction.
struct CueBundle {
  std::optional<std::string> en_title;
  std::optional<std::string> local_title;
  std::vector<std::string> aliases_en;
  std::vector<std::string> aliases_local;
  std::string extra_disambig;

  bool operator==(const CueBundle&) const = default;
};

inline constexpr std::size_t kMaxDisambigWords = 8;

// Schema validation. Each throws ValidationError carrying the raw payload.
// Cultural cues need the five annotation keys (extra keys are ignored);
// bundles must have exactly the five bundle keys; translations exactly
// {"translation": non-empty string}.
CulturalCue parse_cultural_cue(const nlohmann::json& payload,
                               const LanguageSet& languages = LanguageSet::standard());
CueBundle parse_bundle(const nlohmann::json& payload);
std::string parse_translation(const nlohmann::json& payload);

nlohmann::json to_json(const CulturalCue& cue);
nlohmann::json to_json(const CueBundle& bundle);

std::size_t word_count(const std::string& s);

}  // namespace delp
