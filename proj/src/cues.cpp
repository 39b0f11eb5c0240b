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

#include "delp/cues.hpp"

#include <set>
#include <sstream>

#include "delp/error.hpp"

namespace delp {
namespace {

[[noreturn]] void reject(const std::string& what, const nlohmann::json& payload) {
  throw ValidationError(what, payload.dump());
}

const nlohmann::json& member(const nlohmann::json& payload, const char* key, const char* schema) {
  auto it = payload.find(key);
  if (it == payload.end()) reject(std::string(schema) + ": missing key '" + key + "'", payload);
  return *it;
}

std::vector<std::string> string_list(const nlohmann::json& payload, const char* key) {
  const auto& v = member(payload, key, "bundle");
  if (v.is_null()) return {};
  if (!v.is_array()) reject(std::string("bundle: '") + key + "' must be a list", payload);
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) reject(std::string("bundle: '") + key + "' items must be strings", payload);
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::optional<std::string> optional_title(const nlohmann::json& payload, const char* key) {
  const auto& v = member(payload, key, "bundle");
  if (v.is_null()) return std::nullopt;
  if (!v.is_string()) reject(std::string("bundle: '") + key + "' must be a string or null", payload);
  auto s = v.get<std::string>();
  if (s.find_first_not_of(" \t\r\n") == std::string::npos) return std::nullopt;
  return s;
}

}  // namespace

std::size_t word_count(const std::string& s) {
  std::istringstream in(s);
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

CulturalCue parse_cultural_cue(const nlohmann::json& payload, const LanguageSet& languages) {
  if (!payload.is_object()) reject("cultural cue: payload must be a JSON object", payload);
  CulturalCue cue;
  const auto& region = member(payload, "country_or_region", "cultural cue");
  if (!region.is_string()) reject("cultural cue: 'country_or_region' must be a string", payload);
  cue.country_or_region = region.get<std::string>();

  const auto& lang = member(payload, "cultural_language", "cultural cue");
  if (!lang.is_string()) reject("cultural cue: 'cultural_language' must be a string", payload);
  try {
    cue.cultural_language = languages.parse(lang.get<std::string>());
  } catch (const LanguageError& e) {
    reject(std::string("cultural cue: ") + e.what(), payload);
  }

  const auto& specific = member(payload, "is_culture_specific", "cultural cue");
  if (!specific.is_boolean()) reject("cultural cue: 'is_culture_specific' must be a boolean", payload);
  cue.is_culture_specific = specific.get<bool>();

  const auto& conf = member(payload, "confidence", "cultural cue");
  if (!conf.is_number()) reject("cultural cue: 'confidence' must be a number", payload);
  cue.confidence = conf.get<double>();
  if (!(cue.confidence >= 0.0 && cue.confidence <= 1.0)) {
    reject("cultural cue: 'confidence' outside [0, 1]", payload);
  }

  const auto& rationale = member(payload, "rationale", "cultural cue");
  if (!rationale.is_string()) reject("cultural cue: 'rationale' must be a string", payload);
  cue.rationale = rationale.get<std::string>();
  return cue;
}

CueBundle parse_bundle(const nlohmann::json& payload) {
  static const std::set<std::string> keys = {"en_title", "local_title", "aliases_en",
                                             "aliases_local", "extra_disambig"};
  if (!payload.is_object()) reject("bundle: payload must be a JSON object", payload);
  for (const auto& [k, v] : payload.items()) {
    if (!keys.contains(k)) reject("bundle: unexpected key '" + k + "'", payload);
  }
  CueBundle b;
  b.en_title = optional_title(payload, "en_title");
  b.local_title = optional_title(payload, "local_title");
  b.aliases_en = string_list(payload, "aliases_en");
  b.aliases_local = string_list(payload, "aliases_local");
  const auto& hint = member(payload, "extra_disambig", "bundle");
  if (!hint.is_null()) {
    if (!hint.is_string()) reject("bundle: 'extra_disambig' must be a string", payload);
    b.extra_disambig = hint.get<std::string>();
  }
  if (word_count(b.extra_disambig) > kMaxDisambigWords) {
    reject("bundle: 'extra_disambig' exceeds " + std::to_string(kMaxDisambigWords) + " words",
           payload);
  }
  return b;
}

std::string parse_translation(const nlohmann::json& payload) {
  if (!payload.is_object() || payload.size() != 1 || !payload.contains("translation")) {
    reject("translation: expected exactly one key 'translation'", payload);
  }
  const auto& t = payload["translation"];
  if (!t.is_string()) reject("translation: 'translation' must be a string", payload);
  auto s = t.get<std::string>();
  if (s.find_first_not_of(" \t\r\n") == std::string::npos) reject("translation: empty translation", payload);
  return s;
}

nlohmann::json to_json(const CulturalCue& cue) {
  return {{"country_or_region", cue.country_or_region},
          {"cultural_language", cue.cultural_language.str()},
          {"is_culture_specific", cue.is_culture_specific},
          {"confidence", cue.confidence},
          {"rationale", cue.rationale}};
}

nlohmann::json to_json(const CueBundle& b) {
  nlohmann::json out;
  out["en_title"] = b.en_title ? nlohmann::json(*b.en_title) : nlohmann::json(nullptr);
  out["local_title"] = b.local_title ? nlohmann::json(*b.local_title) : nlohmann::json(nullptr);
  out["aliases_en"] = b.aliases_en;
  out["aliases_local"] = b.aliases_local;
  out["extra_disambig"] = b.extra_disambig;
  return out;
}

}  // namespace delp
