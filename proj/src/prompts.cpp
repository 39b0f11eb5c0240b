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

#include "delp/prompts.hpp"

namespace delp::prompts {
namespace {

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

constexpr const char* kCulturalSystem = R"(You are annotating a FAIR multilingual retrieval setup.
Given an English query, decide the SINGLE most appropriate "cultural database language"
where the relevant evidence SHOULD exist in a fair, localized setting.

CRITICAL RULES:
  - You MUST choose exactly ONE language from this fixed set:
    {en, ar, es, de, ja, ko, th, zh, fr, it, pt, ru, fi}
  - Prefer the LOCAL language of the primary place/culture the query is about.
  - Do NOT choose 'en' just because the query text is English.
  - Choose 'en' only if the query's primary cultural context is inherently English-speaking
    (e.g., US/UK-specific) OR the query is truly global / multi-country / not place-specific.
  - If the query mentions a place that maps to one of the non-English languages,
    pick that non-English language.

Examples:
  - "when did hong kong go back to china" -> cultural_language="zh"
  - "what is the capital of france" -> cultural_language="fr"
  - "who was the first president of the united states" -> cultural_language="en"
  - "compare gdp of france and germany" -> cultural_language="en" (multi-country/global)

Output (JSON only; no extra text):
  {
    "country_or_region": string (SINGLE primary place/region),
    "cultural_language": string (exactly one from the set),
    "is_culture_specific": boolean,
    "confidence": number in [0,1],
    "rationale": short string
  })";

constexpr const char* kBundleSystem = R"(Goal: Produce title/alias anchors and a short disambiguation hint for fused query construction.

Return Format:
  - SINGLE-LINE JSON object only (no markdown, no explanation).
  - Keys must be EXACTLY:
      en_title, local_title, aliases_en, aliases_local, extra_disambig

Constraints:
  - aliases_en / aliases_local: 0..{K} items each
  - Titles: plausible Wikipedia page titles; use null if unsure
  - extra_disambig: <= 8 words
  - local_title & aliases_local MUST be in {query_lang}; English fields MUST be English
  - Do not add new keys)";

constexpr const char* kTranslationSystem = R"(You are a professional translator from {lang_name} to English.
You receive a question in the source language and must translate it into fluent,
natural English while preserving the original meaning as much as possible.
- Keep named entities as appropriate English forms.
- Do not add explanations or extra information.
Return STRICT JSON with a single key "translation".)";

constexpr const char* kTranslationUser = R"(Question in {lang_name}:
{query}

Return only:
{"translation": "<the question translated into English>"})";

}  // namespace

std::string cultural_classifier_system() { return kCulturalSystem; }

std::string cultural_classifier_user(const std::string& query_en) { return "Query: " + query_en; }

std::string bundle_system(const LanguageCode& query_lang, int alias_limit) {
  std::string s = kBundleSystem;
  replace_all(s, "{K}", std::to_string(alias_limit));
  replace_all(s, "{query_lang}", query_lang.str());
  return s;
}

std::string bundle_user(const std::string& q_en, const std::string& q_orig,
                        const LanguageCode& query_lang, const CulturalCue& cue) {
  nlohmann::ordered_json input = {{"q_en", q_en},
                                  {"q_orig", q_orig},
                                  {"query_lang", query_lang.str()},
                                  {"country_or_region", cue.country_or_region},
                                  {"cultural_language", cue.cultural_language.str()},
                                  {"is_culture_specific", cue.is_culture_specific},
                                  {"confidence", cue.confidence}};
  return input.dump(2);
}

std::string translation_system(const LanguageCode& source_lang) {
  std::string s = kTranslationSystem;
  replace_all(s, "{lang_name}", language_name(source_lang));
  return s;
}

std::string translation_user(const LanguageCode& source_lang, const std::string& query) {
  std::string s = kTranslationUser;
  replace_all(s, "{lang_name}", language_name(source_lang));
  // Substitute the query last so braces inside it are left alone.
  replace_all(s, "{query}", query);
  return s;
}

}  // namespace delp::prompts
