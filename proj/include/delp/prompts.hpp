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

#include <string>

#include <json.hpp>

#include "delp/cues.hpp"
#include "delp/language.hpp"

// Chat prompts for cue production. The texts are wire formats: changing a
// character changes what the cached payloads mean.
namespace delp::prompts {

std::string cultural_classifier_system();
std::string cultural_classifier_user(const std::string& query_en);

std::string bundle_system(const LanguageCode& query_lang, int alias_limit);
std::string bundle_user(const std::string& q_en, const std::string& q_orig,
                        const LanguageCode& query_lang, const CulturalCue& cue);

std::string translation_system(const LanguageCode& source_lang);
std::string translation_user(const LanguageCode& source_lang, const std::string& query);

}  // namespace delp::prompts
