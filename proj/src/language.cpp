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

#include "delp/language.hpp"

#include <map>

#include "delp/error.hpp"

namespace delp {
namespace {

constexpr std::array<std::string_view, 13> kStandardCodes = {
    "en", "ar", "es", "fi", "fr", "de", "ja", "it", "ko", "pt", "ru", "zh", "th"};

bool well_formed(std::string_view code) {
  return code.size() == 2 && code[0] >= 'a' && code[0] <= 'z' && code[1] >= 'a' &&
         code[1] <= 'z';
}

}  // namespace

const LanguageSet& LanguageSet::standard() {
  static const LanguageSet set = [] {
    std::vector<std::string> codes(kStandardCodes.begin(), kStandardCodes.end());
    return LanguageSet::of(codes);
  }();
  return set;
}

LanguageSet LanguageSet::with_extras() {
  LanguageSet set = standard();
  set.allow_extra_ = true;
  return set;
}

LanguageSet LanguageSet::of(const std::vector<std::string>& codes, bool allow_extra) {
  LanguageSet set;
  for (const auto& c : codes) {
    if (!well_formed(c)) throw LanguageError("malformed language code '" + c + "'");
    set.members_.insert(LanguageCode(c[0], c[1]));
  }
  set.allow_extra_ = allow_extra;
  return set;
}

LanguageCode LanguageSet::parse(std::string_view code) const {
  if (!well_formed(code)) {
    throw LanguageError("malformed language code '" + std::string(code) + "'");
  }
  LanguageCode parsed(code[0], code[1]);
  if (!allow_extra_ && !members_.contains(parsed)) {
    throw LanguageError("unknown language code '" + std::string(code) +
                        "' (use --allow-extra-langs to admit it)");
  }
  return parsed;
}

std::string language_name(const LanguageCode& code) {
  static const std::map<std::string, std::string> names = {
      {"en", "English"},  {"ar", "Arabic"},   {"es", "Spanish"},  {"fi", "Finnish"},
      {"fr", "French"},   {"de", "German"},   {"ja", "Japanese"}, {"it", "Italian"},
      {"ko", "Korean"},   {"pt", "Portuguese"}, {"ru", "Russian"}, {"zh", "Chinese"},
      {"th", "Thai"}};
  auto it = names.find(code.str());
  return it == names.end() ? code.str() : it->second;
}

}  // namespace delp
