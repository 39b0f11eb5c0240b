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

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace delp {

class LanguageSet;

// Two-letter ISO 639-1 code. Only obtainable through LanguageSet::parse, so
// every instance belongs to the set that admitted it.
class LanguageCode {
 public:
  std::string str() const { return std::string(code_.data(), code_.size()); }

  auto operator<=>(const LanguageCode&) const = default;

  static LanguageCode english() { return LanguageCode('e', 'n'); }

 private:
  friend class LanguageSet;
  LanguageCode(char a, char b) : code_{a, b} {}

  std::array<char, 2> code_;
};

// The admissible language inventory. The standard set holds the 13 MKQA
// languages; `allow_extra` admits any syntactically valid two-letter code.
class LanguageSet {
 public:
  static const LanguageSet& standard();
  static LanguageSet with_extras();
  static LanguageSet of(const std::vector<std::string>& codes, bool allow_extra = false);

  // Throws LanguageError for malformed codes, or codes outside the set when
  // extras are not allowed.
  LanguageCode parse(std::string_view code) const;
  bool contains(const LanguageCode& code) const { return members_.contains(code); }
  bool allows_extra() const { return allow_extra_; }

  // Ascending by code.
  std::vector<LanguageCode> languages() const { return {members_.begin(), members_.end()}; }
  std::size_t size() const { return members_.size(); }

 private:
  LanguageSet() = default;

  std::set<LanguageCode> members_;
  bool allow_extra_ = false;
};

// English name used in translation prompts ("Korean" for ko).
std::string language_name(const LanguageCode& code);

}  // namespace delp

template <>
struct std::hash<delp::LanguageCode> {
  std::size_t operator()(const delp::LanguageCode& code) const noexcept {
    return std::hash<std::string>{}(code.str());
  }
};
