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

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>

namespace delp::text {

// Unicode NFC followed by root-locale lowercasing. Whitespace is kept as is.
std::string normalize(std::string_view utf8);

// Invalid sequences decode to U+FFFD.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view code_points);

// Length in Unicode code points.
std::size_t length(std::string_view utf8);

// Longest prefix holding at most `max_chars` code points; never splits a
// multi-byte sequence.
std::string truncate(std::string_view utf8, std::size_t max_chars);

std::string trim(std::string_view s);

using GramCounts = std::unordered_map<std::u32string, int>;

// Character n-gram multiset. A non-empty string shorter than n yields itself
// as the single gram; the empty string yields nothing.
GramCounts char_ngrams(std::u32string_view code_points, std::size_t n);

}  // namespace delp::text
