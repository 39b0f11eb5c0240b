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

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "delp/language.hpp"
#include "delp/records.hpp"

namespace delp {

using json = nlohmann::json;

// Calls `fn(record, line_number)` for every non-blank line. Lines that are
// not JSON objects raise ParseError with the line number.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const json&, std::size_t)>& fn);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

struct RunParseOptions {
  int expected_depth = 50;
  const LanguageSet* languages = nullptr;  // standard set when null
  // Query language when records do not carry `query_lang`. If neither is
  // present, the last dot-separated token of the file stem is used
  // ("init.ko.jsonl" -> ko).
  std::optional<LanguageCode> query_lang;
};

RetrievalRun parse_run(const std::filesystem::path& path, const RunParseOptions& options = {});
// Same contract over in-memory text; `source` names it in errors.
RetrievalRun parse_run_text(const std::string& contents, const std::string& source,
                            const RunParseOptions& options);
std::string serialize_run(const RetrievalRun& run);
// Every *.jsonl file in `dir`, ordered by file name.
std::vector<RetrievalRun> parse_run_dir(const std::filesystem::path& dir,
                                        const RunParseOptions& options = {});

ProvenanceMap parse_provenance(const std::filesystem::path& path);
ProvenanceMap parse_provenance_text(const std::string& contents, const std::string& source);
std::string serialize_provenance(const ProvenanceMap& provenance);

SitelinkMap parse_sitelinks(const std::filesystem::path& path,
                            const LanguageSet& languages = LanguageSet::standard());
std::string serialize_sitelinks(const SitelinkMap& sitelinks);

std::vector<CorpusStats> parse_corpus_stats(const std::filesystem::path& path,
                                            const LanguageSet& languages = LanguageSet::standard());
std::string serialize_corpus_stats(const std::vector<CorpusStats>& stats);

// Typed field access; throws ParseError naming the key and line.
namespace field {
std::string string(const json& record, const char* key, const std::string& source, std::size_t line);
std::int64_t integer(const json& record, const char* key, const std::string& source, std::size_t line);
double number(const json& record, const char* key, const std::string& source, std::size_t line);
}  // namespace field

}  // namespace delp
