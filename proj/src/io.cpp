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

#include "delp/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "delp/error.hpp"

namespace delp {
namespace {

void for_each_jsonl_stream(std::istream& in, const std::string& source,
                           const std::function<void(const json&, std::size_t)>& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(source, line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!record.is_object()) throw ParseError(source, line_no, "record is not a JSON object");
    fn(record, line_no);
  }
}

const json& require(const json& record, const char* key, const std::string& source,
                    std::size_t line) {
  auto it = record.find(key);
  if (it == record.end()) {
    throw ParseError(source, line, std::string("missing key '") + key + "'");
  }
  return *it;
}

LanguageCode parse_lang(const LanguageSet& langs, const std::string& code,
                        const std::string& source, std::size_t line) {
  try {
    return langs.parse(code);
  } catch (const LanguageError& e) {
    throw LanguageError(source + ":" + std::to_string(line) + ": " + e.what());
  }
}

std::optional<LanguageCode> lang_from_stem(const std::filesystem::path& path,
                                           const LanguageSet& langs) {
  std::string stem = path.stem().string();
  auto dot = stem.rfind('.');
  std::string token = dot == std::string::npos ? stem : stem.substr(dot + 1);
  try {
    return langs.parse(token);
  } catch (const LanguageError&) {
    return std::nullopt;
  }
}

}  // namespace

namespace field {

std::string string(const json& record, const char* key, const std::string& source,
                   std::size_t line) {
  const json& v = require(record, key, source, line);
  if (!v.is_string()) throw ParseError(source, line, std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::int64_t integer(const json& record, const char* key, const std::string& source,
                     std::size_t line) {
  const json& v = require(record, key, source, line);
  if (!v.is_number_integer()) {
    throw ParseError(source, line, std::string("'") + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

double number(const json& record, const char* key, const std::string& source, std::size_t line) {
  const json& v = require(record, key, source, line);
  if (!v.is_number()) throw ParseError(source, line, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace field

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const json&, std::size_t)>& fn) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  for_each_jsonl_stream(in, path.string(), fn);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError(path.string(), 0, "cannot open file for writing");
  out << contents;
  if (!out) throw ParseError(path.string(), 0, "write failed");
}

// ---------------------------------------------------------------------------
// Runs

RetrievalRun parse_run_text(const std::string& contents, const std::string& source,
                            const RunParseOptions& options) {
  const LanguageSet& langs = options.languages ? *options.languages : LanguageSet::standard();
  if (options.expected_depth < 1) throw DomainError("run depth must be >= 1");

  std::optional<LanguageCode> record_lang;
  std::map<std::string, CandidateList> grouped;
  std::istringstream in(contents);
  for_each_jsonl_stream(in, source, [&](const json& rec, std::size_t line) {
    RankedCandidate c;
    c.query_id = field::string(rec, "query_id", source, line);
    c.doc_id = field::string(rec, "doc_id", source, line);
    const auto rank = field::integer(rec, "rank", source, line);
    if (rank < 1 || rank > std::numeric_limits<int>::max()) {
      throw IntegrityError(source + ":" + std::to_string(line) + ": rank must be >= 1");
    }
    c.rank = static_cast<int>(rank);
    c.score = field::number(rec, "score", source, line);
    c.doc_lang = parse_lang(langs, field::string(rec, "doc_lang", source, line), source, line);
    if (auto it = rec.find("wpid"); it != rec.end() && !it->is_null()) {
      c.wpid = field::string(rec, "wpid", source, line);
    }
    if (rec.contains("query_lang")) {
      auto ql = parse_lang(langs, field::string(rec, "query_lang", source, line), source, line);
      if (record_lang && *record_lang != ql) {
        throw IntegrityError(source + ":" + std::to_string(line) +
                             ": run mixes query languages");
      }
      record_lang = ql;
    }
    grouped[c.query_id].push_back(std::move(c));
  });

  RetrievalRun run;
  run.run_id = std::filesystem::path(source).stem().string();
  if (options.query_lang) {
    if (record_lang && *record_lang != *options.query_lang) {
      throw IntegrityError(source + ": query_lang in records disagrees with the requested language");
    }
    run.query_lang = *options.query_lang;
  } else if (record_lang) {
    run.query_lang = *record_lang;
  } else if (auto stem_lang = lang_from_stem(source, langs)) {
    run.query_lang = *stem_lang;
  } else {
    throw ParseError(source, 0,
                     "cannot determine query language (no query_lang field, no language in file name)");
  }

  for (auto& [qid, list] : grouped) {
    std::sort(list.begin(), list.end(),
              [](const RankedCandidate& a, const RankedCandidate& b) { return a.rank < b.rank; });
    std::set<std::string> docs;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i > 0 && list[i].rank == list[i - 1].rank) {
        throw IntegrityError(source + ": duplicate rank " + std::to_string(list[i].rank) +
                             " for query '" + qid + "'");
      }
      if (list[i].rank != static_cast<int>(i) + 1) {
        throw IntegrityError(source + ": ranks for query '" + qid +
                             "' are not contiguous from 1 (missing rank " +
                             std::to_string(i + 1) + ")");
      }
      if (!docs.insert(list[i].doc_id).second) {
        throw IntegrityError(source + ": doc '" + list[i].doc_id + "' listed twice for query '" +
                             qid + "'");
      }
    }
    const auto depth = static_cast<std::size_t>(options.expected_depth);
    if (list.size() > depth) {
      run.dropped_beyond_depth += list.size() - depth;
      list.resize(depth);
    }
  }
  run.lists = std::move(grouped);
  return run;
}

RetrievalRun parse_run(const std::filesystem::path& path, const RunParseOptions& options) {
  return parse_run_text(read_file(path), path.string(), options);
}

std::string serialize_run(const RetrievalRun& run) {
  std::string out;
  for (const auto& [qid, list] : run.lists) {
    for (const auto& c : list) {
      json rec = {{"query_id", c.query_id}, {"doc_id", c.doc_id},         {"rank", c.rank},
                  {"score", c.score},       {"doc_lang", c.doc_lang.str()}, {"query_lang", run.query_lang.str()}};
      if (c.wpid) rec["wpid"] = *c.wpid;
      out += rec.dump();
      out += '\n';
    }
  }
  return out;
}

std::vector<RetrievalRun> parse_run_dir(const std::filesystem::path& dir,
                                        const RunParseOptions& options) {
  if (!std::filesystem::is_directory(dir)) throw ParseError(dir.string(), 0, "not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<RetrievalRun> runs;
  runs.reserve(files.size());
  for (const auto& f : files) runs.push_back(parse_run(f, options));
  return runs;
}

// ---------------------------------------------------------------------------
// Provenance

ProvenanceMap parse_provenance_text(const std::string& contents, const std::string& source) {
  ProvenanceMap out;
  std::istringstream in(contents);
  for_each_jsonl_stream(in, source, [&](const json& rec, std::size_t line) {
    const std::string qid = field::string(rec, "query_id", source, line);
    auto it = rec.find("wpids");
    if (it == rec.end() || !it->is_array()) {
      throw ParseError(source, line, "'wpids' must be a list");
    }
    if (it->empty()) {
      ++out.rejected_empty;
      return;
    }
    auto& entry = out.entries[qid];
    entry.query_id = qid;
    for (const auto& w : *it) {
      if (!w.is_string()) throw ParseError(source, line, "'wpids' entries must be strings");
      entry.gold_wpids.insert(w.get<std::string>());
    }
  });
  return out;
}

ProvenanceMap parse_provenance(const std::filesystem::path& path) {
  return parse_provenance_text(read_file(path), path.string());
}

std::string serialize_provenance(const ProvenanceMap& provenance) {
  std::string out;
  for (const auto& [qid, entry] : provenance.entries) {
    json rec = {{"query_id", qid}, {"wpids", json(entry.gold_wpids)}};
    out += rec.dump();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sitelinks

void SitelinkMap::add(const std::string& wpid, const std::set<LanguageCode>& present_in) {
  auto& flags = entries_[wpid];
  flags.try_emplace(LanguageCode::english(), false);
  for (const auto& l : present_in) flags[l] = true;
}

bool SitelinkMap::present(const std::string& wpid, const LanguageCode& lang) const {
  auto it = entries_.find(wpid);
  if (it == entries_.end()) return false;
  auto f = it->second.find(lang);
  return f != it->second.end() && f->second;
}

bool SitelinkMap::available_anywhere(const std::string& wpid) const {
  auto it = entries_.find(wpid);
  if (it == entries_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(), [](const auto& kv) { return kv.second; });
}

SitelinkMap parse_sitelinks(const std::filesystem::path& path, const LanguageSet& languages) {
  SitelinkMap out;
  const std::string source = path.string();
  for_each_jsonl(path, [&](const json& rec, std::size_t line) {
    const std::string wpid = field::string(rec, "wpid", source, line);
    auto it = rec.find("langs");
    if (it == rec.end() || !it->is_array()) throw ParseError(source, line, "'langs' must be a list");
    std::set<LanguageCode> present;
    for (const auto& l : *it) {
      if (!l.is_string()) throw ParseError(source, line, "'langs' entries must be strings");
      present.insert(parse_lang(languages, l.get<std::string>(), source, line));
    }
    out.add(wpid, present);
  });
  return out;
}

std::string serialize_sitelinks(const SitelinkMap& sitelinks) {
  std::string out;
  for (const auto& [wpid, flags] : sitelinks.entries()) {
    json langs = json::array();
    for (const auto& [lang, present] : flags) {
      if (present) langs.push_back(lang.str());
    }
    out += json{{"wpid", wpid}, {"langs", langs}}.dump();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corpus statistics

std::vector<CorpusStats> parse_corpus_stats(const std::filesystem::path& path,
                                            const LanguageSet& languages) {
  std::vector<CorpusStats> out;
  const std::string source = path.string();
  for_each_jsonl(path, [&](const json& rec, std::size_t line) {
    CorpusStats s;
    s.lang = parse_lang(languages, field::string(rec, "lang", source, line), source, line);
    const auto count = field::integer(rec, "passage_count", source, line);
    if (count < 0) throw IntegrityError(source + ":" + std::to_string(line) + ": negative passage_count");
    s.passage_count = static_cast<std::uint64_t>(count);
    s.median_passage_length = field::number(rec, "median_passage_length", source, line);
    if (s.median_passage_length < 0) {
      throw IntegrityError(source + ":" + std::to_string(line) + ": negative median_passage_length");
    }
    if ((s.median_passage_length == 0.0) != (s.passage_count == 0)) {
      throw IntegrityError(source + ":" + std::to_string(line) +
                           ": median_passage_length must be 0 exactly when passage_count is 0");
    }
    if (rec.contains("mean_passage_length")) {
      s.mean_passage_length = field::number(rec, "mean_passage_length", source, line);
    }
    out.push_back(s);
  });
  std::sort(out.begin(), out.end(),
            [](const CorpusStats& a, const CorpusStats& b) { return a.lang < b.lang; });
  return out;
}

std::string serialize_corpus_stats(const std::vector<CorpusStats>& stats) {
  std::string out;
  for (const auto& s : stats) {
    json rec = {{"lang", s.lang.str()},
                {"passage_count", s.passage_count},
                {"median_passage_length", s.median_passage_length}};
    if (s.mean_passage_length) rec["mean_passage_length"] = *s.mean_passage_length;
    out += rec.dump();
    out += '\n';
  }
  return out;
}

}  // namespace delp
