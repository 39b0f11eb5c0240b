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

#include "delp/priors.hpp"

#include <algorithm>
#include <set>

#include "delp/error.hpp"

namespace delp {
namespace {

nlohmann::json pair_prior_json(const PairPrior& prior) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [pair, v] : prior) out[pair.query.str()][pair.doc.str()] = v;
  return out;
}

nlohmann::json language_prior_json(const LanguagePrior& prior) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [lang, v] : prior) out[lang.str()] = v;
  return out;
}

PairPrior pair_prior_from(const nlohmann::json& doc, const char* key, const LanguageSet& langs) {
  PairPrior out;
  if (!doc.contains(key)) return out;
  const auto& table = doc[key];
  if (!table.is_object()) throw ParseError("priors", 0, std::string("'") + key + "' must be an object");
  for (const auto& [q, row] : table.items()) {
    if (!row.is_object()) throw ParseError("priors", 0, std::string("'") + key + "' rows must be objects");
    for (const auto& [d, v] : row.items()) {
      if (!v.is_number()) throw ParseError("priors", 0, std::string("'") + key + "' values must be numbers");
      out[LangPair{langs.parse(q), langs.parse(d)}] = v.get<double>();
    }
  }
  return out;
}

LanguagePrior language_prior_from(const nlohmann::json& doc, const char* key,
                                  const LanguageSet& langs) {
  LanguagePrior out;
  if (!doc.contains(key)) return out;
  const auto& table = doc[key];
  if (!table.is_object()) throw ParseError("priors", 0, std::string("'") + key + "' must be an object");
  for (const auto& [l, v] : table.items()) {
    if (!v.is_number()) throw ParseError("priors", 0, std::string("'") + key + "' values must be numbers");
    out[langs.parse(l)] = v.get<double>();
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const PriorTable& priors) {
  nlohmann::json langs = nlohmann::json::array();
  for (const auto& l : priors.languages) langs.push_back(l.str());
  return {{"languages", langs},
          {"p_ret", pair_prior_json(priors.p_ret)},
          {"p_gold", pair_prior_json(priors.p_gold)},
          {"p_cult", language_prior_json(priors.p_cult)},
          {"p_db", language_prior_json(priors.p_db)},
          {"passage_len", language_prior_json(priors.passage_len)}};
}

PriorTable priors_from_json(const nlohmann::json& doc, const LanguageSet& languages) {
  if (!doc.is_object()) throw ParseError("priors", 0, "expected a JSON object");
  PriorTable t;
  if (doc.contains("languages")) {
    for (const auto& l : doc["languages"]) t.languages.push_back(languages.parse(l.get<std::string>()));
    std::sort(t.languages.begin(), t.languages.end());
  } else {
    t.languages = languages.languages();
  }
  t.p_ret = pair_prior_from(doc, "p_ret", languages);
  t.p_gold = pair_prior_from(doc, "p_gold", languages);
  t.p_cult = language_prior_from(doc, "p_cult", languages);
  t.p_db = language_prior_from(doc, "p_db", languages);
  t.passage_len = language_prior_from(doc, "passage_len", languages);
  return t;
}

PairPrior exposure_prior(std::span<const RetrievalRun> runs, const LanguageSet& languages,
                         int depth) {
  if (depth < 1) throw DomainError("exposure depth must be >= 1");
  if (runs.empty()) throw DomainError("exposure prior needs at least one run");
  const auto inventory = languages.languages();

  // Per query language: (query_id, per-language shares). Sorted before
  // summation so the result does not depend on run or query order.
  std::map<LanguageCode, std::vector<std::pair<std::string, std::vector<double>>>> rows;
  for (const auto& run : runs) {
    if (run.lists.empty()) throw DomainError("run '" + run.run_id + "' is empty");
    for (const auto& [qid, list] : run.lists) {
      const std::size_t len = std::min(list.size(), static_cast<std::size_t>(depth));
      std::map<LanguageCode, std::size_t> counts;
      for (std::size_t i = 0; i < len; ++i) ++counts[list[i].doc_lang];
      std::vector<double> shares(inventory.size(), 0.0);
      for (std::size_t j = 0; j < inventory.size(); ++j) {
        auto it = counts.find(inventory[j]);
        if (it != counts.end()) shares[j] = static_cast<double>(it->second) / static_cast<double>(len);
      }
      rows[run.query_lang].emplace_back(qid, std::move(shares));
    }
  }

  PairPrior out;
  for (auto& [lq, queries] : rows) {
    std::sort(queries.begin(), queries.end());
    std::vector<double> sums(inventory.size(), 0.0);
    for (const auto& [qid, shares] : queries) {
      for (std::size_t j = 0; j < shares.size(); ++j) sums[j] += shares[j];
    }
    for (std::size_t j = 0; j < inventory.size(); ++j) {
      out[LangPair{lq, inventory[j]}] = sums[j] / static_cast<double>(queries.size());
    }
  }
  return out;
}

QuerySets query_sets(std::span<const RetrievalRun> runs) {
  QuerySets out;
  for (const auto& run : runs) {
    auto& ids = out[run.query_lang];
    for (const auto& [qid, list] : run.lists) ids.push_back(qid);
  }
  for (auto& [lang, ids] : out) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  return out;
}

PairPrior gold_prior(const QuerySets& queries, const ProvenanceMap& provenance,
                     const SitelinkMap& sitelinks, const LanguageSet& languages) {
  const auto inventory = languages.languages();
  PairPrior out;
  for (const auto& [lq, ids] : queries) {
    for (const auto& ld : inventory) {
      std::size_t present = 0;
      for (const auto& qid : ids) {
        const GoldProvenance* gold = provenance.find(qid);
        if (!gold) continue;
        if (std::any_of(gold->gold_wpids.begin(), gold->gold_wpids.end(),
                        [&](const std::string& w) { return sitelinks.present(w, ld); })) {
          ++present;
        }
      }
      out[LangPair{lq, ld}] =
          ids.empty() ? 0.0 : static_cast<double>(present) / static_cast<double>(ids.size());
    }
  }
  return out;
}

LanguagePrior cultural_prior(std::span<const CulturalCue> cues, const LanguageSet& languages) {
  if (cues.empty()) throw DomainError("cultural prior needs at least one cue");
  LanguagePrior out;
  for (const auto& l : languages.languages()) out[l] = 0.0;
  std::map<LanguageCode, std::size_t> counts;
  for (const auto& cue : cues) {
    if (!languages.contains(cue.cultural_language)) {
      throw LanguageError("cultural label '" + cue.cultural_language.str() +
                          "' outside the language set");
    }
    ++counts[cue.cultural_language];
  }
  for (const auto& [lang, n] : counts) {
    out[lang] = static_cast<double>(n) / static_cast<double>(cues.size());
  }
  return out;
}

CorpusPrior corpus_prior(std::span<const CorpusStats> stats, LengthStatistic statistic) {
  CorpusPrior out;
  std::set<LanguageCode> seen;
  std::uint64_t total = 0;
  for (const auto& s : stats) {
    if (!seen.insert(s.lang).second) {
      throw IntegrityError("duplicate corpus statistics for '" + s.lang.str() + "'");
    }
    total += s.passage_count;
  }
  if (total == 0) throw DomainError("corpus prior: total passage count is zero");
  for (const auto& s : stats) {
    out.p_db[s.lang] = static_cast<double>(s.passage_count) / static_cast<double>(total);
    if (statistic == LengthStatistic::median) {
      out.passage_len[s.lang] = s.median_passage_length;
    } else {
      if (!s.mean_passage_length) {
        throw DomainError("mean passage length requested but missing for '" + s.lang.str() + "'");
      }
      out.passage_len[s.lang] = *s.mean_passage_length;
    }
  }
  return out;
}

std::string to_string(GoldCategory category) {
  switch (category) {
    case GoldCategory::only_en: return "only_en";
    case GoldCategory::both: return "both";
    case GoldCategory::none: return "none";
  }
  return "none";
}

GoldCategory categorize(const GoldProvenance* gold, const SitelinkMap& sitelinks,
                        const LanguageCode& query_lang) {
  if (!gold) return GoldCategory::none;
  const auto en = LanguageCode::english();
  bool in_en = false;
  bool in_local = false;
  for (const auto& w : gold->gold_wpids) {
    in_en = in_en || sitelinks.present(w, en);
    in_local = in_local || sitelinks.present(w, query_lang);
  }
  if (!in_en) return GoldCategory::none;
  if (query_lang == en) return GoldCategory::only_en;
  return in_local ? GoldCategory::both : GoldCategory::only_en;
}

GoldAvailabilityReport gold_availability_report(const ProvenanceMap& provenance,
                                                const SitelinkMap& sitelinks,
                                                std::span<const LanguageCode> query_languages) {
  GoldAvailabilityReport r;
  std::vector<LanguageCode> langs(query_languages.begin(), query_languages.end());
  std::sort(langs.begin(), langs.end());
  langs.erase(std::unique(langs.begin(), langs.end()), langs.end());

  r.questions = provenance.entries.size();
  r.total_instances = r.questions * langs.size();
  const auto en = LanguageCode::english();
  for (const auto& [qid, gold] : provenance.entries) {
    const bool in_en = std::any_of(gold.gold_wpids.begin(), gold.gold_wpids.end(),
                                   [&](const std::string& w) { return sitelinks.present(w, en); });
    if (in_en) {
      ++r.gold_available_questions;
    } else if (std::any_of(gold.gold_wpids.begin(), gold.gold_wpids.end(),
                           [&](const std::string& w) { return sitelinks.available_anywhere(w); })) {
      ++r.local_only_questions;
    }
  }

  std::size_t en_supplied = 0;
  for (const auto& lang : langs) {
    QueryLanguageAvailability row;
    row.lang = lang;
    row.instances = r.questions;
    for (const auto& [qid, gold] : provenance.entries) {
      switch (categorize(&gold, sitelinks, lang)) {
        case GoldCategory::only_en: ++row.only_en; break;
        case GoldCategory::both: ++row.both; break;
        case GoldCategory::none: ++row.none; break;
      }
    }
    en_supplied += row.only_en;
    r.per_query_language.push_back(row);
  }

  const auto ratio = [&](std::size_t n) {
    return r.total_instances == 0 ? 0.0
                                  : static_cast<double>(n) / static_cast<double>(r.total_instances);
  };
  r.per_edition.push_back({en, en_supplied, ratio(en_supplied)});
  for (const auto& row : r.per_query_language) {
    if (row.lang == en) continue;
    r.per_edition.push_back({row.lang, row.both, ratio(row.both)});
  }
  return r;
}

nlohmann::json to_json(const GoldAvailabilityReport& r) {
  nlohmann::json per_q = nlohmann::json::array();
  for (const auto& row : r.per_query_language) {
    per_q.push_back({{"query_lang", row.lang.str()},
                     {"instances", row.instances},
                     {"only_en", row.only_en},
                     {"both", row.both},
                     {"none", row.none}});
  }
  nlohmann::json per_e = nlohmann::json::array();
  for (const auto& row : r.per_edition) {
    per_e.push_back({{"lang", row.lang.str()}, {"q", row.instances}, {"ratio", row.ratio}});
  }
  return {{"questions", r.questions},
          {"gold_available_questions", r.gold_available_questions},
          {"local_only_questions", r.local_only_questions},
          {"total_instances", r.total_instances},
          {"per_query_language", per_q},
          {"gold_availability", per_e}};
}

}  // namespace delp
