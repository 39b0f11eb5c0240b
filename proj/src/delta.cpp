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

#include "delp/delta.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "delp/error.hpp"
#include "delp/text.hpp"

namespace delp {
namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += sep;
    out += item;
  }
  return out;
}

std::vector<std::string> cleaned(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    auto t = text::trim(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::set<std::string> normalized_set(const std::vector<std::string>& items) {
  std::set<std::string> out;
  for (const auto& item : items) {
    auto t = text::trim(text::normalize(item));
    if (!t.empty()) out.insert(std::move(t));
  }
  return out;
}

}  // namespace

std::string glob_label() { return "[GLOB]"; }
std::string local_label(const LanguageCode& lang) { return "[LOCAL:" + lang.str() + "]"; }
std::string title_bridge_label() { return "[TITLE_BRIDGE]"; }
std::string local_aliases_label(const LanguageCode& lang) { return "[ALIASES:" + lang.str() + "]"; }
std::string glob_aliases_label() { return "[ALIASES:GLOB]"; }
std::string locale_hint_label() { return "[LOCALE_HINT]"; }

RepetitionPlan repetition_policy(bool culture_specific, double confidence,
                                 const Thresholds& thresholds) {
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw DomainError("confidence must lie in [0, 1], got " + std::to_string(confidence));
  }
  if (!(thresholds.tau_low < thresholds.tau_high)) {
    throw DomainError("tau_low must be below tau_high");
  }
  RepetitionPlan plan;
  plan.thresholds = thresholds;
  if (culture_specific) {
    plan.r_local = 1 + (confidence >= thresholds.tau_low ? 1 : 0) +
                   (confidence >= thresholds.tau_high ? 1 : 0);
    plan.r_glob = 1 + (confidence < thresholds.tau_low ? 1 : 0);
    plan.boost = confidence >= thresholds.tau_boost;
  } else {
    plan.r_local = 1;
    plan.r_glob = 2;
    plan.boost = false;
  }
  return plan;
}

DedupResult dedup_bundle(const CueBundle& bundle, const LanguageCode& query_lang) {
  DedupResult out;
  out.bundle = bundle;
  auto& b = out.bundle;
  if (b.en_title && b.local_title &&
      text::trim(text::normalize(*b.en_title)) == text::trim(text::normalize(*b.local_title))) {
    b.local_title.reset();
    out.single_title_bridge = true;
  }
  const auto en_set = normalized_set(b.aliases_en);
  if (!en_set.empty() && en_set == normalized_set(b.aliases_local)) {
    b.aliases_local.clear();
    out.aliases_local_dropped = true;
  }
  out.mandatory_local = query_lang != LanguageCode::english();
  return out;
}

SegmentList build_segments(const std::string& q_glob, const std::string& q_local,
                           const LanguageCode& query_lang, const DedupResult& dedup,
                           const CulturalCue& cue, const RepetitionPlan& plan) {
  const auto glob = text::trim(q_glob);
  const auto local = text::trim(q_local);
  const bool english = query_lang == LanguageCode::english();
  if (glob.empty()) throw DomainError("global pivot query is empty");
  if (!english && local.empty()) throw DomainError("local query is empty for a non-English query");

  SegmentList out;
  auto& segs = out.segments;
  if (english) {
    segs.push_back({glob_label(), glob, std::max(plan.r_local, plan.r_glob)});
  } else {
    segs.push_back({glob_label(), glob, plan.r_glob});
    segs.push_back({local_label(query_lang), local, plan.r_local});
  }

  const int anchor_copies = plan.boost ? 2 : 1;
  const auto& b = dedup.bundle;
  std::vector<std::string> titles;
  if (b.en_title) titles.push_back(text::trim(*b.en_title));
  if (b.local_title) titles.push_back(text::trim(*b.local_title));
  titles = cleaned(titles);
  const bool has_title = !titles.empty();
  if (has_title) {
    segs.push_back({title_bridge_label(), join(titles, " / "),
                    dedup.single_title_bridge ? 1 : anchor_copies});
  }

  const auto local_aliases = cleaned(b.aliases_local);
  if (!local_aliases.empty()) {
    segs.push_back({local_aliases_label(query_lang), join(local_aliases, ", "), anchor_copies});
  }
  const auto glob_aliases = cleaned(b.aliases_en);
  if (!glob_aliases.empty()) {
    segs.push_back({glob_aliases_label(), join(glob_aliases, ", "), 1});
  }

  const auto hint = cleaned({cue.country_or_region, b.extra_disambig});
  if (!hint.empty()) segs.push_back({locale_hint_label(), join(hint, " "), 1});

  out.degenerate_bundle = !has_title && local_aliases.empty() && glob_aliases.empty() && hint.empty();
  return out;
}

FusedQuery fuse(std::span<const Segment> segments, const FuseOptions& options) {
  if (segments.empty()) throw DomainError("fuse needs at least one segment");
  if (options.max_len < 1) throw DomainError("max_len must be >= 1");

  std::vector<std::string> copies;
  std::ptrdiff_t first_local = -1;
  for (const auto& s : segments) {
    if (s.repeat < 1) throw DomainError("segment " + s.label + " has repeat < 1");
    const bool is_local = s.label.rfind("[LOCAL:", 0) == 0;
    for (int i = 0; i < s.repeat; ++i) {
      if (is_local && first_local < 0) first_local = static_cast<std::ptrdiff_t>(copies.size());
      copies.push_back(s.render());
    }
  }

  FusedQuery out;
  out.segments.assign(segments.begin(), segments.end());
  out.max_len = options.max_len;

  std::string joined = join(copies, options.delimiter);
  if (text::length(joined) <= options.max_len) {
    out.text = std::move(joined);
    return out;
  }
  out.truncated = true;

  if (first_local >= 0) {
    std::size_t start = 0;
    for (std::ptrdiff_t i = 0; i < first_local; ++i) {
      start += text::length(copies[static_cast<std::size_t>(i)]) + text::length(options.delimiter);
    }
    const std::size_t end = start + text::length(copies[static_cast<std::size_t>(first_local)]);
    if (end > options.max_len) {
      std::rotate(copies.begin(), copies.begin() + first_local, copies.begin() + first_local + 1);
      joined = join(copies, options.delimiter);
      out.local_guard_applied = true;
    }
  }
  out.text = text::truncate(joined, options.max_len);
  return out;
}

DeltaResult delta_transform(const std::string& q_local, const LanguageCode& query_lang,
                            const CulturalCue& cue, const CueBundle& bundle,
                            const std::string& q_glob, const DeltaConfig& config) {
  DeltaResult out;
  out.dedup = dedup_bundle(bundle, query_lang);
  out.plan = repetition_policy(cue.is_culture_specific, cue.confidence, config.thresholds);
  auto segs = build_segments(q_glob, q_local, query_lang, out.dedup, cue, out.plan);
  out.degenerate_bundle = segs.degenerate_bundle;
  out.fused = fuse(segs.segments, config.fuse);
  return out;
}

nlohmann::json to_json(const RepetitionPlan& plan) {
  return {{"r_local", plan.r_local}, {"r_glob", plan.r_glob}, {"boost", plan.boost}};
}

}  // namespace delp
