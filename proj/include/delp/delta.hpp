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

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "delp/cues.hpp"
#include "delp/language.hpp"

namespace delp {

struct Thresholds {
  double tau_low = 0.6;
  double tau_high = 0.85;
  double tau_boost = 0.7;
};

struct RepetitionPlan {
  int r_local = 1;  // copies of [LOCAL:L_q], 1..3
  int r_glob = 2;   // copies of [GLOB], 1..2
  bool boost = false;
  Thresholds thresholds;

  bool operator==(const RepetitionPlan& o) const {
    return r_local == o.r_local && r_glob == o.r_glob && boost == o.boost;
  }
};

// Culture-specific queries (y) gain one local copy at c >= tau_low and another
// at c >= tau_high, and keep a second [GLOB] copy only below tau_low. Other
// queries get one local and two global copies. boost = y && c >= tau_boost.
// Throws DomainError for c outside [0, 1] or tau_low >= tau_high.
RepetitionPlan repetition_policy(bool culture_specific, double confidence,
                                 const Thresholds& thresholds = {});

struct DedupResult {
  CueBundle bundle;
  bool single_title_bridge = false;    // titles identical; local title cleared
  bool aliases_local_dropped = false;  // alias sets equal; local block cleared
  bool mandatory_local = false;        // non-English query: [LOCAL] must survive
};

DedupResult dedup_bundle(const CueBundle& bundle, const LanguageCode& query_lang);

struct Segment {
  std::string label;  // e.g. "[LOCAL:ko]"
  std::string content;
  int repeat = 1;

  std::string render() const { return label + " " + content; }
  bool operator==(const Segment&) const = default;
};

struct SegmentList {
  std::vector<Segment> segments;
  bool degenerate_bundle = false;  // no title, alias or hint to add
};

std::string glob_label();
std::string local_label(const LanguageCode& lang);
std::string title_bridge_label();
std::string local_aliases_label(const LanguageCode& lang);
std::string glob_aliases_label();
std::string locale_hint_label();

// Canonical order: [GLOB], [LOCAL:L_q], [TITLE_BRIDGE], [ALIASES:L_q],
// [ALIASES:GLOB], [LOCALE_HINT]. Empty segments are omitted. English queries
// emit [GLOB] alone with max(r_local, r_glob) copies.
SegmentList build_segments(const std::string& q_glob, const std::string& q_local,
                           const LanguageCode& query_lang, const DedupResult& dedup,
                           const CulturalCue& cue, const RepetitionPlan& plan);

struct FuseOptions {
  std::string delimiter = " | ";
  std::size_t max_len = 900;  // Unicode characters
};

struct FusedQuery {
  std::string text;
  std::vector<Segment> segments;
  std::size_t max_len = 900;
  bool truncated = false;
  bool local_guard_applied = false;
};

// Renders every copy as "LABEL content", keeps copies adjacent, joins them
// with the delimiter and truncates to max_len characters. When the cut would
// leave no complete [LOCAL:..] copy, one local copy is moved to the front
// before truncating.
FusedQuery fuse(std::span<const Segment> segments, const FuseOptions& options = {});

struct DeltaConfig {
  Thresholds thresholds;
  FuseOptions fuse;
};

struct DeltaResult {
  FusedQuery fused;
  RepetitionPlan plan;
  DedupResult dedup;
  bool degenerate_bundle = false;
};

// dedup_bundle -> repetition_policy -> build_segments -> fuse.
DeltaResult delta_transform(const std::string& q_local, const LanguageCode& query_lang,
                            const CulturalCue& cue, const CueBundle& bundle,
                            const std::string& q_glob, const DeltaConfig& config = {});

nlohmann::json to_json(const RepetitionPlan& plan);

}  // namespace delp
