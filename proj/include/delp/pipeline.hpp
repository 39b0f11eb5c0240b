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
#include <string>
#include <vector>

#include <json.hpp>

#include "delp/config.hpp"
#include "delp/error.hpp"

namespace delp {

// Input layout of a pipeline run. Run directories hold one JSONL run per
// query language (see parse_run_dir).
struct PipelineInputs {
  std::filesystem::path init_runs;
  std::filesystem::path rerank_runs;
  std::filesystem::path provenance;
  std::filesystem::path sitelinks;
  std::filesystem::path corpus_stats;
  std::filesystem::path cue_cache;
  std::filesystem::path fuse_queries;  // JSONL {query_id, lang, text}
  std::filesystem::path output_dir;

  // The conventional layout below `dir`: init/, rerank/, provenance.jsonl,
  // sitelinks.jsonl, corpus_stats.jsonl, cues.jsonl, queries.jsonl.
  static PipelineInputs in_directory(const std::filesystem::path& dir,
                                     const std::filesystem::path& output_dir);
};

struct ArtifactRecord {
  std::string name;
  std::string path;  // relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct PipelineReport {
  std::vector<ArtifactRecord> artifacts;
  std::filesystem::path manifest_path;
  std::size_t network_calls = 0;
};

// A stage failed. The original error's category is kept so exit codes are
// unaffected.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.category(), "stage '" + stage + "': " + cause.what()), stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

inline constexpr const char* kPipelineStages[] = {"priors",   "mlrs",        "calibrate",
                                                  "correlate", "gold-report", "fuse"};

// priors -> mlrs -> calibrate -> correlate -> gold-report -> fuse. Each stage
// writes one artifact; manifest.json lists them with SHA-256 digests. On
// failure the manifest records the failed stage, artifacts already written
// are marked stale, and StageError is thrown. The config is validated before
// any file is touched. Cue lookups are served by the cache; an endpoint is
// consulted only for misses when `client` is given.
PipelineReport run_pipeline(const Config& config, const PipelineInputs& inputs,
                            const ChatClient* client = nullptr);

// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace delp
