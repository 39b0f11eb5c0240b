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

#include <atomic>
#include <compare>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <semaphore>
#include <shared_mutex>
#include <string>

#include <json.hpp>

#include "delp/cues.hpp"
#include "delp/language.hpp"

namespace delp {

enum class CueKind { cultural, bundle, translation };

std::string to_string(CueKind kind);
CueKind cue_kind_from(const std::string& s);

struct CacheKey {
  std::string query_id;
  CueKind kind = CueKind::cultural;

  auto operator<=>(const CacheKey&) const = default;
};

// Validated cue payloads keyed by (query_id, kind). Backed by an append-only
// JSONL file of {"key": {...}, "payload": {...}} records in which the last
// record for a key wins. Thread-safe.
class CueCache {
 public:
  // In-memory cache.
  explicit CueCache(const LanguageSet& languages = LanguageSet::standard());
  // Loads `path` if it exists; put() appends to it.
  explicit CueCache(std::filesystem::path path,
                    const LanguageSet& languages = LanguageSet::standard());

  CueCache(const CueCache&) = delete;
  CueCache& operator=(const CueCache&) = delete;

  std::optional<nlohmann::json> get(const CacheKey& key) const;
  // Validates against the schema of key.kind; throws ValidationError.
  void put(const CacheKey& key, const nlohmann::json& payload);

  std::size_t size() const;
  std::map<CacheKey, nlohmann::json> snapshot() const;
  const LanguageSet& languages() const { return languages_; }

 private:
  void validate(CueKind kind, const nlohmann::json& payload) const;

  LanguageSet languages_;
  std::optional<std::filesystem::path> path_;
  mutable std::shared_mutex mutex_;
  std::map<CacheKey, nlohmann::json> entries_;
};

// OpenAI-compatible chat-completions endpoint.
struct EndpointConfig {
  std::string url;      // e.g. https://openrouter.ai/api/v1/chat/completions
  std::string api_key;
  std::string model;
  int max_retries = 3;  // attempts after the first failure
  int timeout_seconds = 60;
  int retry_backoff_ms = 250;
  std::size_t max_concurrency = 4;
  int alias_limit = 3;

  bool configured() const { return !url.empty() && !model.empty(); }
};

// DELP_LLM_ENDPOINT, DELP_LLM_API_KEY, DELP_LLM_MODEL.
EndpointConfig endpoint_from_env();

class ChatClient {
 public:
  explicit ChatClient(EndpointConfig config);
  ~ChatClient();

  // Sends a system+user exchange at temperature 0 and parses the assistant
  // message as a single JSON object. Transport failures, 429 and 5xx are
  // retried; exhaustion raises TransportError. A reply that is not one JSON
  // object raises ValidationError.
  nlohmann::json complete_json(const std::string& system, const std::string& user) const;

  // The request body complete_json would send.
  nlohmann::json request_body(const std::string& system, const std::string& user) const;

  const EndpointConfig& config() const { return config_; }
  std::size_t requests_sent() const { return requests_.load(); }

 private:
  EndpointConfig config_;
  std::string scheme_host_port_;
  std::string path_;
  std::unique_ptr<std::counting_semaphore<64>> slots_;
  mutable std::atomic<std::size_t> requests_{0};
};

// Resolves cues from the cache, falling back to the endpoint when one is
// configured. Fetched payloads are validated and written back to the cache.
class CueResolver {
 public:
  CueResolver(CueCache& cache, const ChatClient* client = nullptr);

  CulturalCue get_cultural_cue(const std::string& query_en, const std::string& query_id);
  CueBundle get_bundle(const std::string& q_en, const std::string& q_orig,
                       const LanguageCode& query_lang, const CulturalCue& cue,
                       const std::string& query_id);
  // English queries are returned unchanged without touching cache or network.
  std::string get_translation(const std::string& q_local, const LanguageCode& query_lang,
                              const std::string& query_id);

  std::size_t network_calls() const { return network_calls_.load(); }

 private:
  nlohmann::json resolve(const CacheKey& key, const std::string& system, const std::string& user);

  CueCache& cache_;
  const ChatClient* client_;
  std::atomic<std::size_t> network_calls_{0};
};

}  // namespace delp
