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

#include "delp/cueclient.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

#include <httplib.h>

#include "delp/error.hpp"
#include "delp/io.hpp"
#include "delp/prompts.hpp"

namespace delp {

std::string to_string(CueKind kind) {
  switch (kind) {
    case CueKind::cultural: return "cultural";
    case CueKind::bundle: return "bundle";
    case CueKind::translation: return "translation";
  }
  return "cultural";
}

CueKind cue_kind_from(const std::string& s) {
  if (s == "cultural") return CueKind::cultural;
  if (s == "bundle") return CueKind::bundle;
  if (s == "translation") return CueKind::translation;
  throw ParseError("cue cache", 0, "unknown cue kind '" + s + "'");
}

// ---------------------------------------------------------------------------
// CueCache

CueCache::CueCache(const LanguageSet& languages) : languages_(languages) {}

CueCache::CueCache(std::filesystem::path path, const LanguageSet& languages)
    : languages_(languages), path_(std::move(path)) {
  if (!std::filesystem::exists(*path_)) return;
  const std::string source = path_->string();
  for_each_jsonl(*path_, [&](const nlohmann::json& rec, std::size_t line) {
    auto key_it = rec.find("key");
    auto payload_it = rec.find("payload");
    if (key_it == rec.end() || !key_it->is_object() || payload_it == rec.end()) {
      throw ParseError(source, line, "cache record needs 'key' and 'payload'");
    }
    CacheKey key{field::string(*key_it, "query_id", source, line),
                 cue_kind_from(field::string(*key_it, "kind", source, line))};
    validate(key.kind, *payload_it);
    entries_[key] = *payload_it;
  });
}

void CueCache::validate(CueKind kind, const nlohmann::json& payload) const {
  switch (kind) {
    case CueKind::cultural: parse_cultural_cue(payload, languages_); break;
    case CueKind::bundle: parse_bundle(payload); break;
    case CueKind::translation: parse_translation(payload); break;
  }
}

std::optional<nlohmann::json> CueCache::get(const CacheKey& key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void CueCache::put(const CacheKey& key, const nlohmann::json& payload) {
  validate(key.kind, payload);
  std::unique_lock lock(mutex_);
  if (path_) {
    if (path_->has_parent_path()) std::filesystem::create_directories(path_->parent_path());
    std::ofstream out(*path_, std::ios::app | std::ios::binary);
    if (!out) throw ParseError(path_->string(), 0, "cannot append to cue cache");
    const nlohmann::json rec = {{"key", {{"query_id", key.query_id}, {"kind", to_string(key.kind)}}},
                                {"payload", payload}};
    out << rec.dump() << '\n';
  }
  entries_[key] = payload;
}

std::size_t CueCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::map<CacheKey, nlohmann::json> CueCache::snapshot() const {
  std::shared_lock lock(mutex_);
  return entries_;
}

// ---------------------------------------------------------------------------
// ChatClient

EndpointConfig endpoint_from_env() {
  EndpointConfig c;
  if (const char* v = std::getenv("DELP_LLM_ENDPOINT")) c.url = v;
  if (const char* v = std::getenv("DELP_LLM_API_KEY")) c.api_key = v;
  if (const char* v = std::getenv("DELP_LLM_MODEL")) c.model = v;
  return c;
}

ChatClient::ChatClient(EndpointConfig config) : config_(std::move(config)) {
  if (!config_.configured()) throw ConfigError("chat endpoint needs a URL and a model id");
  const auto scheme_end = config_.url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint URL lacks a scheme: " + config_.url);
  const auto path_start = config_.url.find('/', scheme_end + 3);
  scheme_host_port_ = config_.url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : config_.url.substr(path_start);
  const auto scheme = config_.url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") throw ConfigError("unsupported URL scheme '" + scheme + "'");
  if (config_.max_concurrency < 1 || config_.max_concurrency > 64) {
    throw ConfigError("endpoint concurrency must lie in [1, 64]");
  }
  if (config_.max_retries < 0) throw ConfigError("max_retries must be >= 0");
  slots_ = std::make_unique<std::counting_semaphore<64>>(static_cast<std::ptrdiff_t>(config_.max_concurrency));
}

ChatClient::~ChatClient() = default;

nlohmann::json ChatClient::request_body(const std::string& system, const std::string& user) const {
  return {{"model", config_.model},
          {"temperature", 0},
          {"messages",
           nlohmann::json::array({{{"role", "system"}, {"content", system}},
                                  {{"role", "user"}, {"content", user}}})}};
}

nlohmann::json ChatClient::complete_json(const std::string& system, const std::string& user) const {
  struct Slot {
    std::counting_semaphore<64>& s;
    explicit Slot(std::counting_semaphore<64>& sem) : s(sem) { s.acquire(); }
    ~Slot() { s.release(); }
  } slot(*slots_);

  const std::string body = request_body(system, user).dump();
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(config_.retry_backoff_ms * attempt));
    }
    httplib::Client cli(scheme_host_port_);
    cli.set_connection_timeout(config_.timeout_seconds, 0);
    cli.set_read_timeout(config_.timeout_seconds, 0);
    cli.set_write_timeout(config_.timeout_seconds, 0);
    ++requests_;
    auto res = cli.Post(path_, headers, body, "application/json");
    if (!res) {
      last_error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw TransportError("chat endpoint returned HTTP " + std::to_string(res->status) + ": " +
                               res->body.substr(0, 200),
                           false);
    }
    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error&) {
      throw ValidationError("chat endpoint reply is not JSON", res->body);
    }
    const auto* content = reply.is_object() && reply.contains("choices") && reply["choices"].is_array() &&
                                  !reply["choices"].empty() && reply["choices"][0].contains("message")
                              ? &reply["choices"][0]["message"]
                              : nullptr;
    if (!content || !content->contains("content") || !(*content)["content"].is_string()) {
      throw ValidationError("chat reply lacks choices[0].message.content", res->body);
    }
    const auto text = (*content)["content"].get<std::string>();
    nlohmann::json payload;
    try {
      payload = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
      throw ValidationError("assistant message is not a single JSON object", text);
    }
    if (!payload.is_object()) throw ValidationError("assistant message is not a JSON object", text);
    return payload;
  }
  throw TransportError("chat endpoint unreachable after " + std::to_string(config_.max_retries + 1) +
                           " attempts: " + last_error,
                       true);
}

// ---------------------------------------------------------------------------
// CueResolver

CueResolver::CueResolver(CueCache& cache, const ChatClient* client) : cache_(cache), client_(client) {}

nlohmann::json CueResolver::resolve(const CacheKey& key, const std::string& system,
                                    const std::string& user) {
  if (auto hit = cache_.get(key)) return *hit;
  if (!client_) {
    throw ConfigError("no cached " + to_string(key.kind) + " cue for query '" + key.query_id +
                      "' and no endpoint configured");
  }
  ++network_calls_;
  auto payload = client_->complete_json(system, user);
  cache_.put(key, payload);
  return payload;
}

CulturalCue CueResolver::get_cultural_cue(const std::string& query_en, const std::string& query_id) {
  auto payload = resolve({query_id, CueKind::cultural}, prompts::cultural_classifier_system(),
                         prompts::cultural_classifier_user(query_en));
  return parse_cultural_cue(payload, cache_.languages());
}

CueBundle CueResolver::get_bundle(const std::string& q_en, const std::string& q_orig,
                                  const LanguageCode& query_lang, const CulturalCue& cue,
                                  const std::string& query_id) {
  const int aliases = client_ ? client_->config().alias_limit : 3;
  auto payload = resolve({query_id, CueKind::bundle}, prompts::bundle_system(query_lang, aliases),
                         prompts::bundle_user(q_en, q_orig, query_lang, cue));
  return parse_bundle(payload);
}

std::string CueResolver::get_translation(const std::string& q_local, const LanguageCode& query_lang,
                                         const std::string& query_id) {
  if (query_lang == LanguageCode::english()) return q_local;
  auto payload = resolve({query_id, CueKind::translation}, prompts::translation_system(query_lang),
                         prompts::translation_user(query_lang, q_local));
  return parse_translation(payload);
}

}  // namespace delp
