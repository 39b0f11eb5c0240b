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

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <functional>
#include <thread>

#include "delp/cueclient.hpp"
#include "delp/error.hpp"
#include "delp/fixtures.hpp"
#include "delp/io.hpp"

// After Eigen: <resolv.h> defines an `_res` macro.
#include <httplib.h>

using namespace delp;
using nlohmann::json;

namespace {

LanguageCode L(const char* c) { return LanguageSet::standard().parse(c); }

json cue_payload(const char* lang = "ko", double conf = 0.9) {
  return {{"country_or_region", "South Korea"},
          {"cultural_language", lang},
          {"is_culture_specific", true},
          {"confidence", conf},
          {"rationale", "r"}};
}

std::string chat_reply(const json& payload) {
  return json{{"choices", {{{"message", {{"role", "assistant"}, {"content", payload.dump()}}}}}}}.dump();
}

// Local chat endpoint whose reply is chosen per request by `handler`.
class MockServer {
 public:
  using Handler = std::function<void(int attempt, const httplib::Request&, httplib::Response&)>;

  explicit MockServer(Handler handler) : handler_(std::move(handler)) {
    server_.Post("/v1/chat", [this](const httplib::Request& req, httplib::Response& res) {
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      handler_(hits_++, req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockServer() {
    server_.stop();
    thread_.join();
  }

  EndpointConfig endpoint() const {
    EndpointConfig c;
    c.url = "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat";
    c.model = "mock-model";
    c.api_key = "secret";
    c.retry_backoff_ms = 1;
    c.timeout_seconds = 5;
    return c;
  }
  int hits() const { return hits_.load(); }
  const std::string& last_body() const { return last_body_; }
  const std::string& last_auth() const { return last_auth_; }

 private:
  Handler handler_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  std::string last_body_;
  std::string last_auth_;
};

std::filesystem::path temp_file(const char* name) {
  auto p = std::filesystem::temp_directory_path() / "delp-cueclient-test" / name;
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST(CueCache, LastRecordWins) {
  const auto path = temp_file("last.jsonl");
  const json key = {{"query_id", "q1"}, {"kind", "cultural"}};
  write_file(path, json{{"key", key}, {"payload", cue_payload("ko")}}.dump() + "\n" +
                       json{{"key", key}, {"payload", cue_payload("ja")}}.dump() + "\n");
  CueCache cache(path);
  EXPECT_EQ(cache.size(), 1u);
  EXPECT_EQ((*cache.get({"q1", CueKind::cultural}))["cultural_language"], "ja");
  EXPECT_FALSE(cache.get({"q1", CueKind::bundle}));
}

TEST(CueCache, InvalidRecordsRejected) {
  const auto path = temp_file("bad.jsonl");
  write_file(path, R"({"key":{"query_id":"q","kind":"cultural"},"payload":{"confidence":2}})" "\n");
  EXPECT_THROW(CueCache{path}, ValidationError);
  write_file(path, R"({"key":{"query_id":"q","kind":"mystery"},"payload":{}})" "\n");
  EXPECT_THROW(CueCache{path}, ParseError);
  CueCache mem;
  EXPECT_THROW(mem.put({"q", CueKind::translation}, json{{"translation", ""}}), ValidationError);
}

TEST(CueCache, PutAppendsAndReplays) {
  const auto path = temp_file("replay.jsonl");
  {
    CueCache cache(path);
    cache.put({"q", CueKind::translation}, {{"translation", "hello"}});
    cache.put({"q", CueKind::cultural}, cue_payload());
  }
  CueCache again(path);
  EXPECT_EQ(again.size(), 2u);
  CueResolver r(again);
  EXPECT_EQ(r.get_translation("안녕", L("ko"), "q"), "hello");
  EXPECT_EQ(r.network_calls(), 0u);
}

TEST(CueResolver, MissWithoutEndpointIsConfigError) {
  CueCache cache;
  CueResolver r(cache);
  try {
    r.get_cultural_cue("what is kimchi", "q");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(exit_code(e.category()), 2);
  }
}

TEST(CueResolver, EnglishTranslationShortCircuits) {
  CueCache cache;
  CueResolver r(cache);
  EXPECT_EQ(r.get_translation("what is kimchi", L("en"), "q"), "what is kimchi");
  EXPECT_EQ(cache.size(), 0u);
}

TEST(ChatClient, ConfigChecks) {
  EXPECT_THROW(ChatClient(EndpointConfig{}), ConfigError);
  EndpointConfig c;
  c.url = "ftp://x/y";
  c.model = "m";
  EXPECT_THROW(ChatClient{c}, ConfigError);
  c.url = "http://localhost/v1";
  c.max_concurrency = 0;
  EXPECT_THROW(ChatClient{c}, ConfigError);
}

TEST(ChatClient, RequestBodyAtTemperatureZero) {
  EndpointConfig c;
  c.url = "http://localhost/v1";
  c.model = "m";
  const auto body = ChatClient(c).request_body("sys", "usr");
  EXPECT_EQ(body["temperature"], 0);
  EXPECT_EQ(body["model"], "m");
  EXPECT_EQ(body["messages"][0]["role"], "system");
  EXPECT_EQ(body["messages"][0]["content"], "sys");
  EXPECT_EQ(body["messages"][1]["role"], "user");
  EXPECT_EQ(body["messages"][1]["content"], "usr");
}

TEST(ChatClient, SuccessIsCachedOnce) {
  MockServer server([](int, const httplib::Request&, httplib::Response& res) {
    res.set_content(chat_reply(cue_payload("fr", 0.7)), "application/json");
  });
  ChatClient client(server.endpoint());
  CueCache cache;
  CueResolver r(cache, &client);
  const auto cue = r.get_cultural_cue("what is the capital of france", "q");
  EXPECT_EQ(cue.cultural_language.str(), "fr");
  r.get_cultural_cue("what is the capital of france", "q");
  EXPECT_EQ(server.hits(), 1);
  EXPECT_EQ(r.network_calls(), 1u);
  EXPECT_EQ(server.last_auth(), "Bearer secret");
  const auto sent = json::parse(server.last_body());
  EXPECT_EQ(sent["temperature"], 0);
  EXPECT_EQ(sent["messages"][1]["content"], "Query: what is the capital of france");
}

TEST(ChatClient, RetriesOn429And5xx) {
  MockServer server([](int attempt, const httplib::Request&, httplib::Response& res) {
    if (attempt == 0) {
      res.status = 429;
    } else if (attempt == 1) {
      res.status = 503;
    } else {
      res.set_content(chat_reply({{"translation", "when"}}), "application/json");
    }
  });
  ChatClient client(server.endpoint());
  EXPECT_EQ(client.complete_json("s", "u")["translation"], "when");
  EXPECT_EQ(server.hits(), 3);
}

TEST(ChatClient, GivesUpAfterRetries) {
  MockServer server([](int, const httplib::Request&, httplib::Response& res) { res.status = 500; });
  auto cfg = server.endpoint();
  cfg.max_retries = 2;
  ChatClient client(cfg);
  try {
    client.complete_json("s", "u");
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_TRUE(e.retryable());
    EXPECT_EQ(exit_code(e.category()), 4);
  }
  EXPECT_EQ(server.hits(), 3);
}

TEST(ChatClient, ClientErrorIsNotRetried) {
  MockServer server([](int, const httplib::Request&, httplib::Response& res) { res.status = 401; });
  ChatClient client(server.endpoint());
  EXPECT_THROW(client.complete_json("s", "u"), TransportError);
  EXPECT_EQ(server.hits(), 1);
}

TEST(ChatClient, InvalidRepliesAreValidationErrors) {
  MockServer server([](int attempt, const httplib::Request&, httplib::Response& res) {
    switch (attempt) {
      case 0: res.set_content("not json", "application/json"); break;
      case 1: res.set_content(R"({"choices":[]})", "application/json"); break;
      case 2: res.set_content(chat_reply(json("plain string")), "application/json"); break;
      default: res.set_content(chat_reply({{"country_or_region", "x"}}), "application/json"); break;
    }
  });
  ChatClient client(server.endpoint());
  EXPECT_THROW(client.complete_json("s", "u"), ValidationError);
  EXPECT_THROW(client.complete_json("s", "u"), ValidationError);
  EXPECT_THROW(client.complete_json("s", "u"), ValidationError);
  CueCache cache;
  CueResolver r(cache, &client);
  EXPECT_THROW(r.get_cultural_cue("q", "q"), ValidationError);
  EXPECT_EQ(cache.size(), 0u);
}

TEST(ChatClient, BundleAndTranslationPrompts) {
  MockServer server([](int, const httplib::Request& req, httplib::Response& res) {
    const auto body = json::parse(req.body);
    const auto sys = body["messages"][0]["content"].get<std::string>();
    if (sys.find("professional translator") != std::string::npos) {
      res.set_content(chat_reply({{"translation", "when was the last time south korea had the olympics"}}),
                      "application/json");
    } else {
      res.set_content(chat_reply(to_json(fixtures::korean_olympics().bundle)), "application/json");
    }
  });
  auto cfg = server.endpoint();
  cfg.alias_limit = 2;
  ChatClient client(cfg);
  CueCache cache;
  CueResolver r(cache, &client);
  const auto k = fixtures::korean_olympics();
  EXPECT_EQ(r.get_translation(k.q_local, k.lang, k.query_id), k.q_glob);
  EXPECT_NE(server.last_body().find("Korean to English"), std::string::npos);
  EXPECT_EQ(r.get_bundle(k.q_glob, k.q_local, k.lang, k.cue, k.query_id), k.bundle);
  EXPECT_NE(server.last_body().find("0..2 items each"), std::string::npos);
  EXPECT_EQ(cache.size(), 2u);
}
