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

#include "delp/config.hpp"
#include "delp/error.hpp"

using namespace delp;

TEST(Config, Defaults) {
  const Config c;
  EXPECT_DOUBLE_EQ(c.lambda, 1.0);
  EXPECT_DOUBLE_EQ(c.epsilon, 1e-6);
  EXPECT_DOUBLE_EQ(c.thresholds.tau_low, 0.6);
  EXPECT_DOUBLE_EQ(c.thresholds.tau_high, 0.85);
  EXPECT_DOUBLE_EQ(c.thresholds.tau_boost, 0.7);
  EXPECT_EQ(c.max_len, 900u);
  EXPECT_EQ(c.depth, 50);
  EXPECT_EQ(c.delimiter, " | ");
  EXPECT_EQ(c.language_set().size(), 13u);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, ParsesKeysCommentsAndQuotes) {
  const auto c = parse_config_text(
      "# calibration\n"
      "lambda = 0.5\n"
      "tau_low=0.5   # inline comment\n"
      "delimiter = \" # \"\n"
      "encoder_id = \"enc \\\"x\\\"\"\n"
      "languages = en, ko ,ja\n"
      "free_intercept = true\n"
      "length_stat = mean\n"
      "\n");
  EXPECT_DOUBLE_EQ(c.lambda, 0.5);
  EXPECT_DOUBLE_EQ(c.thresholds.tau_low, 0.5);
  EXPECT_EQ(c.delimiter, " # ");
  EXPECT_EQ(c.encoder_id, "enc \"x\"");
  EXPECT_EQ(c.languages, (std::vector<std::string>{"en", "ko", "ja"}));
  EXPECT_TRUE(c.free_intercept);
  EXPECT_FALSE(c.calibration_options().regularize_intercept);
  EXPECT_EQ(c.length_stat, LengthStatistic::mean);
  EXPECT_EQ(c.language_set().size(), 3u);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config_text("nonsense\n"), ConfigError);
  EXPECT_THROW(parse_config_text("unknown_key = 1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("lambda = abc\n"), ConfigError);
  EXPECT_THROW(parse_config_text("lambda = -1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("epsilon = 0\n"), ConfigError);
  EXPECT_THROW(parse_config_text("max_len = 0\n"), ConfigError);
  EXPECT_THROW(parse_config_text("free_intercept = maybe\n"), ConfigError);
  EXPECT_THROW(parse_config_text("endpoint_max_concurrency = 65\n"), ConfigError);
  EXPECT_THROW(parse_config_text("languages = en, xx\n"), ConfigError);
  EXPECT_NO_THROW(parse_config_text("languages = en, xx\nallow_extra_langs = true\n"));
  EXPECT_THROW(load_config("/nonexistent/delp.conf"), ConfigError);
}

TEST(Config, TauOrdering) {
  EXPECT_THROW(parse_config_text("tau_low = 0.9\n"), ConfigError);
  EXPECT_THROW(parse_config_text("tau_low = 0.85\n"), ConfigError);
  EXPECT_THROW(parse_config_text("tau_high = 1.5\n"), ConfigError);
}

TEST(Config, OverridesApplyAfterFile) {
  auto c = parse_config_text("lambda = 2\n");
  apply_config_value(c, "lambda", "3");
  apply_config_value(c, "depth", "20");
  EXPECT_DOUBLE_EQ(c.lambda, 3.0);
  EXPECT_EQ(c.depth, 20);
  EXPECT_THROW(apply_config_value(c, "depth", "0"), ConfigError);
}

TEST(Config, RenderRoundTrips) {
  auto c = parse_config_text("lambda = 0.25\ndelimiter = \" || \"\nlanguages = en,ko\nglobal_normalizer = yes\n");
  c.endpoint.model = "m";
  const auto again = parse_config_text(render_config(c));
  EXPECT_EQ(render_config(again), render_config(c));
  EXPECT_EQ(again.delimiter, " || ");
  EXPECT_TRUE(again.mlrs_options().normalizer == Normalizer::all_translated);
  EXPECT_EQ(again.delta_config().fuse.delimiter, " || ");
}
