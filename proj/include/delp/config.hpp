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
#include <map>
#include <string>
#include <vector>

#include "delp/calibrate.hpp"
#include "delp/cueclient.hpp"
#include "delp/delta.hpp"
#include "delp/language.hpp"
#include "delp/metrics.hpp"
#include "delp/priors.hpp"

namespace delp {

struct Config {
  double lambda = 1.0;
  double epsilon = 1e-6;
  Thresholds thresholds;
  std::size_t max_len = 900;
  int depth = 50;
  std::string delimiter = " | ";
  std::string encoder_id = "encoder";
  bool free_intercept = false;
  bool calibrate_same_lang = false;
  bool global_normalizer = false;
  LengthStatistic length_stat = LengthStatistic::median;
  std::vector<std::string> languages;  // empty: the standard 13
  bool allow_extra_langs = false;
  EndpointConfig endpoint;

  LanguageSet language_set() const;
  CalibrationOptions calibration_options() const;
  DeltaConfig delta_config() const;
  MlrsOptions mlrs_options() const;

  // Throws ConfigError when an invariant fails.
  void validate() const;
};

// Flat `key = value` text. `#` starts a comment; values may be wrapped in
// double quotes to keep surrounding spaces (`delimiter = " | "`). Unknown keys
// and malformed values raise ConfigError.
Config parse_config_text(const std::string& contents, const std::string& source = "<config>");
Config load_config(const std::filesystem::path& path);

// Applies `key = value` overrides on top of `config` with the same rules.
void apply_config_value(Config& config, const std::string& key, const std::string& value,
                        const std::string& source = "<override>");

// Every key with its current value, in the file syntax.
std::string render_config(const Config& config);

}  // namespace delp
