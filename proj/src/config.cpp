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

#include "delp/config.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include "delp/error.hpp"
#include "delp/io.hpp"
#include "delp/text.hpp"

namespace delp {

namespace {

[[noreturn]] void bad(const std::string& source, const std::string& key, const std::string& why) {
  throw ConfigError(source + ": " + key + ": " + why);
}

double to_double(const std::string& v, const std::string& source, const std::string& key) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad(source, key, "expected a number, got '" + v + "'");
  return out;
}

long to_long(const std::string& v, const std::string& source, const std::string& key) {
  long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad(source, key, "expected an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& v, const std::string& source, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad(source, key, "expected true or false, got '" + v + "'");
}

std::string unquote(const std::string& raw) {
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
      if (raw[i] == '\\' && i + 2 < raw.size()) {
        ++i;
        out += raw[i] == 'n' ? '\n' : raw[i] == 't' ? '\t' : raw[i];
      } else {
        out += raw[i];
      }
    }
    return out;
  }
  return raw;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

// Shortest form that parses back to the same double.
std::string fmt(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

// Strips a trailing comment that is not inside quotes.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\\' && quoted) {
      ++i;
    } else if (line[i] == '"') {
      quoted = !quoted;
    } else if (line[i] == '#' && !quoted) {
      return line.substr(0, i);
    }
  }
  return line;
}

}  // namespace

void apply_config_value(Config& c, const std::string& key, const std::string& raw,
                        const std::string& source) {
  const std::string v = unquote(raw);
  if (key == "lambda") {
    c.lambda = to_double(v, source, key);
  } else if (key == "epsilon") {
    c.epsilon = to_double(v, source, key);
  } else if (key == "tau_low") {
    c.thresholds.tau_low = to_double(v, source, key);
  } else if (key == "tau_high") {
    c.thresholds.tau_high = to_double(v, source, key);
  } else if (key == "tau_boost") {
    c.thresholds.tau_boost = to_double(v, source, key);
  } else if (key == "max_len") {
    const long n = to_long(v, source, key);
    if (n < 1) bad(source, key, "must be >= 1");
    c.max_len = static_cast<std::size_t>(n);
  } else if (key == "depth") {
    const long n = to_long(v, source, key);
    if (n < 1 || n > 1'000'000) bad(source, key, "must be >= 1");
    c.depth = static_cast<int>(n);
  } else if (key == "delimiter") {
    c.delimiter = v;
  } else if (key == "encoder_id") {
    c.encoder_id = v;
  } else if (key == "free_intercept") {
    c.free_intercept = to_bool(v, source, key);
  } else if (key == "calibrate_same_lang") {
    c.calibrate_same_lang = to_bool(v, source, key);
  } else if (key == "global_normalizer") {
    c.global_normalizer = to_bool(v, source, key);
  } else if (key == "length_stat") {
    if (v == "median") {
      c.length_stat = LengthStatistic::median;
    } else if (v == "mean") {
      c.length_stat = LengthStatistic::mean;
    } else {
      bad(source, key, "expected median or mean");
    }
  } else if (key == "languages") {
    c.languages.clear();
    std::stringstream ss(v);
    for (std::string item; std::getline(ss, item, ',');) {
      item = text::trim(item);
      if (!item.empty()) c.languages.push_back(item);
    }
  } else if (key == "allow_extra_langs") {
    c.allow_extra_langs = to_bool(v, source, key);
  } else if (key == "endpoint_url") {
    c.endpoint.url = v;
  } else if (key == "endpoint_model") {
    c.endpoint.model = v;
  } else if (key == "endpoint_api_key") {
    c.endpoint.api_key = v;
  } else if (key == "endpoint_max_retries") {
    c.endpoint.max_retries = static_cast<int>(to_long(v, source, key));
  } else if (key == "endpoint_timeout_seconds") {
    c.endpoint.timeout_seconds = static_cast<int>(to_long(v, source, key));
  } else if (key == "endpoint_max_concurrency") {
    const long n = to_long(v, source, key);
    if (n < 1 || n > 64) bad(source, key, "must be in [1, 64]");
    c.endpoint.max_concurrency = static_cast<std::size_t>(n);
  } else if (key == "alias_limit") {
    const long n = to_long(v, source, key);
    if (n < 1) bad(source, key, "must be >= 1");
    c.endpoint.alias_limit = static_cast<int>(n);
  } else {
    bad(source, key, "unknown key");
  }
}

Config parse_config_text(const std::string& contents, const std::string& source) {
  Config config;
  std::istringstream in(contents);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const std::string body = text::trim(strip_comment(line));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = source + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = text::trim(body.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": empty key");
    apply_config_value(config, key, text::trim(body.substr(eq + 1)), where);
  }
  config.validate();
  return config;
}

Config load_config(const std::filesystem::path& path) {
  std::string contents;
  try {
    contents = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return parse_config_text(contents, path.string());
}

void Config::validate() const {
  if (!(thresholds.tau_low < thresholds.tau_high)) {
    throw ConfigError("tau_low must be < tau_high (got " + fmt(thresholds.tau_low) + " and " +
                      fmt(thresholds.tau_high) + ")");
  }
  for (double t : {thresholds.tau_low, thresholds.tau_high, thresholds.tau_boost}) {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("thresholds must lie in [0, 1]");
  }
  if (max_len < 1) throw ConfigError("max_len must be >= 1");
  if (depth < 1) throw ConfigError("depth must be >= 1");
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  try {
    (void)language_set();
  } catch (const LanguageError& e) {
    throw ConfigError(std::string("languages: ") + e.what());
  }
}

LanguageSet Config::language_set() const {
  if (languages.empty()) return allow_extra_langs ? LanguageSet::with_extras() : LanguageSet::standard();
  if (!allow_extra_langs) {
    for (const auto& code : languages) (void)LanguageSet::standard().parse(code);
  }
  return LanguageSet::of(languages, allow_extra_langs);
}

CalibrationOptions Config::calibration_options() const {
  CalibrationOptions o;
  o.lambda = lambda;
  o.epsilon = epsilon;
  o.regularize_intercept = !free_intercept;
  o.pairs = calibrate_same_lang ? CalibrationPairs::all : CalibrationPairs::cross_lingual;
  return o;
}

DeltaConfig Config::delta_config() const {
  DeltaConfig d;
  d.thresholds = thresholds;
  d.fuse.delimiter = delimiter;
  d.fuse.max_len = max_len;
  return d;
}

MlrsOptions Config::mlrs_options() const {
  MlrsOptions o;
  o.normalizer = global_normalizer ? Normalizer::all_translated : Normalizer::target_language;
  return o;
}

std::string render_config(const Config& c) {
  std::ostringstream os;
  std::string langs;
  for (const auto& l : c.languages) langs += (langs.empty() ? "" : ",") + l;
  os << "lambda = " << fmt(c.lambda) << "\n"
     << "epsilon = " << fmt(c.epsilon) << "\n"
     << "tau_low = " << fmt(c.thresholds.tau_low) << "\n"
     << "tau_high = " << fmt(c.thresholds.tau_high) << "\n"
     << "tau_boost = " << fmt(c.thresholds.tau_boost) << "\n"
     << "max_len = " << c.max_len << "\n"
     << "depth = " << c.depth << "\n"
     << "delimiter = " << quote(c.delimiter) << "\n"
     << "encoder_id = " << quote(c.encoder_id) << "\n"
     << "free_intercept = " << (c.free_intercept ? "true" : "false") << "\n"
     << "calibrate_same_lang = " << (c.calibrate_same_lang ? "true" : "false") << "\n"
     << "global_normalizer = " << (c.global_normalizer ? "true" : "false") << "\n"
     << "length_stat = " << (c.length_stat == LengthStatistic::median ? "median" : "mean") << "\n"
     << "languages = " << quote(langs) << "\n"
     << "allow_extra_langs = " << (c.allow_extra_langs ? "true" : "false") << "\n"
     << "endpoint_url = " << quote(c.endpoint.url) << "\n"
     << "endpoint_model = " << quote(c.endpoint.model) << "\n"
     << "endpoint_max_retries = " << c.endpoint.max_retries << "\n"
     << "endpoint_timeout_seconds = " << c.endpoint.timeout_seconds << "\n"
     << "endpoint_max_concurrency = " << c.endpoint.max_concurrency << "\n"
     << "alias_limit = " << c.endpoint.alias_limit << "\n";
  return os.str();
}

}  // namespace delp
