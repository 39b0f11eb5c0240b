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

#include "delp/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <functional>
#include <memory>
#include <set>

#include "delp/calibrate.hpp"
#include "delp/cueclient.hpp"
#include "delp/delta.hpp"
#include "delp/io.hpp"
#include "delp/metrics.hpp"
#include "delp/priors.hpp"
#include "delp/text.hpp"

namespace delp {

namespace fs = std::filesystem;

PipelineInputs PipelineInputs::in_directory(const fs::path& dir, const fs::path& output_dir) {
  PipelineInputs in;
  in.init_runs = dir / "init";
  in.rerank_runs = dir / "rerank";
  in.provenance = dir / "provenance.jsonl";
  in.sitelinks = dir / "sitelinks.jsonl";
  in.corpus_stats = dir / "corpus_stats.jsonl";
  in.cue_cache = dir / "cues.jsonl";
  in.fuse_queries = dir / "queries.jsonl";
  in.output_dir = output_dir;
  return in;
}

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw IntegrityError("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

namespace {

struct FuseQuery {
  std::string query_id;
  LanguageCode lang = LanguageCode::english();
  std::string text;
};

std::vector<FuseQuery> parse_fuse_queries(const fs::path& path, const LanguageSet& languages) {
  std::vector<FuseQuery> out;
  std::set<std::string> seen;
  const std::string source = path.string();
  for_each_jsonl(path, [&](const json& rec, std::size_t line) {
    FuseQuery q;
    q.query_id = field::string(rec, "query_id", source, line);
    q.lang = languages.parse(field::string(rec, "lang", source, line));
    q.text = field::string(rec, "text", source, line);
    if (!seen.insert(q.query_id).second) throw ParseError(source, line, "duplicate query_id '" + q.query_id + "'");
    out.push_back(std::move(q));
  });
  return out;
}

std::vector<RetrievalRun> runs_by_language(const fs::path& dir, const RunParseOptions& opts) {
  auto runs = parse_run_dir(dir, opts);
  std::set<LanguageCode> langs;
  for (const auto& r : runs) {
    if (!langs.insert(r.query_lang).second) {
      throw IntegrityError(dir.string() + ": more than one run for query language " + r.query_lang.str());
    }
  }
  std::sort(runs.begin(), runs.end(),
            [](const RetrievalRun& a, const RetrievalRun& b) { return a.query_lang < b.query_lang; });
  return runs;
}

json mlrs_document(const PairScoreMatrix& matrix, const std::vector<MlrsCell>& cells) {
  json doc = to_json(matrix);
  json stats = json::array();
  for (const auto& c : cells) {
    stats.push_back({{"query_lang", c.query_lang.str()},
                     {"doc_lang", c.query_lang == c.doc_lang ? std::string("same_lang") : c.doc_lang.str()},
                     {"score", c.score},
                     {"query_count", c.query_count},
                     {"zero_target_queries", c.zero_target_queries}});
  }
  doc["cell_stats"] = stats;
  return doc;
}

json fused_record(const FuseQuery& q, const std::string& q_glob, const CulturalCue& cue,
                  const DeltaResult& r) {
  json labels = json::array();
  for (const auto& s : r.fused.segments) labels.push_back({{"label", s.label}, {"repeat", s.repeat}});
  return {{"query_id", q.query_id},
          {"lang", q.lang.str()},
          {"q_local", q.text},
          {"q_glob", q_glob},
          {"cue", to_json(cue)},
          {"plan", to_json(r.plan)},
          {"segments", labels},
          {"fused", r.fused.text},
          {"length", text::length(r.fused.text)},
          {"truncated", r.fused.truncated},
          {"local_guard_applied", r.fused.local_guard_applied},
          {"degenerate_bundle", r.degenerate_bundle}};
}

class ManifestWriter {
 public:
  explicit ManifestWriter(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& file, const std::string& contents) {
    write_file(dir_ / file, contents);
    artifacts_.push_back({name, file, sha256_hex(contents), contents.size()});
  }

  void finish(const std::string& status, const std::string& failed_stage = {},
              const std::string& error = {}) const {
    json artifacts = json::array();
    for (const auto& a : artifacts_) {
      json entry = {{"name", a.name}, {"path", a.path}, {"sha256", a.sha256}, {"bytes", a.bytes}};
      if (status != "ok") entry["stale"] = true;
      artifacts.push_back(entry);
    }
    json manifest = {{"status", status},
                     {"stages", std::vector<std::string>(std::begin(kPipelineStages), std::end(kPipelineStages))},
                     {"artifacts", artifacts}};
    if (!failed_stage.empty()) {
      manifest["failed_stage"] = failed_stage;
      manifest["error"] = error;
    }
    write_file(dir_ / "manifest.json", manifest.dump(2) + "\n");
  }

  const std::vector<ArtifactRecord>& artifacts() const { return artifacts_; }
  fs::path manifest_path() const { return dir_ / "manifest.json"; }

 private:
  fs::path dir_;
  std::vector<ArtifactRecord> artifacts_;
};

}  // namespace

PipelineReport run_pipeline(const Config& config, const PipelineInputs& inputs,
                            const ChatClient* client) {
  config.validate();
  for (const auto* p : {&inputs.init_runs, &inputs.rerank_runs, &inputs.provenance, &inputs.sitelinks,
                        &inputs.corpus_stats, &inputs.cue_cache, &inputs.fuse_queries}) {
    if (!fs::exists(*p)) throw ConfigError("pipeline input does not exist: " + p->string());
  }
  fs::create_directories(inputs.output_dir);

  const LanguageSet languages = config.language_set();
  ManifestWriter out(inputs.output_dir);
  std::string stage;
  const auto run_stage = [&](const std::string& name, const std::function<void()>& body) {
    stage = name;
    try {
      body();
    } catch (const Error& e) {
      out.finish("failed", name, e.what());
      throw StageError(name, e);
    } catch (const std::exception& e) {
      const DomainError wrapped(e.what());
      out.finish("failed", name, e.what());
      throw StageError(name, wrapped);
    }
  };

  RunParseOptions run_opts;
  run_opts.expected_depth = config.depth;
  run_opts.languages = &languages;

  std::vector<RetrievalRun> init, rerank;
  ProvenanceMap provenance;
  SitelinkMap sitelinks;
  CueCache cache(languages);
  PriorTable priors;
  PairScoreMatrix raw;
  Residualization fit;
  PairScoreMatrix calibrated;

  run_stage("priors", [&] {
    init = runs_by_language(inputs.init_runs, run_opts);
    provenance = parse_provenance(inputs.provenance);
    sitelinks = parse_sitelinks(inputs.sitelinks, languages);
    const auto stats = parse_corpus_stats(inputs.corpus_stats, languages);
    // Load the cache into memory; the pipeline never writes to its input.
    {
      CueCache on_disk(inputs.cue_cache, languages);
      for (const auto& [key, payload] : on_disk.snapshot()) cache.put(key, payload);
    }
    std::vector<CulturalCue> cues;
    for (const auto& [key, payload] : cache.snapshot()) {
      if (key.kind == CueKind::cultural) cues.push_back(parse_cultural_cue(payload, languages));
    }

    priors.languages = languages.languages();
    priors.p_ret = exposure_prior(init, languages, config.depth);
    priors.p_gold = gold_prior(query_sets(init), provenance, sitelinks, languages);
    priors.p_cult = cultural_prior(cues, languages);
    const auto corpus = corpus_prior(stats, config.length_stat);
    priors.p_db = corpus.p_db;
    priors.passage_len = corpus.passage_len;
    out.write("priors", "priors.json", to_json(priors).dump(2) + "\n");
  });

  run_stage("mlrs", [&] {
    rerank = runs_by_language(inputs.rerank_runs, run_opts);
    if (rerank.size() != init.size()) {
      throw IntegrityError("initial and re-ranked run directories cover different query languages");
    }
    raw = PairScoreMatrix(config.encoder_id, ScoreKind::raw_mlrs);
    std::vector<MlrsCell> cells;
    for (std::size_t i = 0; i < init.size(); ++i) {
      if (init[i].query_lang != rerank[i].query_lang) {
        throw IntegrityError("no re-ranked run for query language " + init[i].query_lang.str());
      }
      for (const auto& d : languages.languages()) {
        auto cell = mlrs_pair(init[i], rerank[i], d, config.mlrs_options());
        raw.set({cell.query_lang, cell.doc_lang}, cell.score);
        cells.push_back(std::move(cell));
      }
    }
    out.write("mlrs", "mlrs.json", mlrs_document(raw, cells).dump(2) + "\n");
  });

  run_stage("calibrate", [&] {
    fit = residualize(raw, priors, config.calibration_options());
    calibrated = delp_from(fit);
    json doc = to_json(calibrated);
    doc["model"] = to_json(fit.model);
    out.write("delp", "delp.json", doc.dump(2) + "\n");
  });

  run_stage("correlate", [&] {
    CorrelationOptions opts;
    opts.epsilon = config.epsilon;
    opts.pairs = config.calibration_options().pairs;
    const auto rows = correlation_report(raw, calibrated, priors, opts);
    out.write("correlation", "correlation.json", json{{"rows", to_json(rows)}}.dump(2) + "\n");
  });

  run_stage("gold-report", [&] {
    const auto query_langs = languages.languages();
    const auto report = gold_availability_report(provenance, sitelinks, query_langs);
    out.write("gold_report", "gold_report.json", to_json(report).dump(2) + "\n");
  });

  std::size_t network_calls = 0;
  run_stage("fuse", [&] {
    const auto queries = parse_fuse_queries(inputs.fuse_queries, languages);
    CueResolver resolver(cache, client);
    const auto delta_cfg = config.delta_config();
    std::string lines;
    for (const auto& q : queries) {
      const std::string q_glob = resolver.get_translation(q.text, q.lang, q.query_id);
      const CulturalCue cue = resolver.get_cultural_cue(q_glob, q.query_id);
      const CueBundle bundle = resolver.get_bundle(q_glob, q.text, q.lang, cue, q.query_id);
      const auto result = delta_transform(q.text, q.lang, cue, bundle, q_glob, delta_cfg);
      lines += fused_record(q, q_glob, cue, result).dump() + "\n";
    }
    network_calls = resolver.network_calls();
    out.write("fused", "fused.jsonl", lines);
  });

  out.finish("ok");
  return {out.artifacts(), out.manifest_path(), network_calls};
}

}  // namespace delp
