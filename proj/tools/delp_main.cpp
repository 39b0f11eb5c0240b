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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "delp/calibrate.hpp"
#include "delp/config.hpp"
#include "delp/cueclient.hpp"
#include "delp/delta.hpp"
#include "delp/error.hpp"
#include "delp/fixtures.hpp"
#include "delp/io.hpp"
#include "delp/metrics.hpp"
#include "delp/pipeline.hpp"
#include "delp/priors.hpp"
#include "delp/text.hpp"
#include "delp/toyretriever.hpp"

namespace fs = std::filesystem;
using namespace delp;

namespace {

constexpr const char* kSchemas = R"(File formats (UTF-8; JSONL means one JSON object per line):
  run JSONL        {query_id, doc_id, rank, score, doc_lang, query_lang?, wpid?}
                   ranks 1..n contiguous per query, n <= depth. Without query_lang
                   the language is the last dot token of the file stem (init.ko.jsonl).
  provenance JSONL {query_id, wpids: [string, ...]}
  sitelinks JSONL  {wpid, langs: [lang, ...]}
  corpus JSONL     {lang, passage_count, median_passage_length, mean_passage_length?}
  cue cache JSONL  {key: {query_id, kind: cultural|bundle|translation}, payload: {...}}
    cultural  {country_or_region, cultural_language, is_culture_specific, confidence, rationale}
    bundle    {en_title, local_title, aliases_en, aliases_local, extra_disambig}
    translation {translation}
  doc-wpid JSONL   {doc_id, wpid}
  toy corpus JSONL {doc_id, lang, text, wpid?}
  queries JSONL    {query_id, lang, text}
  fuse batch JSONL {query_id, lang, q_local, q_glob?, cue?, bundle?}; missing
                   q_glob, cue or bundle are resolved through --cache.
  score matrix     {encoder_id, kind: raw_mlrs|delp, cells: [{query_lang, doc_lang, score}]}
                   doc_lang "same_lang" marks the monolingual cell.
  priors JSON      {languages, p_ret, p_gold: [{query_lang, doc_lang, value}],
                    p_cult, p_db, passage_len: [{lang, value}]}
  config           flat "key = value" lines, '#' comments; keys as in `delp config`.
Exit codes: 0 ok, 2 config error, 3 data error, 4 transport error.
Environment: DELP_LLM_ENDPOINT, DELP_LLM_API_KEY, DELP_LLM_MODEL.)";

struct Global {
  std::string config_path;
  std::vector<std::string> overrides;
  bool allow_extra_langs = false;

  Config load() const {
    Config c = config_path.empty() ? Config{} : load_config(config_path);
    if (allow_extra_langs) c.allow_extra_langs = true;
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      apply_config_value(c, text::trim(kv.substr(0, eq)), text::trim(kv.substr(eq + 1)), "--set");
    }
    c.validate();
    return c;
  }
};

void emit(const std::string& out_path, const std::string& contents) {
  if (out_path.empty() || out_path == "-") {
    std::cout << contents;
  } else {
    write_file(out_path, contents);
  }
}

json read_json(const fs::path& path) {
  const auto text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

PriorTable load_priors(const fs::path& path, const LanguageSet& langs) {
  return priors_from_json(read_json(path), langs);
}

PairScoreMatrix load_matrix(const fs::path& path, const LanguageSet& langs) {
  return matrix_from_json(read_json(path), langs);
}

json cell_json(const MlrsCell& cell, bool per_query) {
  json out = {{"query_lang", cell.query_lang.str()},
              {"doc_lang", cell.query_lang == cell.doc_lang ? std::string("same_lang") : cell.doc_lang.str()},
              {"score", cell.score},
              {"query_count", cell.query_count},
              {"zero_target_queries", cell.zero_target_queries}};
  if (per_query) {
    json rows = json::array();
    for (const auto& q : cell.per_query) {
      rows.push_back({{"query_id", q.query_id},
                      {"delta_r", q.delta_r},
                      {"delta_r_max", q.delta_r_max},
                      {"score", q.score},
                      {"target_docs", q.target_docs}});
    }
    out["per_query"] = rows;
  }
  return out;
}

DocWpidMap load_doc_wpids(const fs::path& path) {
  DocWpidMap map;
  const std::string source = path.string();
  for_each_jsonl(path, [&](const json& rec, std::size_t line) {
    map[field::string(rec, "doc_id", source, line)] = field::string(rec, "wpid", source, line);
  });
  return map;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Language-preference measurement and query fusion for multilingual retrieval"};
  app.footer(kSchemas);
  app.require_subcommand(1);
  Global g;
  app.add_option("--config", g.config_path, "Config file (flat key = value)");
  app.add_option("--set", g.overrides, "Config override key=value (repeatable)");
  app.add_flag("--allow-extra-langs", g.allow_extra_langs, "Accept language codes outside the standard 13");

  // mlrs -------------------------------------------------------------------
  auto* mlrs = app.add_subcommand("mlrs", "Raw MLRS for one cell, or every cell from run directories");
  std::string m_init, m_rerank, m_doc_lang, m_merge, m_out, m_encoder = "encoder";
  bool m_global = false, m_per_query = false;
  std::optional<int> m_depth;
  mlrs->add_option("--init", m_init, "Initial run file, or a directory of runs")->required();
  mlrs->add_option("--rerank", m_rerank, "Re-ranked run file, or a directory of runs")->required();
  mlrs->add_option("--doc-lang", m_doc_lang, "Target document language (file mode)");
  mlrs->add_flag("--global-normalizer", m_global, "Normalize by every translated document");
  mlrs->add_flag("--per-query", m_per_query, "Include per-query rows (file mode)");
  mlrs->add_option("--depth", m_depth, "Run depth");
  mlrs->add_option("--encoder-id", m_encoder, "Encoder id written into the matrix");
  mlrs->add_option("--merge-into", m_merge, "Add the cell to this score matrix file");
  mlrs->add_option("-o,--output", m_out, "Output path (stdout by default)");

  // recall -----------------------------------------------------------------
  auto* recall = app.add_subcommand("recall", "Recall@k against gold provenance");
  std::string r_run, r_gold, r_sitelinks, r_wpids, r_out;
  int r_k = 20;
  recall->add_option("--run", r_run, "Run file")->required();
  recall->add_option("--gold", r_gold, "Provenance JSONL")->required();
  recall->add_option("--sitelinks", r_sitelinks, "Sitelinks JSONL");
  recall->add_option("--doc-wpids", r_wpids, "doc_id -> wpid JSONL");
  recall->add_option("-k,--k", r_k, "Cutoff")->check(CLI::PositiveNumber);
  recall->add_option("-o,--output", r_out, "Output path");

  // priors -----------------------------------------------------------------
  auto* priors = app.add_subcommand("priors", "Estimate the structural priors");
  std::string p_runs, p_gold, p_sitelinks, p_cues, p_corpus, p_out;
  priors->add_option("--runs", p_runs, "Directory of initial runs")->required();
  priors->add_option("--gold", p_gold, "Provenance JSONL")->required();
  priors->add_option("--sitelinks", p_sitelinks, "Sitelinks JSONL")->required();
  priors->add_option("--cues", p_cues, "Cue cache JSONL (cultural entries)")->required();
  priors->add_option("--corpus", p_corpus, "Corpus statistics JSONL")->required();
  priors->add_option("-o,--output", p_out, "Output path");

  // calibrate / delp -------------------------------------------------------
  std::string c_scores, c_priors, c_out;
  std::optional<double> c_lambda, c_epsilon;
  bool c_free = false, c_same = false;
  auto add_calibration_options = [&](CLI::App* sub) {
    sub->add_option("--scores", c_scores, "Raw MLRS score matrix")->required();
    sub->add_option("--priors", c_priors, "Priors JSON")->required();
    sub->add_option("--lambda", c_lambda, "Ridge strength (>= 0)");
    sub->add_option("--epsilon", c_epsilon, "Log offset (> 0)");
    sub->add_flag("--free-intercept", c_free, "Leave the intercept unpenalized");
    sub->add_flag("--calibrate-same-lang", c_same, "Fit on monolingual cells as well");
    sub->add_option("-o,--output", c_out, "Output path");
  };
  auto* calibrate = app.add_subcommand("calibrate", "Fit the prior regression; write model and residuals");
  add_calibration_options(calibrate);
  auto* delp_cmd = app.add_subcommand("delp", "Debiased score matrix");
  add_calibration_options(delp_cmd);

  // correlate ---------------------------------------------------------------
  auto* correlate = app.add_subcommand("correlate", "Pearson r of raw and calibrated scores against priors");
  std::string k_raw, k_delp, k_priors, k_out;
  bool k_csv = false;
  correlate->add_option("--raw,--scores", k_raw, "Raw score matrix")->required();
  correlate->add_option("--delp", k_delp, "Calibrated score matrix")->required();
  correlate->add_option("--priors", k_priors, "Priors JSON")->required();
  correlate->add_flag("--csv", k_csv, "CSV instead of JSON");
  correlate->add_option("-o,--output", k_out, "Output path");

  // gold-report -------------------------------------------------------------
  auto* gold = app.add_subcommand("gold-report", "Gold availability per query language and edition");
  std::string g_gold, g_sitelinks, g_out;
  gold->add_option("--gold", g_gold, "Provenance JSONL")->required();
  gold->add_option("--sitelinks", g_sitelinks, "Sitelinks JSONL")->required();
  gold->add_option("-o,--output", g_out, "Output path");

  // fuse ---------------------------------------------------------------------
  auto* fuse_cmd = app.add_subcommand("fuse", "Build fused queries");
  std::string f_query, f_lang, f_cue, f_bundle, f_glob, f_batch, f_cache, f_out;
  bool f_online = false, f_json = false;
  std::optional<double> f_tau_low, f_tau_high, f_tau_boost;
  std::optional<std::size_t> f_max_len;
  std::optional<std::string> f_delim;
  fuse_cmd->add_option("--tau-low", f_tau_low, "Confidence for the second local copy");
  fuse_cmd->add_option("--tau-high", f_tau_high, "Confidence for the third local copy");
  fuse_cmd->add_option("--tau-boost", f_tau_boost, "Confidence for doubled local anchors");
  fuse_cmd->add_option("--max-len", f_max_len, "Length budget in characters");
  fuse_cmd->add_option("--delimiter", f_delim, "Segment delimiter");
  fuse_cmd->add_flag("--json", f_json, "Print the plan and flags along with the fused string (single mode)");
  fuse_cmd->add_option("--query", f_query, "Query text (single mode)");
  fuse_cmd->add_option("--lang", f_lang, "Query language (single mode)");
  fuse_cmd->add_option("--cue", f_cue, "Cultural cue JSON file (single mode)");
  fuse_cmd->add_option("--bundle", f_bundle, "Cue bundle JSON file (single mode)");
  fuse_cmd->add_option("--glob", f_glob, "English query (single mode; defaults to --query for en)");
  fuse_cmd->add_option("--batch", f_batch, "Queries JSONL (batch mode)");
  fuse_cmd->add_option("--cache", f_cache, "Cue cache JSONL (batch mode)");
  fuse_cmd->add_flag("--online", f_online, "Query the configured endpoint on cache misses");
  fuse_cmd->add_option("-o,--output", f_out, "Output path");

  // toy-search ---------------------------------------------------------------
  auto* toy = app.add_subcommand("toy-search", "Character 3-gram search over a small corpus");
  std::string t_corpus, t_queries, t_lang, t_out, t_run_id = "toy";
  int t_k = 50;
  bool t_serial = false, t_zero = false;
  toy->add_option("--corpus", t_corpus, "Corpus JSONL")->required();
  toy->add_option("--queries", t_queries, "Queries JSONL")->required();
  toy->add_option("--k", t_k, "Depth")->check(CLI::PositiveNumber);
  toy->add_option("--query-lang", t_lang, "Language recorded in the run (default: first query's)");
  toy->add_option("--run-id", t_run_id, "Run id");
  toy->add_flag("--serial", t_serial, "Single-threaded search");
  toy->add_flag("--include-zero", t_zero, "Keep zero-score documents");
  toy->add_option("-o,--output", t_out, "Output path");

  // pipeline -----------------------------------------------------------------
  auto* pipe = app.add_subcommand("pipeline", "priors -> mlrs -> calibrate -> correlate -> gold-report -> fuse");
  std::string pl_inputs, pl_out;
  bool pl_online = false;
  pipe->add_option("--inputs", pl_inputs, "Input directory (init/, rerank/, provenance.jsonl, ...)")->required();
  pipe->add_option("--out", pl_out, "Output directory")->required();
  pipe->add_flag("--online", pl_online, "Query the configured endpoint on cache misses");

  // make-fixture / config ------------------------------------------------------
  auto* fixture = app.add_subcommand("make-fixture", "Write a synthetic input set");
  std::string x_kind, x_out;
  fixture->add_option("kind", x_kind, "gold | pipeline | toy")->required()->check(CLI::IsMember({"gold", "pipeline", "toy"}));
  fixture->add_option("--out", x_out, "Output directory")->required();

  auto* config_cmd = app.add_subcommand("config", "Print the effective configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code(ErrorCategory::config);
  }

  try {
    Config config = g.load();
    const LanguageSet langs = config.language_set();
    RunParseOptions run_opts;
    run_opts.languages = &langs;

    if (*mlrs) {
      if (m_depth) config.depth = *m_depth;
      if (m_global) config.global_normalizer = true;
      config.validate();
      run_opts.expected_depth = config.depth;
      const auto opts = config.mlrs_options();
      if (fs::is_directory(m_init)) {
        auto init = parse_run_dir(m_init, run_opts);
        auto rerank = parse_run_dir(m_rerank, run_opts);
        std::map<LanguageCode, const RetrievalRun*> by_lang;
        for (const auto& r : rerank) by_lang[r.query_lang] = &r;
        PairScoreMatrix matrix(m_encoder, ScoreKind::raw_mlrs);
        json stats = json::array();
        for (const auto& run : init) {
          auto it = by_lang.find(run.query_lang);
          if (it == by_lang.end()) throw IntegrityError("no re-ranked run for " + run.query_lang.str());
          for (const auto& d : langs.languages()) {
            const auto cell = mlrs_pair(run, *it->second, d, opts);
            matrix.set({cell.query_lang, cell.doc_lang}, cell.score);
            stats.push_back(cell_json(cell, false));
          }
        }
        json doc = to_json(matrix);
        doc["cell_stats"] = stats;
        emit(m_out, doc.dump(2) + "\n");
      } else {
        if (m_doc_lang.empty()) throw ConfigError("mlrs: --doc-lang is required with run files");
        const auto init = parse_run(m_init, run_opts);
        const auto rerank = parse_run(m_rerank, run_opts);
        const auto cell = mlrs_pair(init, rerank, langs.parse(m_doc_lang), opts);
        if (!m_merge.empty()) {
          PairScoreMatrix matrix = fs::exists(m_merge) ? load_matrix(m_merge, langs)
                                                       : PairScoreMatrix(m_encoder, ScoreKind::raw_mlrs);
          matrix.set({cell.query_lang, cell.doc_lang}, cell.score);
          write_file(m_merge, to_json(matrix).dump(2) + "\n");
        }
        emit(m_out, cell_json(cell, m_per_query).dump(2) + "\n");
      }
    } else if (*recall) {
      run_opts.expected_depth = config.depth;
      const auto run = parse_run(r_run, run_opts);
      const auto prov = parse_provenance(r_gold);
      const SitelinkMap sl = r_sitelinks.empty() ? SitelinkMap{} : parse_sitelinks(r_sitelinks, langs);
      std::optional<DocWpidMap> wpids;
      if (!r_wpids.empty()) wpids = load_doc_wpids(r_wpids);
      const auto res = recall_at_k(run, prov, sl, r_k, wpids ? &*wpids : nullptr);
      emit(r_out, json{{"query_lang", run.query_lang.str()},
                       {"k", r_k},
                       {"recall", res.recall},
                       {"evaluated", res.evaluated},
                       {"hits", res.hits},
                       {"excluded_no_gold", res.excluded_no_gold}}
                      .dump(2) + "\n");
    } else if (*priors) {
      run_opts.expected_depth = config.depth;
      const auto runs = parse_run_dir(p_runs, run_opts);
      CueCache cache(fs::path(p_cues), langs);
      std::vector<CulturalCue> cues;
      for (const auto& [key, payload] : cache.snapshot()) {
        if (key.kind == CueKind::cultural) cues.push_back(parse_cultural_cue(payload, langs));
      }
      PriorTable table;
      table.languages = langs.languages();
      table.p_ret = exposure_prior(runs, langs, config.depth);
      table.p_gold = gold_prior(query_sets(runs), parse_provenance(p_gold), parse_sitelinks(p_sitelinks, langs), langs);
      table.p_cult = cultural_prior(cues, langs);
      const auto corpus = corpus_prior(parse_corpus_stats(p_corpus, langs), config.length_stat);
      table.p_db = corpus.p_db;
      table.passage_len = corpus.passage_len;
      emit(p_out, to_json(table).dump(2) + "\n");
    } else if (*calibrate || *delp_cmd) {
      if (c_lambda) config.lambda = *c_lambda;
      if (c_epsilon) config.epsilon = *c_epsilon;
      if (c_free) config.free_intercept = true;
      if (c_same) config.calibrate_same_lang = true;
      config.validate();
      const auto scores = load_matrix(c_scores, langs);
      const auto table = load_priors(c_priors, langs);
      const auto fit = residualize(scores, table, config.calibration_options());
      json doc = to_json(delp_from(fit));
      if (*calibrate) {
        json residuals = json::array();
        for (const auto& [pair, r] : fit.residuals) {
          residuals.push_back({{"query_lang", pair.query.str()},
                               {"doc_lang", pair.same_lang() ? std::string("same_lang") : pair.doc.str()},
                               {"residual", r}});
        }
        doc["model"] = to_json(fit.model);
        doc["residuals"] = residuals;
      }
      emit(c_out, doc.dump(2) + "\n");
    } else if (*correlate) {
      const auto raw = load_matrix(k_raw, langs);
      const auto cal = load_matrix(k_delp, langs);
      CorrelationOptions opts;
      opts.epsilon = config.epsilon;
      opts.pairs = config.calibration_options().pairs;
      const auto rows = correlation_report(raw, cal, load_priors(k_priors, langs), opts);
      emit(k_out, k_csv ? to_csv(rows) : json{{"rows", to_json(rows)}}.dump(2) + "\n");
    } else if (*gold) {
      const auto report = gold_availability_report(parse_provenance(g_gold), parse_sitelinks(g_sitelinks, langs),
                                                   langs.languages());
      emit(g_out, to_json(report).dump(2) + "\n");
    } else if (*fuse_cmd) {
      if (f_tau_low) config.thresholds.tau_low = *f_tau_low;
      if (f_tau_high) config.thresholds.tau_high = *f_tau_high;
      if (f_tau_boost) config.thresholds.tau_boost = *f_tau_boost;
      if (f_max_len) config.max_len = *f_max_len;
      if (f_delim) config.delimiter = *f_delim;
      config.validate();
      const auto delta_cfg = config.delta_config();
      std::optional<ChatClient> client;
      if (f_online) {
        auto ep = config.endpoint.configured() ? config.endpoint : endpoint_from_env();
        if (!ep.configured()) throw ConfigError("--online needs an endpoint (config or DELP_LLM_ENDPOINT)");
        client.emplace(ep);
      }
      if (!f_batch.empty()) {
        std::optional<CueCache> cache;
        if (!f_cache.empty()) {
          cache.emplace(fs::path(f_cache), langs);
        } else {
          cache.emplace(langs);
        }
        CueResolver resolver(*cache, client ? &*client : nullptr);
        std::string lines;
        const std::string source = f_batch;
        for_each_jsonl(f_batch, [&](const json& rec, std::size_t line) {
          const auto qid = field::string(rec, "query_id", source, line);
          const auto lang = langs.parse(field::string(rec, "lang", source, line));
          const auto q_local = field::string(rec, rec.contains("q_local") ? "q_local" : "text", source, line);
          const auto q_glob = rec.contains("q_glob") ? field::string(rec, "q_glob", source, line)
                                                     : resolver.get_translation(q_local, lang, qid);
          const auto cue = rec.contains("cue") ? parse_cultural_cue(rec["cue"], langs)
                                               : resolver.get_cultural_cue(q_glob, qid);
          const auto bundle = rec.contains("bundle") ? parse_bundle(rec["bundle"])
                                                     : resolver.get_bundle(q_glob, q_local, lang, cue, qid);
          const auto r = delta_transform(q_local, lang, cue, bundle, q_glob, delta_cfg);
          lines += json{{"query_id", qid}, {"fused", r.fused.text}, {"plan", to_json(r.plan)}}.dump() + "\n";
        });
        emit(f_out, lines);
      } else {
        if (f_query.empty() || f_lang.empty() || f_cue.empty() || f_bundle.empty()) {
          throw ConfigError("fuse needs --query, --lang, --cue and --bundle (or --batch)");
        }
        const auto lang = langs.parse(f_lang);
        const auto cue = parse_cultural_cue(read_json(f_cue), langs);
        const auto bundle = parse_bundle(read_json(f_bundle));
        if (f_glob.empty()) {
          if (lang != LanguageCode::english()) throw ConfigError("fuse: --glob is required for non-English queries");
          f_glob = f_query;
        }
        const auto r = delta_transform(f_query, lang, cue, bundle, f_glob, delta_cfg);
        if (f_json) {
          emit(f_out, json{{"fused", r.fused.text},
                           {"plan", to_json(r.plan)},
                           {"length", text::length(r.fused.text)},
                           {"truncated", r.fused.truncated},
                           {"local_guard_applied", r.fused.local_guard_applied},
                           {"degenerate_bundle", r.degenerate_bundle}}
                          .dump(2) + "\n");
        } else {
          emit(f_out, r.fused.text + "\n");
        }
      }
    } else if (*toy) {
      const auto index = ToyIndex::build(parse_toy_corpus(t_corpus, langs));
      const auto queries = parse_toy_queries(t_queries, langs);
      if (queries.empty()) throw DomainError("toy-search: no queries");
      const auto qlang = t_lang.empty() ? queries.front().lang : langs.parse(t_lang);
      SearchOptions so;
      so.include_zero_scores = t_zero;
      const auto run = t_serial ? search_batch_serial(index, queries, qlang, t_k, t_run_id, so)
                                : search_batch(index, queries, qlang, t_k, t_run_id, so);
      emit(t_out, serialize_run(run));
    } else if (*pipe) {
      std::optional<ChatClient> client;
      if (pl_online) {
        auto ep = config.endpoint.configured() ? config.endpoint : endpoint_from_env();
        if (!ep.configured()) throw ConfigError("--online needs an endpoint (config or DELP_LLM_ENDPOINT)");
        client.emplace(ep);
      }
      const auto report = run_pipeline(config, PipelineInputs::in_directory(pl_inputs, pl_out),
                                       client ? &*client : nullptr);
      for (const auto& a : report.artifacts) std::cout << a.sha256 << "  " << a.path << "\n";
      std::cout << "manifest: " << report.manifest_path.string() << "\n";
    } else if (*fixture) {
      if (x_kind == "gold") {
        fixtures::write_gold_fixture(x_out);
      } else if (x_kind == "pipeline") {
        fixtures::write_pipeline_fixture(x_out);
      } else {
        const auto ex = fixtures::toy_experiment();
        fs::create_directories(x_out);
        std::string corpus, queries;
        for (const auto& p : ex.corpus.passages) {
          json rec = {{"doc_id", p.doc_id}, {"lang", p.lang.str()}, {"text", p.text}};
          if (p.wpid) rec["wpid"] = *p.wpid;
          corpus += rec.dump() + "\n";
        }
        for (const auto& c : ex.cases) {
          queries += json{{"query_id", c.example.query_id}, {"lang", "en"}, {"text", c.example.q_glob}}.dump() + "\n";
        }
        write_file(fs::path(x_out) / "corpus.jsonl", corpus);
        write_file(fs::path(x_out) / "queries.jsonl", queries);
      }
    } else if (*config_cmd) {
      std::cout << render_config(config);
    }
  } catch (const Error& e) {
    std::cerr << "delp: " << e.what() << "\n";
    if (const auto* v = dynamic_cast<const ValidationError*>(&e)) std::cerr << "payload: " << v->payload() << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "delp: " << e.what() << "\n";
    return exit_code(ErrorCategory::data);
  }
  return 0;
}
