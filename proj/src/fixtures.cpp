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

#include "delp/fixtures.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

#include "delp/cueclient.hpp"
#include "delp/error.hpp"
#include "delp/io.hpp"

namespace delp::fixtures {

namespace fs = std::filesystem;

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw DomainError("Rng::below(0)");
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

double Rng::normal(double mean, double stddev) {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

const LanguageSet& std_langs() { return LanguageSet::standard(); }
LanguageCode lang(const char* code) { return std_langs().parse(code); }

std::string padded(std::size_t i, int width) {
  std::string s = std::to_string(i);
  return std::string(width > static_cast<int>(s.size()) ? width - s.size() : 0, '0') + s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Gold availability

GoldFixture gold_availability_fixture() {
  GoldFixture f;
  f.questions = 2827;
  f.available = 2404;
  f.both_per_language = {{"ar", 214}, {"de", 435}, {"ja", 513}, {"ko", 306}, {"th", 187}, {"zh", 287},
                         {"es", 480}, {"fi", 250}, {"fr", 520}, {"it", 380}, {"pt", 330}, {"ru", 416}};
  Rng rng(2827);

  std::vector<std::set<LanguageCode>> pages(f.questions);
  for (std::size_t i = 0; i < f.available; ++i) pages[i].insert(LanguageCode::english());
  for (const auto& [code, count] : f.both_per_language) {
    std::vector<std::size_t> idx(f.available);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    rng.shuffle(idx);
    for (std::size_t j = 0; j < count; ++j) pages[idx[j]].insert(lang(code.c_str()));
  }
  // Some unavailable questions still have a page in a non-English edition.
  for (std::size_t i = f.available; i < f.available + 150; ++i) pages[i].insert(lang("ja"));

  std::vector<std::size_t> order(f.questions);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  for (std::size_t i = 0; i < f.questions; ++i) {
    const std::size_t q = order[i];
    const std::string qid = "mkqa-" + padded(q, 4);
    const std::string wpid = std::to_string(100000 + q);
    GoldProvenance prov{qid, {wpid}};
    // Every seventh question lists an extra gold page with no sitelinks.
    if (q % 7 == 0) prov.gold_wpids.insert(std::to_string(900000 + q));
    f.provenance.entries.emplace(qid, std::move(prov));
    f.sitelinks.add(wpid, pages[q]);
  }
  return f;
}

void write_gold_fixture(const fs::path& dir) {
  fs::create_directories(dir);
  const auto f = gold_availability_fixture();
  write_file(dir / "provenance.jsonl", serialize_provenance(f.provenance));
  write_file(dir / "sitelinks.jsonl", serialize_sitelinks(f.sitelinks));
}

// ---------------------------------------------------------------------------
// Cue examples

CueExample korean_olympics() {
  CueExample e;
  e.query_id = "ko-olympics";
  e.lang = lang("ko");
  e.q_local = "언제 마지막으로 대한민국이 올림픽을 했었나요";
  e.q_glob = "when was the last time south korea had the olympics";
  e.cue.country_or_region = "South Korea";
  e.cue.cultural_language = lang("ko");
  e.cue.is_culture_specific = true;
  e.cue.confidence = 0.93;
  e.cue.rationale = "Olympic Games hosted by South Korea";
  e.bundle.en_title = "South Korea at the Olympics";
  e.bundle.local_title = "대한민국의 올림픽";
  e.bundle.aliases_en = {"Olympics in South Korea", "South Korean Olympic Games",
                         "History of South Korea Olympics"};
  e.bundle.aliases_local = {"대한민국 올림픽", "한국 올림픽", "한국의 올림픽 역사"};
  e.bundle.extra_disambig = "Last Olympic Games in South Korea";
  return e;
}

// ---------------------------------------------------------------------------
// Calibration

CalibrationFixture synthetic_calibration(std::uint64_t seed, double delta, double noise_stddev) {
  CalibrationFixture f;
  f.delta = delta;
  f.beta = {50.0, 4.0, 0.5, 1.0, 2.0, 0.3, 0.0};
  Rng rng(seed);
  const auto langs = std_langs().languages();
  auto& p = f.priors;
  p.languages = langs;

  auto shares = [&](double spread) {
    std::vector<double> w(langs.size());
    double total = 0.0;
    for (auto& x : w) total += (x = std::exp(rng.uniform(-spread, 0.0)));
    for (auto& x : w) x /= total;
    return w;
  };
  for (const auto& q : langs) {
    const auto w = shares(3.5);
    for (std::size_t j = 0; j < langs.size(); ++j) {
      p.p_ret[{q, langs[j]}] = w[j];
      p.p_gold[{q, langs[j]}] = rng.uniform(0.3, 0.95);
    }
  }
  const auto cult = shares(3.0);
  const auto db = shares(3.0);
  for (std::size_t j = 0; j < langs.size(); ++j) {
    p.p_cult[langs[j]] = cult[j];
    p.p_db[langs[j]] = db[j];
    p.passage_len[langs[j]] = rng.uniform(80.0, 300.0);
  }

  f.scores = PairScoreMatrix("synthetic", ScoreKind::raw_mlrs);
  for (const auto& q : langs) {
    for (const auto& d : langs) {
      const auto phi = build_features(p, q, d, 1e-6);
      double s = 0.0;
      for (std::size_t k = 0; k < kFeatureCount; ++k) s += phi.components[k] * f.beta[k];
      if (q == d) s += delta;
      s += rng.normal(0.0, noise_stddev);
      f.scores.set({q, d}, s);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Pipeline input layout

std::vector<std::string> pipeline_fixture_languages() {
  return {"ar", "de", "en", "es", "fr", "ja", "ko", "zh"};
}

namespace {


std::vector<CueExample> pipeline_fuse_cases() {
  std::vector<CueExample> out;
  out.push_back(korean_olympics());

  CueExample en;
  en.query_id = "en-capital";
  en.lang = lang("en");
  en.q_local = en.q_glob = "what is the capital of australia";
  en.cue = {"Australia", lang("en"), false, 0.35, "general geography"};
  en.bundle.en_title = "Canberra";
  en.bundle.aliases_en = {"Capital of Australia", "Australian capital city"};
  en.bundle.extra_disambig = "Australian federal capital";
  out.push_back(en);

  CueExample ja;
  ja.query_id = "ja-shinkansen";
  ja.lang = lang("ja");
  ja.q_local = "東海道新幹線が開業したのはいつですか";
  ja.q_glob = "when did the tokaido shinkansen open";
  ja.cue = {"Japan", lang("ja"), true, 0.88, "Japanese railway history"};
  ja.bundle.en_title = "Tokaido Shinkansen";
  ja.bundle.local_title = "東海道新幹線";
  ja.bundle.aliases_en = {"Tokaido bullet train"};
  ja.bundle.aliases_local = {"新幹線", "東海道線の高速鉄道"};
  ja.bundle.extra_disambig = "opened 1964 Tokyo Osaka";
  out.push_back(ja);

  CueExample zh;
  zh.query_id = "zh-hongkong";
  zh.lang = lang("zh");
  zh.q_local = "香港什么时候回归中国";
  zh.q_glob = "when did hong kong go back to china";
  zh.cue = {"Hong Kong", lang("zh"), true, 0.62, "handover of Hong Kong"};
  zh.bundle.en_title = "Transfer of sovereignty over Hong Kong";
  zh.bundle.local_title = "香港主权移交";
  zh.bundle.aliases_en = {"Hong Kong handover"};
  zh.bundle.aliases_local = {"香港回归"};
  zh.bundle.extra_disambig = "1997 handover";
  out.push_back(zh);

  CueExample de;
  de.query_id = "de-president";
  de.lang = lang("de");
  de.q_local = "wer war der erste präsident der vereinigten staaten";
  de.q_glob = "who was the first president of the united states";
  de.cue = {"United States", lang("en"), true, 0.55, "American history"};
  de.bundle.en_title = "George Washington";
  de.bundle.local_title = "George Washington";
  de.bundle.aliases_en = {"First US president"};
  de.bundle.aliases_local = {"First US president"};
  de.bundle.extra_disambig = "";
  out.push_back(de);

  CueExample ar;
  ar.query_id = "ar-sumo";
  ar.lang = lang("ar");
  ar.q_local = "ما هي قواعد مصارعة السومو";
  ar.q_glob = "what are the rules of sumo wrestling";
  ar.cue = {"Japan", lang("ja"), true, 0.91, "traditional Japanese sport"};
  ar.bundle.en_title = "Sumo";
  ar.bundle.local_title = "سومو";
  ar.bundle.aliases_en = {"Sumo wrestling"};
  ar.bundle.aliases_local = {"مصارعة السومو"};
  ar.bundle.extra_disambig = "Japanese wrestling rules";
  out.push_back(ar);

  CueExample ko2;
  ko2.query_id = "ko-kimchi";
  ko2.lang = lang("ko");
  ko2.q_local = "김치는 어떻게 만드나요";
  ko2.q_glob = "how is kimchi made";
  ko2.cue = {"South Korea", lang("ko"), true, 0.97, "Korean cuisine"};
  ko2.bundle.en_title = "Kimchi";
  ko2.bundle.local_title = "김치";
  ko2.bundle.aliases_en = {"Korean fermented cabbage"};
  ko2.bundle.aliases_local = {"배추김치"};
  ko2.bundle.extra_disambig = "Korean side dish";
  out.push_back(ko2);

  CueExample es;
  es.query_id = "es-vague";
  es.lang = lang("es");
  es.q_local = "cuántos huesos tiene el cuerpo humano";
  es.q_glob = "how many bones are in the human body";
  es.cue = {"Global", lang("en"), false, 0.2, "universal biology"};
  es.bundle.extra_disambig = "";
  out.push_back(es);
  return out;
}

}  // namespace

void write_pipeline_fixture(const fs::path& dir, std::uint64_t seed) {
  const auto codes = pipeline_fixture_languages();
  const auto languages = LanguageSet::of(codes);
  const auto langs = languages.languages();
  Rng rng(seed);
  fs::create_directories(dir / "init");
  fs::create_directories(dir / "rerank");
  for (const auto& sub : {dir / "init", dir / "rerank"}) {
    for (const auto& entry : fs::directory_iterator(sub)) fs::remove(entry.path());
  }

  constexpr std::size_t kQueries = 16;
  constexpr std::size_t kDocs = 20;
  std::vector<std::string> qids;
  for (std::size_t i = 1; i <= kQueries; ++i) qids.push_back("q" + padded(i, 2));

  for (const auto& q : langs) {
    // Exposure weights per document language, skewed toward English and the
    // query language; the re-ranker adds a preference bonus per doc language.
    std::vector<double> weight(langs.size()), bonus(langs.size());
    for (std::size_t j = 0; j < langs.size(); ++j) {
      weight[j] = rng.uniform(0.2, 1.0);
      if (langs[j] == q) weight[j] += 2.0;
      if (langs[j] == LanguageCode::english()) weight[j] += 1.5;
      bonus[j] = rng.uniform(0.0, 1.0) + (langs[j] == q ? 0.8 : 0.0);
    }
    double total = 0.0;
    for (double w : weight) total += w;

    RetrievalRun init, rerank;
    init.run_id = "init";
    rerank.run_id = "rerank";
    init.query_lang = rerank.query_lang = q;
    for (const auto& qid : qids) {
      struct Doc {
        std::string id;
        std::size_t lang;
        double rerank_score;
      };
      std::vector<Doc> docs;
      for (std::size_t r = 0; r < kDocs; ++r) {
        double x = rng.uniform(0.0, total);
        std::size_t j = 0;
        while (j + 1 < langs.size() && x >= weight[j]) x -= weight[j++];
        docs.push_back({"d-" + langs[j].str() + "-" + padded(rng.below(100000), 5) + "-" + padded(r, 2), j,
                        0.0});
      }
      CandidateList init_list;
      for (std::size_t r = 0; r < docs.size(); ++r) {
        docs[r].rerank_score = rng.uniform() + bonus[docs[r].lang] - 0.02 * static_cast<double>(r);
        init_list.push_back({qid, docs[r].id, static_cast<int>(r) + 1, 1.0 - 0.01 * static_cast<double>(r),
                             langs[docs[r].lang], std::nullopt});
      }
      std::vector<std::size_t> order(docs.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return docs[a].rerank_score > docs[b].rerank_score;
      });
      CandidateList rerank_list;
      for (std::size_t r = 0; r < order.size(); ++r) {
        const auto& d = docs[order[r]];
        rerank_list.push_back({qid, d.id, static_cast<int>(r) + 1, d.rerank_score, langs[d.lang], std::nullopt});
      }
      init.lists.emplace(qid, std::move(init_list));
      rerank.lists.emplace(qid, std::move(rerank_list));
    }
    write_file(dir / "init" / ("init." + q.str() + ".jsonl"), serialize_run(init));
    write_file(dir / "rerank" / ("rerank." + q.str() + ".jsonl"), serialize_run(rerank));
  }

  ProvenanceMap prov;
  SitelinkMap sitelinks;
  std::vector<double> edition_rate(langs.size());
  for (auto& r : edition_rate) r = rng.uniform(0.15, 0.8);
  for (std::size_t i = 0; i < qids.size(); ++i) {
    const std::string wpid = std::to_string(5000 + i);
    prov.entries.emplace(qids[i], GoldProvenance{qids[i], {wpid}});
    std::set<LanguageCode> present;
    for (std::size_t j = 0; j < langs.size(); ++j) {
      const double rate = langs[j] == LanguageCode::english() ? 0.85 : edition_rate[j];
      if (rng.uniform() < rate) present.insert(langs[j]);
    }
    sitelinks.add(wpid, present);
  }
  write_file(dir / "provenance.jsonl", serialize_provenance(prov));
  write_file(dir / "sitelinks.jsonl", serialize_sitelinks(sitelinks));

  std::vector<CorpusStats> stats;
  for (const auto& l : langs) {
    CorpusStats s;
    s.lang = l;
    s.passage_count = 100000 + rng.below(30000000);
    if (l == LanguageCode::english()) s.passage_count += 40000000;
    s.median_passage_length = std::round(rng.uniform(80.0, 320.0));
    s.mean_passage_length = s.median_passage_length * rng.uniform(1.0, 1.3);
    stats.push_back(s);
  }
  write_file(dir / "corpus_stats.jsonl", serialize_corpus_stats(stats));

  const fs::path cache_path = dir / "cues.jsonl";
  fs::remove(cache_path);
  std::string queries;
  {
    CueCache cache(cache_path, languages);
    for (const auto& c : pipeline_fuse_cases()) {
      if (c.lang != LanguageCode::english()) {
        cache.put({c.query_id, CueKind::translation}, json{{"translation", c.q_glob}});
      }
      cache.put({c.query_id, CueKind::cultural}, to_json(c.cue));
      cache.put({c.query_id, CueKind::bundle}, to_json(c.bundle));
      queries += json{{"query_id", c.query_id}, {"lang", c.lang.str()}, {"text", c.q_local}}.dump() + "\n";
    }
  }
  write_file(dir / "queries.jsonl", queries);

  Config config;
  config.languages = codes;
  config.encoder_id = "fixture-encoder";
  write_file(dir / "pipeline.conf", "# Synthetic pipeline fixture\n" + render_config(config));
}

// ---------------------------------------------------------------------------
// Toy bilingual retrieval experiment

namespace {

struct ToyEntity {
  const char* en;
  const char* ko;
  const char* alias1;
  const char* alias2;
  const char* en_alias;
  const char* place;
};

constexpr ToyEntity kEntities[] = {
    {"Busan International Film Festival", "부산국제영화제", "부산영화제", "비프 영화축제", "BIFF", "Busan"},
    {"Boryeong Mud Festival", "보령머드축제", "보령 진흙 축제", "대천 머드 축제", "Mud festival", "Boryeong"},
    {"Jinju Lantern Festival", "진주남강유등축제", "진주 유등축제", "남강 등불 축제", "Lantern festival", "Jinju"},
    {"Andong Mask Dance Festival", "안동국제탈춤페스티벌", "안동 탈춤 축제", "하회 탈춤 공연", "Mask dance", "Andong"},
    {"Hwaseong Fortress", "수원화성", "화성 성곽", "정조의 화성", "Suwon fortress", "Suwon"},
    {"Gyeongbokgung Palace", "경복궁", "경복궁 궁궐", "조선 법궁", "Main royal palace", "Seoul"},
    {"Jeju Fire Festival", "제주들불축제", "새별오름 들불축제", "제주 들불 놀이", "Fire festival", "Jeju"},
    {"Hallasan National Park", "한라산", "한라산 국립공원", "제주 한라산", "Mount Halla", "Jeju"},
    {"Cheonggyecheon Stream", "청계천", "청계천 복원", "서울 청계천", "Restored stream", "Seoul"},
    {"N Seoul Tower", "남산서울타워", "엔서울타워", "남산 타워", "Namsan tower", "Seoul"},
    {"Haeundae Beach", "해운대해수욕장", "해운대 해변", "부산 해운대", "Haeundae", "Busan"},
    {"Seoraksan National Park", "설악산", "설악산 국립공원", "속초 설악산", "Mount Seorak", "Sokcho"},
    {"Bulguksa Temple", "불국사", "경주 불국사", "불국사 석가탑", "Buddhist temple", "Gyeongju"},
    {"Jongmyo Shrine", "종묘", "종묘 제례", "서울 종묘", "Royal shrine", "Seoul"},
    {"Hangul Day", "한글날", "훈민정음 반포 기념일", "한글 기념일", "Korean alphabet day", "Seoul"},
    {"Chuseok Harvest Festival", "추석", "한가위", "중추절", "Korean thanksgiving", "Korea"},
    {"Gangneung Danoje Festival", "강릉단오제", "강릉 단오 축제", "단오굿", "Dano festival", "Gangneung"},
    {"Hahoe Folk Village", "안동하회마을", "하회 민속마을", "하회마을", "Folk village", "Andong"},
    {"Daegu Chimac Festival", "대구치맥페스티벌", "치맥 축제", "대구 치킨 맥주 축제", "Chimac", "Daegu"},
    {"Incheon Bridge", "인천대교", "인천 대교 개통", "영종 인천대교", "Incheon sea bridge", "Incheon"},
};

std::string lower_ascii(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

constexpr const char* kDistractorSubjects[] = {
    "the annual summer festival", "the national film week", "the city marathon", "the harbor fireworks show",
    "the spring flower parade",   "the old royal palace",   "the mountain trail", "the riverside market",
    "the international expo",     "the folk music fair",
};

constexpr const char* kDistractorFrames[] = {
    "When was the first time the event began? Visitors often ask when {s} first began and who "
    "organized it. Local guides say {s} began as a small gathering.",
    "A travel blog post: when was {s} first held, and when did it begin to draw crowds? The first "
    "edition of {s} was modest.",
    "History notes: the first time {s} was held is disputed. When did it begin? Records of {s} "
    "mention several early dates.",
};

}  // namespace

ToyExperiment toy_experiment() {
  ToyExperiment ex;
  const auto ko = lang("ko");
  const auto en = LanguageCode::english();
  std::size_t n = 0;
  for (const auto& e : kEntities) {
    ++n;
    const std::string wpid = std::to_string(70000 + n);
    const std::string ko_name = e.ko;
    Passage gold;
    gold.doc_id = "ko-" + padded(n, 2);
    gold.lang = ko;
    gold.wpid = wpid;
    gold.text = ko_name + "(" + e.alias1 + ")은 " + e.alias2 + "(이)라고도 불린다. " + ko_name +
                "의 처음 시작은 언제였을까. 기록에 따르면 " + ko_name + "은 지역 주민들이 처음 시작하였다.";
    ex.corpus.passages.push_back(gold);

    CueExample c;
    c.query_id = "toy-" + padded(n, 2);
    c.lang = ko;
    c.q_local = ko_name + "의 처음 시작은 언제였나요";
    c.q_glob = "when was the first time the " + lower_ascii(e.en) + " began";
    c.cue = {"South Korea", ko, true, 0.9, "Korean landmark or event"};
    c.bundle.en_title = e.en;
    c.bundle.local_title = ko_name;
    c.bundle.aliases_en = {e.en_alias};
    c.bundle.aliases_local = {e.alias1, e.alias2};
    c.bundle.extra_disambig = std::string(e.place) + " Korea";
    ex.cases.push_back({c, wpid});
  }
  std::size_t d = 0;
  for (const char* frame : kDistractorFrames) {
    for (const char* subject : kDistractorSubjects) {
      ++d;
      std::string body = frame;
      for (std::size_t pos; (pos = body.find("{s}")) != std::string::npos;) body.replace(pos, 3, subject);
      ex.corpus.passages.push_back({"en-" + padded(d, 2), en, body, std::to_string(80000 + d)});
    }
  }
  return ex;
}

}  // namespace delp::fixtures
