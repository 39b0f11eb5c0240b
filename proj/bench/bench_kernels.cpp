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

// Serial references against the OpenMP kernels: MLRS over a query set and
// batched toy search.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "delp/fixtures.hpp"
#include "delp/metrics.hpp"
#include "delp/toyretriever.hpp"

namespace {

using namespace delp;

struct RunPair {
  RetrievalRun init;
  RetrievalRun rerank;
};

const RunPair& runs(int queries) {
  static std::map<int, RunPair> cache;
  auto [it, fresh] = cache.try_emplace(queries);
  if (!fresh) return it->second;
  const auto& langs = LanguageSet::standard();
  const auto inventory = langs.languages();
  fixtures::Rng rng(static_cast<std::uint64_t>(queries));
  auto& rp = it->second;
  rp.init.query_lang = rp.rerank.query_lang = langs.parse("ko");
  for (int q = 0; q < queries; ++q) {
    const std::string qid = "q" + std::to_string(q);
    CandidateList list;
    for (int r = 1; r <= 50; ++r) {
      RankedCandidate c;
      c.query_id = qid;
      c.doc_id = qid + "-" + std::to_string(r);
      c.rank = r;
      c.doc_lang = inventory[rng.below(inventory.size())];
      list.push_back(c);
    }
    CandidateList moved = list;
    rng.shuffle(moved);
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i].rank = static_cast<int>(i) + 1;
    rp.init.lists[qid] = std::move(list);
    rp.rerank.lists[qid] = std::move(moved);
  }
  return rp;
}

const ToyIndex& toy_index() {
  static const ToyIndex index = ToyIndex::build(fixtures::toy_experiment().corpus);
  return index;
}

std::vector<ToyQuery> toy_queries(int copies) {
  std::vector<ToyQuery> out;
  const auto cases = fixtures::toy_experiment().cases;
  for (int c = 0; c < copies; ++c) {
    for (const auto& tc : cases) {
      out.push_back({tc.example.query_id + "-" + std::to_string(c), tc.example.lang, tc.example.q_local});
    }
  }
  return out;
}

void BM_MlrsSerial(benchmark::State& state) {
  const auto& rp = runs(static_cast<int>(state.range(0)));
  const auto target = LanguageSet::standard().parse("en");
  for (auto _ : state) benchmark::DoNotOptimize(mlrs_pair_serial(rp.init, rp.rerank, target));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MlrsOpenMP(benchmark::State& state) {
  const auto& rp = runs(static_cast<int>(state.range(0)));
  const auto target = LanguageSet::standard().parse("en");
  for (auto _ : state) benchmark::DoNotOptimize(mlrs_pair(rp.init, rp.rerank, target));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_ToySearchSerial(benchmark::State& state) {
  const auto queries = toy_queries(static_cast<int>(state.range(0)));
  const auto ko = LanguageSet::standard().parse("ko");
  for (auto _ : state) benchmark::DoNotOptimize(search_batch_serial(toy_index(), queries, ko, 10));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(queries.size()));
}

void BM_ToySearchOpenMP(benchmark::State& state) {
  const auto queries = toy_queries(static_cast<int>(state.range(0)));
  const auto ko = LanguageSet::standard().parse("ko");
  for (auto _ : state) benchmark::DoNotOptimize(search_batch(toy_index(), queries, ko, 10));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(queries.size()));
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_MlrsSerial)->Arg(1000)->Arg(10000);
BENCHMARK(BM_MlrsOpenMP)->Arg(1000)->Arg(10000);
BENCHMARK(BM_ToySearchSerial)->Arg(5)->Arg(50);
BENCHMARK(BM_ToySearchOpenMP)->Arg(5)->Arg(50);

BENCHMARK_MAIN();
