/*
 * Copyright (c) 2026, The paxos-hist Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference explorer against the OpenMP one on the same scopes.

#include <benchmark/benchmark.h>

#include "paxos_hist/explorer.hpp"

using namespace paxos_hist;

namespace {

Scope bench_scope(int64_t which) {
  switch (which) {
    case 0: return make_basic_scope(Variant::Basic, 3, 2, 2);
    case 1: return make_multi_scope(Variant::MultiPreempt, 3, 1, 2, 2, 1, 1);
    default: return make_basic_scope(Variant::Basic, 3, 3, 2);
  }
}

void BM_ExploreSerial(benchmark::State& state) {
  const Scope scope = bench_scope(state.range(0));
  std::size_t states = 0;
  for (auto _ : state) {
    const auto r = explore_serial(scope);
    states = r.states_visited;
    benchmark::DoNotOptimize(states);
  }
  state.counters["states"] = static_cast<double>(states);
}

void BM_ExploreParallel(benchmark::State& state) {
  const Scope scope = bench_scope(state.range(0));
  ExploreOptions o;
  o.workers = static_cast<int>(state.range(1));
  std::size_t states = 0;
  for (auto _ : state) {
    const auto r = explore(scope, o);
    states = r.states_visited;
    benchmark::DoNotOptimize(states);
  }
  state.counters["states"] = static_cast<double>(states);
}

}  // namespace

BENCHMARK(BM_ExploreSerial)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExploreParallel)
    ->ArgsProduct({{0, 1, 2}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
