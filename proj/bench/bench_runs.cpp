// Copyright 2026 The ditomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "ditomo/benchmark.hpp"

namespace {

ditomo::BenchmarkConfig bench_config(size_t runs) {
    ditomo::BenchmarkConfig config;
    config.runs = runs;
    config.master_seed = 7;
    return config;
}

void BM_RunsSerial(benchmark::State &state) {
    ditomo::RunContext ctx(bench_config(static_cast<size_t>(state.range(0))));
    auto items = ditomo::work_items(ctx.config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ditomo::execute_runs_serial(ctx, items));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(items.size()));
}

void BM_RunsParallel(benchmark::State &state) {
    ditomo::RunContext ctx(bench_config(static_cast<size_t>(state.range(0))));
    auto items = ditomo::work_items(ctx.config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ditomo::execute_runs_parallel(ctx, items, 0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(items.size()));
}

}  // namespace

BENCHMARK(BM_RunsSerial)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RunsParallel)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
