// Copyright 2026 The repqc Authors
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


#include <benchmark/benchmark.h>

#include <map>

#include "repqc/depgraph.hpp"
#include "repqc/generator.hpp"
#include "repqc/grouping.hpp"
#include "repqc/repqc.hpp"
#include "repqc/scoring.hpp"

namespace {

using namespace repqc;

const Accelerator& design(std::size_t decoys) {
  static std::map<std::size_t, Accelerator> cache;
  auto it = cache.find(decoys);
  if (it == cache.end()) {
    GenConfig cfg;
    cfg.decoy_ffs = decoys;
    cfg.seed = 1;
    it = cache.emplace(decoys, generate_accelerator(cfg)).first;
  }
  return it->second;
}

void BM_Generate(benchmark::State& state) {
  GenConfig cfg;
  cfg.decoy_ffs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    cfg.seed++;
    benchmark::DoNotOptimize(generate_accelerator(cfg));
  }
}
BENCHMARK(BM_Generate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Dependencies(benchmark::State& state) {
  const Netlist& n = design(static_cast<std::size_t>(state.range(0))).netlist;
  for (auto _ : state) benchmark::DoNotOptimize(extract_dependencies(n));
  state.counters["ffs"] = static_cast<double>(n.num_flip_flops());
}
BENCHMARK(BM_Dependencies)->Arg(1000)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_ScoreAndGroup(benchmark::State& state) {
  const DependencyGraph g =
      extract_dependencies(design(static_cast<std::size_t>(state.range(0))).netlist);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_zscores(g));
    benchmark::DoNotOptimize(group_by_levels(compute_levels(g)));
  }
}
BENCHMARK(BM_ScoreAndGroup)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const Netlist& n = design(static_cast<std::size_t>(state.range(0))).netlist;
  const PipelineConfig pc;
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(n, pc));
}
BENCHMARK(BM_Pipeline)->Arg(1000)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

}  // namespace
