// Copyright 2026 The quditsim Authors
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

#include <benchmark/benchmark.h>

#include "quditsim/experiments.hpp"

using namespace quditsim;

namespace {

PureState sampled_state(int d) {
  StateSampler sampler(d, 42);
  return sampler.sample();
}

void BM_BuildCluster(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_cluster(ClusterGraph::linear(n), d, {}));
}
BENCHMARK(BM_BuildCluster)->Args({2, 5})->Args({4, 5});

void BM_ApplyAllAd(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const DensityMatrix rho = to_density(build_cluster(ClusterGraph::linear(n), d, {}));
  const ChannelSpec spec{ChannelKind::AmplitudeDamping, 1.0, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(apply_all(rho, spec));
}
BENCHMARK(BM_ApplyAllAd)->Args({2, 5})->Args({3, 4})->Args({4, 4});

void BM_TransferDensity(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const PureState input = sampled_state(d);
  const std::optional<ChannelSpec> spec = ChannelSpec{ChannelKind::AmplitudeDamping, 1.0, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(transfer(n, d, input, spec));
}
BENCHMARK(BM_TransferDensity)->Args({3, 3})->Args({4, 3});

void BM_TransferHeisenberg(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const PureState input = sampled_state(d);
  const std::optional<ChannelSpec> spec = ChannelSpec{ChannelKind::AmplitudeDamping, 1.0, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(transfer_fidelity(n, d, input, spec));
}
BENCHMARK(BM_TransferHeisenberg)->Args({3, 3})->Args({4, 3})->Args({4, 5});

void BM_QuasiPure(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const PureState cluster = build_cluster(ClusterGraph::linear(2), d, {});
  const ChannelSpec spec{ChannelKind::AmplitudeDamping, 1.0, 0.4};
  const DensityMatrix rho = apply_all(to_density(cluster), spec);
  const Bipartition split{{1}};
  for (auto _ : state) benchmark::DoNotOptimize(quasi_pure_concurrence(rho, split));
}
BENCHMARK(BM_QuasiPure)->Arg(3)->Arg(4);

void BM_PdKraus(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pd_kraus(d, 1.3));
}
BENCHMARK(BM_PdKraus)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
