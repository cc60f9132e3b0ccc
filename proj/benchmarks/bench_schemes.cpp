// Copyright 2026 The Qompress Authors
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

#include "qompress/random.hpp"
#include "qompress/schemes.hpp"

using namespace qompress;

namespace {

// Args: dimension of both qudits, triggers per qudit.
void BM_StateDependent(benchmark::State &state) {
    auto d = static_cast<std::size_t>(state.range(0));
    auto k = static_cast<std::size_t>(state.range(1));
    Rng rng(1);
    TriggerSet c1(d, random_subset(d, k, rng)), c2(d, random_subset(d, k, rng));
    auto psi1 = random_state({d}, rng), psi2 = random_state({d}, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_state_dependent(psi1, psi2, c1, c2, BsmModel::linear_optics()));
    }
}
BENCHMARK(BM_StateDependent)->Args({2, 1})->Args({4, 2})->Args({8, 2})->Args({8, 4})->Args({16, 4});

void BM_StateIndependent(benchmark::State &state) {
    auto d = static_cast<std::size_t>(state.range(0));
    auto k = static_cast<std::size_t>(state.range(1));
    auto execution = state.range(2) ? GateExecution::Optical : GateExecution::Logical;
    Rng rng(2);
    TriggerSet c1(d, random_subset(d, k, rng)), c2(2, {1});
    auto reg = random_state({d, 2}, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_state_independent(reg, 0, 1, c1, c2, BsmModel::linear_optics(), execution));
    }
}
BENCHMARK(BM_StateIndependent)
    ->Args({4, 2, 0})
    ->Args({8, 2, 0})
    ->Args({8, 4, 0})
    ->Args({4, 2, 1})
    ->Args({8, 2, 1})
    ->Unit(benchmark::kMicrosecond);

}  // namespace
