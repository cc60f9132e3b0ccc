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

#include <vector>

#include "qompress/optics.hpp"

using namespace qompress;

namespace {

void BM_EvolveTwoPhoton(benchmark::State &state) {
    auto d = static_cast<std::size_t>(state.range(0));
    std::vector<std::size_t> triggers;
    for (std::size_t i = 0; i < d; i += 2) triggers.push_back(i);
    auto mesh = build_smr_mesh(d, triggers);
    auto in = two_photon_input(0, d - 1, d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_two_photon(mesh, in));
    }
}
BENCHMARK(BM_EvolveTwoPhoton)->RangeMultiplier(2)->Range(2, 32);

void BM_CoincidenceOperator(benchmark::State &state) {
    auto d = static_cast<std::size_t>(state.range(0));
    std::vector<std::size_t> triggers{0, d / 2};
    auto pairing = make_pairing(d, triggers);
    for (auto _ : state) {
        benchmark::DoNotOptimize(smr_coincidence_operator(pairing));
    }
}
BENCHMARK(BM_CoincidenceOperator)->RangeMultiplier(2)->Range(4, 32);

}  // namespace
