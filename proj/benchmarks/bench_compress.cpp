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

#include "qompress/compress.hpp"

using namespace qompress;

namespace {

void BM_CostReportAdder(benchmark::State &state) {
    auto circuit = qfa_circuit();
    auto layout = qfa_layout();
    for (auto _ : state) {
        benchmark::DoNotOptimize(cost_report(circuit, layout));
    }
}
BENCHMARK(BM_CostReportAdder);

// A chain of CZ gates across two qudits of `n` qubits each.
void BM_CostReportChain(benchmark::State &state) {
    auto n = static_cast<std::size_t>(state.range(0));
    QuditLayout layout;
    layout.groups.resize(2);
    for (std::size_t q = 0; q < n; q++) {
        layout.groups[0].push_back(q);
        layout.groups[1].push_back(n + q);
    }
    CircuitIR circuit{2 * n, {}};
    for (std::size_t q = 0; q < n; q++) circuit.gates.push_back(Gate{GateKind::CZ, {q, 2 * n - 1 - q}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(cost_report(circuit, layout));
    }
}
BENCHMARK(BM_CostReportChain)->DenseRange(2, 6, 2);

void BM_SimulateAdder(benchmark::State &state) {
    SimulateOptions options{Backend::StateIndependentMCZ, BsmModel::linear_optics(), GateExecution::Logical};
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_compressed(qfa_circuit(), qfa_layout(), options));
    }
}
BENCHMARK(BM_SimulateAdder)->Unit(benchmark::kMillisecond);

}  // namespace
