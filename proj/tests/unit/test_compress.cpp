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

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <numeric>

#include "oracles.hpp"
#include "qompress/compress.hpp"
#include "qompress/random.hpp"

using namespace qompress;

namespace {

const std::string kDataDir = QOMPRESS_DATA_DIR;

std::size_t line_of_error(std::string_view text) {
    try {
        parse_circuit(text);
    } catch (const ParseError &e) {
        return e.line();
    }
    return 0;
}

std::string path_of_error(std::string_view text) {
    try {
        parse_circuit(text);
    } catch (const ParseError &e) {
        return e.path();
    }
    return "<none>";
}

// Random partition of n qubits into ordered groups with shuffled members.
QuditLayout random_layout(std::size_t n, std::size_t groups, Rng &rng) {
    std::vector<std::size_t> q(n);
    std::iota(q.begin(), q.end(), 0);
    std::shuffle(q.begin(), q.end(), rng);
    QuditLayout l;
    l.groups.resize(groups);
    for (std::size_t i = 0; i < n; i++) l.groups[i < groups ? i : rng() % groups].push_back(q[i]);
    return l;
}

}  // namespace

TEST(Parse, BundledQfaDocument) {
    auto c = parse_circuit(oracle::read_file(kDataDir + "/qfa_circuit.json"));
    EXPECT_EQ(c.qubits, 4u);
    ASSERT_EQ(c.gates.size(), 5u);
    EXPECT_EQ(c.gates[0], (Gate{GateKind::CCX, {0, 1, 3}}));
    EXPECT_EQ(c.gates[1], (Gate{GateKind::CX, {0, 1}}));
    EXPECT_EQ(c.gates[2], (Gate{GateKind::CCX, {1, 2, 3}}));
    EXPECT_EQ(c.gates[3], (Gate{GateKind::CX, {1, 2}}));
    EXPECT_EQ(c.gates[4], (Gate{GateKind::CX, {0, 1}}));
    EXPECT_EQ(c.gates, qfa_circuit().gates);
    auto l = parse_layout(oracle::read_file(kDataDir + "/qfa_layout.json"));
    EXPECT_EQ(l.groups, qfa_layout().groups);
}

TEST(Parse, EmptyGateListIsValid) {
    auto c = parse_circuit(R"({"qubits": 2, "gates": []})");
    EXPECT_TRUE(c.gates.empty());
}

TEST(Parse, SyntaxErrorsCarryLineAndColumn) {
    EXPECT_EQ(line_of_error("{\n  \"qubits\": 4,\n  \"gates\": [\n    {\"kind\": \"cx\" \"operands\": [0, 1]}\n  ]\n}"), 4u);
    try {
        parse_circuit("{\"qubits\": 4,,}");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 14u);
    }
}

TEST(Parse, SemanticErrorsCarryPath) {
    EXPECT_EQ(path_of_error(R"({"qubits": 4, "gates": [{"kind": "cx", "operands": [0, 9]}]})"), "gates[0]");
    EXPECT_EQ(path_of_error(R"({"qubits": 4, "gates": [{"kind": "cx", "operands": [1, 1]}]})"), "gates[0]");
    EXPECT_EQ(path_of_error(R"({"qubits": 4, "gates": [{"kind": "h", "operands": [0]}, {"kind": "swap", "operands": [0, 1]}]})"),
              "gates[1].kind");
    EXPECT_EQ(path_of_error(R"({"qubits": 4, "gates": [{"kind": "ccx", "operands": [0, 1]}]})"), "gates[0]");
    EXPECT_EQ(path_of_error(R"({"qubits": 4, "gates": [], "extra": 1})"), "extra");
    EXPECT_EQ(path_of_error(R"({"qubits": 4, "gates": [{"kind": "x", "operands": [0], "angle": 1}]})"),
              "gates[0].angle");
    EXPECT_EQ(path_of_error(R"({"qubits": -1, "gates": []})"), "qubits");
    EXPECT_EQ(path_of_error(R"({"gates": []})"), "$");
}

TEST(Parse, LayoutValidation) {
    EXPECT_THROW(parse_layout(R"({"groups": [[0, 1], [1, 2]]})"), ParseError);
    EXPECT_THROW(parse_layout(R"({"groups": [[0, 2]]})"), ParseError);
    EXPECT_THROW(parse_layout(R"({"groups": [[]]})"), ParseError);
    EXPECT_THROW(parse_layout(R"({"groups": [[0]], "dims": [2]})"), ParseError);
    auto l = parse_layout(R"({"groups": [[2, 0], [1]]})");
    EXPECT_EQ(l.dims(), (std::vector<std::size_t>{4, 2}));
    EXPECT_EQ(l.bit_of(2), 2u);
    EXPECT_EQ(l.bit_of(0), 1u);
}

TEST(Classify, QfaLayout) {
    auto classes = classify_gates(qfa_circuit(), qfa_layout());
    std::vector<bool> local;
    for (const auto &c : classes) local.push_back(c.local);
    EXPECT_EQ(local, (std::vector<bool>{false, true, false, true, true}));
    EXPECT_EQ(classes[2].groups, (std::vector<std::size_t>{0, 1}));
}

TEST(Classify, ExtremeLayouts) {
    auto c = qfa_circuit();
    for (const auto &g : classify_gates(c, QuditLayout{{{0, 1, 2, 3}}})) EXPECT_TRUE(g.local);
    for (const auto &g : classify_gates(c, QuditLayout{{{0}, {1}, {2}, {3}}})) EXPECT_FALSE(g.local);
}

TEST(Triggers, QfaGateC) {
    auto t = trigger_sets(Gate{GateKind::CCX, {1, 2, 3}}, qfa_layout());
    EXPECT_EQ(t.c1, TriggerSet(8, {3, 7}));
    EXPECT_EQ(t.c2, TriggerSet(2, {1}));
    EXPECT_EQ(t.r1, 1u);
    EXPECT_EQ(t.r2, 0u);
    auto first = trigger_sets(Gate{GateKind::CCX, {0, 1, 3}}, qfa_layout());
    EXPECT_EQ(first.c1, TriggerSet(8, {6, 7}));
}

TEST(Triggers, NoRemovedQubitsGivesTopLevels) {
    QuditLayout l{{{0, 1}, {2, 3}}};
    auto t = trigger_sets(Gate{GateKind::MCZ, {0, 1, 2, 3}}, l);
    EXPECT_EQ(t.c1, TriggerSet(4, {3}));
    EXPECT_EQ(t.c2, TriggerSet(4, {3}));
    EXPECT_EQ(t.r1 + t.r2, 0u);
}

TEST(Triggers, RejectsLocalAndThreeGroupGates) {
    QuditLayout l{{{0}, {1}, {2}}};
    EXPECT_THROW(trigger_sets(Gate{GateKind::CCZ, {0, 1, 2}}, l), std::invalid_argument);
    EXPECT_THROW(trigger_sets(Gate{GateKind::CZ, {0, 1}}, QuditLayout{{{0, 1}}}), std::invalid_argument);
}

TEST(Triggers, SizeIsTwoToTheRExhaustive) {
    // Every two-group layout with group sizes <= 3 and every participating
    // subset that touches both groups.
    for (std::size_t g1 = 1; g1 <= 3; g1++)
        for (std::size_t g2 = 1; g2 <= 3; g2++) {
            QuditLayout l;
            l.groups.resize(2);
            for (std::size_t q = 0; q < g1; q++) l.groups[0].push_back(q);
            for (std::size_t q = 0; q < g2; q++) l.groups[1].push_back(g1 + q);
            for (std::size_t m1 = 1; m1 < (1u << g1); m1++)
                for (std::size_t m2 = 1; m2 < (1u << g2); m2++) {
                    Gate g{GateKind::MCZ, {}};
                    for (std::size_t q = 0; q < g1; q++)
                        if (m1 >> q & 1) g.operands.push_back(q);
                    for (std::size_t q = 0; q < g2; q++)
                        if (m2 >> q & 1) g.operands.push_back(g1 + q);
                    auto t = trigger_sets(g, l);
                    EXPECT_EQ(t.c1.size(), std::size_t{1} << t.r1);
                    EXPECT_EQ(t.c2.size(), std::size_t{1} << t.r2);
                    EXPECT_EQ(t.r1, g1 - static_cast<std::size_t>(__builtin_popcount(m1)));
                }
        }
}

TEST(Triggers, MczOnTriggersEqualsQubitMczThroughBijection) {
    // Random layouts of up to 6 qubits; exhaustive over participating sets
    // for each layout.
    Rng rng(41);
    for (std::size_t n = 2; n <= 6; n++) {
        for (int trial = 0; trial < 6; trial++) {
            auto l = random_layout(n, 2, rng);
            for (std::size_t mask = 1; mask < (std::size_t{1} << n); mask++) {
                std::vector<std::size_t> on;
                for (std::size_t q = 0; q < n; q++)
                    if (mask >> q & 1) on.push_back(q);
                Gate g{GateKind::MCZ, on};
                if (on.size() < 2 || classify_gates(CircuitIR{n, {g}}, l)[0].local) continue;
                auto t = trigger_sets(g, l);
                auto qudit = u_mcz(t.c1, t.c2).matrix();
                auto qubit = oracle::qubit_mcz_diagonal(n, on);
                for (std::size_t i = 0; i < (std::size_t{1} << n); i++) {
                    std::vector<std::uint8_t> bits(n);
                    for (std::size_t q = 0; q < n; q++) bits[q] = (i >> (n - 1 - q)) & 1;
                    auto j = static_cast<Eigen::Index>(index_of_bits(l, bits));
                    EXPECT_EQ(qudit(j, j), qubit[static_cast<Eigen::Index>(i)]);
                }
            }
        }
    }
}

TEST(Legality, QfaAndSimpleCases) {
    auto c = qfa_circuit();
    auto l = qfa_layout();
    EXPECT_TRUE(legality_state_dependent(c, 0, l).legal);
    auto second = legality_state_dependent(c, 2, l);
    EXPECT_FALSE(second.legal);
    EXPECT_EQ(second.blocking_gate, 0u);
    EXPECT_NE(second.reason.find("ccx(0,1,3)"), std::string::npos);

    CircuitIR local_first{4, {{GateKind::CX, {0, 1}}, {GateKind::H, {3}}, {GateKind::CCX, {1, 2, 3}}}};
    EXPECT_TRUE(legality_state_dependent(local_first, 2, l).legal);
}

TEST(Cost, QfaReport) {
    auto r = cost_report(qfa_circuit(), qfa_layout());
    ASSERT_EQ(r.nonlocal.size(), 2u);
    const auto &u = r.row(Backend::Uncompressed);
    EXPECT_EQ(u.gate_count, 9u);
    EXPECT_EQ(u.probability, pow(Rational(1, 9), 9));
    // Both Toffolis touch q3, so each contributes one non-local gate.
    const auto &s = r.row(Backend::StandardCompression);
    EXPECT_EQ(s.gate_count, 4u);
    EXPECT_EQ(s.probability, pow(Rational(1, 9), 4));
    const auto &sd = r.row(Backend::StateDependentMCZ);
    EXPECT_EQ(sd.gate_count, 2u);
    EXPECT_EQ(sd.probability, Rational(1, 64));
    EXPECT_FALSE(sd.legal);
    const auto &si = r.row(Backend::StateIndependentMCZ);
    EXPECT_EQ(si.gate_count, 6u);
    EXPECT_EQ(si.probability, pow(Rational(1, 2) * pow(Rational(1, 8), 3), 2));
    EXPECT_EQ(si.ancilla_count, 16u);
}

TEST(Cost, SingleGateCFromTheAdder) {
    CircuitIR c{4, {{GateKind::CCX, {1, 2, 3}}}};
    auto r = cost_report(c, qfa_layout());
    EXPECT_EQ(r.row(Backend::Uncompressed).gate_count, 3u);
    EXPECT_EQ(r.row(Backend::StandardCompression).gate_count, 2u);
    EXPECT_EQ(r.row(Backend::StandardCompression).probability, Rational(1, 81));
    EXPECT_EQ(r.row(Backend::StateDependentMCZ).gate_count, 1u);
    EXPECT_EQ(r.row(Backend::StateDependentMCZ).probability, Rational(1, 8));
    EXPECT_TRUE(r.row(Backend::StateDependentMCZ).legal);
    EXPECT_EQ(r.row(Backend::StateIndependentMCZ).gate_count, 3u);
    EXPECT_EQ(r.row(Backend::StateIndependentMCZ).probability, Rational(1, 1024));
    EXPECT_EQ(r.row(Backend::StateIndependentMCZ).ancilla_count, 8u);
}

TEST(Cost, NoNonLocalGates) {
    CircuitIR c{3, {{GateKind::H, {0}}, {GateKind::Z, {2}}}};
    auto r = cost_report(c, QuditLayout{{{0, 1}, {2}}});
    for (const auto &row : r.rows) {
        EXPECT_EQ(row.gate_count, 0u);
        EXPECT_EQ(row.probability, Rational(1));
        EXPECT_TRUE(row.legal);
    }
}

TEST(Cost, TwoRemovedPerSide) {
    // MCZ on one qubit of each 3-qubit group: r1 = r2 = 2.
    CircuitIR c{6, {{GateKind::MCZ, {0, 3}}}};
    auto r = cost_report(c, QuditLayout{{{0, 1, 2}, {3, 4, 5}}});
    EXPECT_EQ(r.row(Backend::StandardCompression).gate_count, 16u);
    EXPECT_EQ(r.row(Backend::StateIndependentMCZ).gate_count, 8u);
}

TEST(Cost, RejectsThreeGroupGate) {
    CircuitIR c{3, {{GateKind::CCZ, {0, 1, 2}}}};
    EXPECT_THROW(cost_report(c, QuditLayout{{{0}, {1}, {2}}}), std::invalid_argument);
}

TEST(Cost, CrossoverSymbolic) {
    // With a removed control on both sides the additive count never exceeds
    // the product count and ties only at (1, 1). With none removed on one
    // side the additive count is exactly one gate more.
    for (std::size_t a = 0; a <= 6; a++)
        for (std::size_t b = 0; b <= 6; b++) {
            CircuitIR c{a + b + 2, {}};
            QuditLayout l{{{}, {}}};
            for (std::size_t q = 0; q <= a; q++) l.groups[0].push_back(q);
            for (std::size_t q = 0; q <= b; q++) l.groups[1].push_back(a + 1 + q);
            c.gates.push_back({GateKind::CZ, {0, a + 1}});
            auto r = cost_report(c, l);
            auto standard = r.row(Backend::StandardCompression).gate_count;
            auto si = r.row(Backend::StateIndependentMCZ).gate_count;
            EXPECT_EQ(standard, std::size_t{1} << (a + b));
            EXPECT_EQ(si, (std::size_t{1} << a) + (std::size_t{1} << b));
            if (a >= 1 && b >= 1) {
                EXPECT_LE(si, standard);
                EXPECT_EQ(si == standard, a == 1 && b == 1);
            } else {
                EXPECT_EQ(si, standard + 1);
            }
        }
}

TEST(Cost, FloatRenderingRoundTrips) {
    Rng rng(42);
    for (int trial = 0; trial < 30; trial++) {
        std::size_t n = 3 + rng() % 4;
        auto l = random_layout(n, 2, rng);
        CircuitIR c{n, {}};
        for (int g = 0; g < 2; g++) {
            std::size_t a = l.groups[0][rng() % l.groups[0].size()];
            std::size_t b = l.groups[1][rng() % l.groups[1].size()];
            c.gates.push_back({GateKind::CZ, {a, b}});
        }
        auto r = cost_report(c, l);
        for (const auto &row : r.rows) {
            double f = to_double(row.probability);
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", f);
            EXPECT_EQ(std::strtod(buf, nullptr), f);
            // Nearest double: relative error within half an ulp.
            Rational back(f);
            Rational rel = (back - row.probability) / row.probability;
            EXPECT_LE(std::abs(to_double(rel)), 1.2e-16) << to_string(row.backend);
        }
    }
}

TEST(Normalize, CxBecomesHadamardSandwich) {
    auto n = normalize_to_cz(CircuitIR{2, {{GateKind::CX, {0, 1}}}});
    ASSERT_EQ(n.gates.size(), 3u);
    EXPECT_EQ(n.gates[0], (Gate{GateKind::H, {1}}));
    EXPECT_EQ(n.gates[1], (Gate{GateKind::CZ, {0, 1}}));
    Matrix product = gate_matrix(n.gates[2], {0, 1}) * gate_matrix(n.gates[1], {0, 1}) * gate_matrix(n.gates[0], {0, 1});
    EXPECT_LT((product - gate_matrix(Gate{GateKind::CX, {0, 1}}, {0, 1})).norm(), 1e-14);
}

TEST(Simulate, QfaTruthTableOnEveryBackend) {
    auto c = qfa_circuit();
    auto l = qfa_layout();
    for (auto backend : {Backend::Uncompressed, Backend::StandardCompression, Backend::StateIndependentMCZ}) {
        auto rows = simulate_compressed(c, l, SimulateOptions{backend, BsmModel::linear_optics(), GateExecution::Logical});
        ASSERT_EQ(rows.size(), 16u);
        for (const auto &row : rows) {
            if (row.input[3]) continue;
            ASSERT_TRUE(row.output_bits.has_value());
            auto want = oracle::full_adder(row.input[0], row.input[1], row.input[2]);
            const auto &out = *row.output_bits;
            EXPECT_EQ(out[0], row.input[0]);
            EXPECT_EQ(out[1], row.input[1]);
            EXPECT_EQ(out[2], want.sum);
            EXPECT_EQ(out[3], want.carry);
        }
    }
}

TEST(Simulate, StateDependentBackendNeedsLegality) {
    EXPECT_THROW(simulate_compressed(qfa_circuit(), qfa_layout(), SimulateOptions{Backend::StateDependentMCZ}),
                 std::invalid_argument);
    CircuitIR c{4, {{GateKind::CX, {0, 1}}, {GateKind::CCX, {1, 2, 3}}}};
    auto rows = simulate_compressed(c, qfa_layout(), SimulateOptions{Backend::StateDependentMCZ});
    for (const auto &row : rows) {
        ASSERT_TRUE(row.output_bits.has_value());
        int b = row.input[0] ^ row.input[1];
        EXPECT_EQ((*row.output_bits)[3], row.input[3] ^ (b & row.input[2]));
        EXPECT_EQ(*row.success_exact, Rational(1, 8));
    }
}

TEST(Simulate, IdentityCircuit) {
    CircuitIR c{3, {}};
    auto rows = simulate_compressed(c, QuditLayout{{{1}, {0, 2}}});
    for (const auto &row : rows) {
        ASSERT_TRUE(row.output_bits.has_value());
        EXPECT_EQ(*row.output_bits, row.input);
        EXPECT_EQ(*row.success_exact, Rational(1));
    }
}

TEST(Simulate, BitIndexBijection) {
    QuditLayout l{{{2, 0}, {1}}};
    for (std::size_t i = 0; i < 8; i++) EXPECT_EQ(index_of_bits(l, bits_of_index(l, i)), i);
    // q2 is the high bit of qudit 0: q2=1,q0=0,q1=1 -> mode 2 on qudit 0, 1 on qudit 1.
    EXPECT_EQ(index_of_bits(l, {0, 1, 1}), 2u * 2 + 1);
}
