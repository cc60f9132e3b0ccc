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

#include "oracles.hpp"
#include "qompress/random.hpp"
#include "qompress/schemes.hpp"

using namespace qompress;

namespace {

PureState expected_output(const PureState &psi, const TriggerSet &c1, const TriggerSet &c2) {
    return PureState(psi.dims(), oracle::mcz(c1.dimension(), c1.indices(), c2.dimension(), c2.indices()) * psi.amps());
}

void expect_all_branches(const SchemeResult &r, const PureState &want, double tol = 1e-10) {
    ASSERT_FALSE(r.branches.empty());
    for (const auto &b : r.branches) {
        EXPECT_GE(fidelity_up_to_phase(b.output, want), 1 - tol) << to_string(b.label);
    }
}

}  // namespace

TEST(StateDependent, QfaConfigurationOnRandomInputs) {
    Rng rng(31);
    TriggerSet c1(8, {3, 7}), c2(2, {1});
    for (int trial = 0; trial < 20; trial++) {
        auto psi1 = random_state({8}, rng), psi2 = random_state({2}, rng);
        auto r = run_state_dependent(psi1, psi2, c1, c2, BsmModel::linear_optics());
        expect_all_branches(r, expected_output(tensor(psi1, psi2), c1, c2));
        ASSERT_TRUE(r.success_exact.has_value());
        EXPECT_EQ(*r.success_exact, Rational(1, 8));
        EXPECT_NEAR(r.postselection_probability, 0.25, 1e-10);
        EXPECT_EQ(r.ancilla_count, 2u);
        EXPECT_EQ(r.nonlocal_gate_count, 1u);
    }
}

TEST(StateDependent, IdealModelGivesOneQuarter) {
    Rng rng(32);
    TriggerSet c1(4, {0, 2}), c2(4, {1, 2, 3});
    auto psi1 = random_state({4}, rng), psi2 = random_state({4}, rng);
    auto r = run_state_dependent(psi1, psi2, c1, c2, BsmModel::ideal());
    ASSERT_EQ(r.branches.size(), 4u);
    for (const auto &b : r.branches) EXPECT_NEAR(b.probability, 0.25, 1e-10);
    expect_all_branches(r, expected_output(tensor(psi1, psi2), c1, c2));
    EXPECT_EQ(*r.success_exact, Rational(1, 4));
}

TEST(StateDependent, TwoLevelCaseOnBasisInputs) {
    // Trigger on the top level only: the textbook two-level CZ.
    TriggerSet c1(3, {2}), c2(3, {2});
    for (std::size_t m = 0; m < 3; m++)
        for (std::size_t n = 0; n < 3; n++) {
            auto psi1 = PureState::basis(3, m), psi2 = PureState::basis(3, n);
            auto r = run_state_dependent(psi1, psi2, c1, c2, BsmModel::linear_optics());
            double sign = (m == 2 && n == 2) ? -1 : 1;
            for (const auto &b : r.branches) {
                EXPECT_NEAR(std::abs(b.output[m * 3 + n] - Complex(sign)), 0, 1e-10) << m << n;
            }
        }
}

TEST(StateDependent, InputWithoutTriggerWeight) {
    TriggerSet c1(4, {1, 3}), c2(2, {1});
    auto psi1 = PureState::basis(4, 0);
    auto psi2 = PureState::from_amplitudes({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
    auto r = run_state_dependent(psi1, psi2, c1, c2, BsmModel::linear_optics());
    expect_all_branches(r, tensor(psi1, psi2));
    EXPECT_EQ(*r.success_exact, Rational(1, 8));
}

TEST(StateDependent, EntangledInputWithSingletonTriggers) {
    Rng rng(33);
    TriggerSet c1(4, {2}), c2(3, {0});
    auto xi1 = PureState::basis(2, 0), xi2 = PureState::basis(2, 0);
    for (int trial = 0; trial < 10; trial++) {
        auto reg = random_state({4, 3}, rng);
        auto r = run_state_dependent(reg, 0, 1, c1, c2, xi1, xi2, BsmModel::linear_optics());
        expect_all_branches(r, expected_output(reg, c1, c2));
    }
}

TEST(StateDependent, EntangledInputWithLargerTriggerSetIsRejected) {
    // One ancilla profile cannot match both trigger profiles of an entangled
    // input; the compressed ancilla then leaks out of its qubit subspace.
    TriggerSet c1(4, {1, 2}), c2(2, {1});
    Vector v = Vector::Zero(8);
    v[1 * 2 + 0] = 1 / std::sqrt(2.0);  // |1>|0>
    v[2 * 2 + 1] = 1 / std::sqrt(2.0);  // |2>|1>
    PureState reg({4, 2}, v);
    auto xi1 = PureState::from_amplitudes({1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0});
    EXPECT_THROW(run_state_dependent(reg, 0, 1, c1, c2, xi1, PureState::basis(2, 0), BsmModel::ideal()),
                 std::domain_error);
}

TEST(StateDependent, SpectatorSubsystemsAreUntouched) {
    Rng rng(34);
    TriggerSet c1(2, {1}), c2(4, {0, 3});
    auto spectator = random_state({3}, rng);
    auto psi1 = random_state({2}, rng), psi2 = random_state({4}, rng);
    // Register (psi2, spectator, psi1), gate on (2, 0).
    auto reg = tensor(tensor(psi2, spectator), psi1);
    auto ancilla1 = prepare_ancilla(psi1, c1), ancilla2 = prepare_ancilla(psi2, c2);
    auto r = run_state_dependent(reg, 2, 0, c1, c2, ancilla1.xi, ancilla2.xi, BsmModel::linear_optics());
    auto flipped = apply(u_mcz(c1, c2).on({2, 0}), reg);
    expect_all_branches(r, flipped);
}

TEST(StateDependent, RejectsInconsistentArguments) {
    auto psi = PureState::basis(4, 0);
    EXPECT_THROW(
        run_state_dependent(psi, PureState::basis(2, 0), TriggerSet(3, {1}), TriggerSet(2, {1}), BsmModel::ideal()),
        std::invalid_argument);
    auto reg = tensor(psi, PureState::basis(2, 0));
    EXPECT_THROW(
        run_state_dependent(
            reg, 0, 0, TriggerSet(4, {1}), TriggerSet(4, {1}), PureState::basis(2, 0), PureState::basis(2, 0),
            BsmModel::ideal()),
        std::invalid_argument);
}

TEST(StateDependent, EmptyHeraldSetThrows) {
    auto model = BsmModel::heralding({});
    EXPECT_THROW(
        run_state_dependent(PureState::basis(2, 1), PureState::basis(2, 1), TriggerSet(2, {1}), TriggerSet(2, {1}), model),
        std::runtime_error);
}

TEST(OTilde, IsControlledFlipOnTriggerLevels) {
    TriggerSet c(4, {1, 3});
    auto u = build_O_tilde(c).matrix();
    for (std::size_t m = 0; m < 4; m++)
        for (std::size_t a = 0; a < 2; a++) {
            std::size_t to = c.contains(m) ? 1 - a : a;
            EXPECT_NEAR(std::abs(u(static_cast<Eigen::Index>(m * 2 + to), static_cast<Eigen::Index>(m * 2 + a)) - Complex(1)), 0, 1e-14);
        }
}

TEST(OTilde, ResourceStateAmplitudes) {
    Rng rng(35);
    TriggerSet c(8, {3, 7});
    auto psi = random_state({8}, rng);
    auto reg = tensor(psi, PureState::basis(2, 0));
    for (auto mode : {GateExecution::Logical, GateExecution::Optical}) {
        auto e = apply_O_tilde(reg, 0, 1, c, BsmModel::linear_optics(), mode);
        for (std::size_t m = 0; m < 8; m++) {
            std::size_t flag = c.contains(m) ? 1 : 0;
            EXPECT_NEAR(std::abs(e.state[m * 2 + flag] - psi[m]), 0, 1e-12);
            EXPECT_NEAR(std::abs(e.state[m * 2 + 1 - flag]), 0, 1e-12);
        }
        ASSERT_TRUE(e.exact.has_value());
        EXPECT_EQ(*e.exact, Rational(1, 64));
    }
}

TEST(StateIndependent, EntangledInputsLogicalAndOptical) {
    Rng rng(36);
    TriggerSet c1(4, {0, 2}), c2(2, {1});
    for (auto mode : {GateExecution::Logical, GateExecution::Optical}) {
        for (int trial = 0; trial < 5; trial++) {
            auto reg = random_state({4, 2}, rng);
            auto r = run_state_independent(reg, 0, 1, c1, c2, BsmModel::linear_optics(), mode);
            expect_all_branches(r, expected_output(reg, c1, c2));
            ASSERT_TRUE(r.success_exact.has_value());
            EXPECT_EQ(*r.success_exact, Rational(1, 2) * pow(Rational(1, 8), 3));
            EXPECT_EQ(r.ancilla_count, 8u);
            EXPECT_EQ(r.nonlocal_gate_count, 3u);
        }
    }
}

TEST(StateIndependent, IdealModelProbability) {
    Rng rng(37);
    TriggerSet c1(3, {1}), c2(3, {0, 2});
    auto r = run_state_independent(random_state({3}, rng), random_state({3}, rng), c1, c2, BsmModel::ideal(),
                                   GateExecution::Optical);
    EXPECT_EQ(*r.success_exact, pow(Rational(1, 4), 3));
}

TEST(SuccessProbability, ClosedForms) {
    auto lo = BsmModel::linear_optics();
    EXPECT_EQ(success_probability(Scheme::StateDependent, 2, 1, lo), Rational(1, 8));
    EXPECT_EQ(success_probability(Scheme::StateDependent, 2, 1, BsmModel::ideal()), Rational(1, 4));
    EXPECT_EQ(success_probability(Scheme::StateIndependent, 2, 1, lo), Rational(1, 1024));
    EXPECT_EQ(success_probability(Scheme::StateIndependent, 1, 1, lo), Rational(1, 128));
    EXPECT_THROW(success_probability(Scheme::StateDependent, 0, 1, lo), std::invalid_argument);
}
