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

#include <array>

#include "qompress/qstate.hpp"
#include "qompress/random.hpp"

using namespace qompress;

namespace {

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++)
        for (Eigen::Index j = 0; j < a.cols(); j++)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

TEST(PureState, IndexIsBigEndian) {
    auto s = PureState::basis({3, 4, 2}, {2, 1, 1});
    EXPECT_EQ(s.index_of({2, 1, 1}), 2u * 8 + 1 * 2 + 1);
    EXPECT_EQ(s.digits_of(19), (std::vector<std::size_t>{2, 1, 1}));
    EXPECT_EQ(s[19], Complex(1));
    EXPECT_TRUE(s.is_normalized());
}

TEST(PureState, RejectsMismatchedAmplitudes) {
    EXPECT_THROW(PureState({2, 2}, Vector::Zero(3)), std::invalid_argument);
    EXPECT_THROW(PureState::basis({2, 2}, {0, 2}), std::out_of_range);
}

TEST(PureState, NormalizingZeroThrows) {
    PureState z({2}, Vector::Zero(2));
    EXPECT_THROW(z.normalized(), std::domain_error);
}

TEST(PureState, TensorMatchesKronecker) {
    Rng rng(1);
    auto a = random_state({3}, rng);
    auto b = random_state({2, 2}, rng);
    auto t = tensor(a, b);
    EXPECT_EQ(t.dims(), (std::vector<std::size_t>{3, 2, 2}));
    for (std::size_t i = 0; i < 3; i++)
        for (std::size_t j = 0; j < 4; j++) EXPECT_NEAR(std::abs(t[i * 4 + j] - a[i] * b[j]), 0, 1e-14);
}

TEST(Unitary, RejectsNonUnitary) {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 1) = 1;
    EXPECT_THROW(Unitary{m}, std::invalid_argument);
}

TEST(Apply, EmbeddingMatchesKroneckerOnEverySubsystemPair) {
    Rng rng(2);
    std::vector<std::size_t> dims{2, 3, 2};
    auto s = random_state(dims, rng);
    Matrix u = random_unitary(6, rng);
    // Targets (0, 1) in order: plain kron with identity on the last.
    auto out = apply(Unitary(u).on({0, 1}), s);
    Vector expect = kron(u, Matrix::Identity(2, 2)) * s.amps();
    EXPECT_LT((out.amps() - expect).norm(), 1e-12);

    // Targets (2, 0): u acts on (q2, q0) with q2 the more significant digit.
    Matrix v = random_unitary(4, rng);
    auto out2 = apply(Unitary(v).on({2, 0}), s);
    for (std::size_t i0 = 0; i0 < 2; i0++)
        for (std::size_t i1 = 0; i1 < 3; i1++)
            for (std::size_t i2 = 0; i2 < 2; i2++) {
                Complex acc = 0;
                for (std::size_t j0 = 0; j0 < 2; j0++)
                    for (std::size_t j2 = 0; j2 < 2; j2++)
                        acc += v(static_cast<Eigen::Index>(i2 * 2 + i0), static_cast<Eigen::Index>(j2 * 2 + j0)) *
                               s.amplitude({j0, i1, j2});
                EXPECT_NEAR(std::abs(out2.amplitude({i0, i1, i2}) - acc), 0, 1e-12);
            }
}

TEST(Apply, RejectsBadTargets) {
    auto s = PureState::basis({2, 2}, {0, 0});
    Matrix u = Matrix::Identity(2, 2);
    EXPECT_THROW(apply(Unitary(u).on({2}), s), std::invalid_argument);
    EXPECT_THROW(apply(Unitary(Matrix::Identity(4, 4)).on({0, 0}), s), std::invalid_argument);
    EXPECT_THROW(apply(Unitary(Matrix::Identity(3, 3)).on({0}), s), std::invalid_argument);
}

TEST(Apply, PreservesNormProperty) {
    Rng rng(3);
    for (int trial = 0; trial < 50; trial++) {
        std::vector<std::size_t> dims{2 + rng() % 3, 2 + rng() % 3, 2 + rng() % 2};
        auto s = random_state(dims, rng);
        std::size_t t = rng() % 3;
        auto out = apply(Unitary(random_unitary(dims[t], rng)).on({t}), s);
        EXPECT_NEAR(out.norm(), 1, 1e-12);
    }
}

TEST(ProjectOut, ContractsBellPair) {
    // (|00> + |11>)/sqrt2 on subsystems (1, 2), with |1> on subsystem 0.
    Vector bell = Vector::Zero(4);
    bell[0] = bell[3] = 1 / std::sqrt(2.0);
    auto s = tensor(PureState::basis(3, 1), PureState({2, 2}, bell));
    std::array<std::size_t, 2> t{1, 2};
    auto rest = project_out(s, t, bell);
    EXPECT_EQ(rest.dims(), (std::vector<std::size_t>{3}));
    EXPECT_NEAR(std::abs(rest[1] - Complex(1)), 0, 1e-14);
}

TEST(Truncate, KeepsLowLevelsAndRejectsLeaks) {
    Vector v = Vector::Zero(6);
    v[0] = v[4] = 1 / std::sqrt(2.0);  // |0,0> and |1,1> with second dim 3
    PureState s({2, 3}, v);
    auto t = truncate_subsystem(s, 1, 2);
    EXPECT_EQ(t.dims(), (std::vector<std::size_t>{2, 2}));
    EXPECT_NEAR(std::abs(t[3]), 1 / std::sqrt(2.0), 1e-14);
    v[5] = 0.1;
    EXPECT_THROW(truncate_subsystem(PureState({2, 3}, v), 1, 2), std::domain_error);
}

TEST(FactorOut, RecoversFactorOfProduct) {
    Rng rng(4);
    auto a = random_state({4}, rng);
    auto b = random_state({2}, rng);
    auto c = random_state({3}, rng);
    auto s = tensor(tensor(a, b), c);
    EXPECT_NEAR(fidelity_up_to_phase(factor_out(s, 0), a), 1, 1e-12);
    EXPECT_NEAR(fidelity_up_to_phase(factor_out(s, 1), b), 1, 1e-12);
    EXPECT_NEAR(fidelity_up_to_phase(factor_out(s, 2), c), 1, 1e-12);
}

TEST(FactorOut, RejectsEntangled) {
    Vector bell = Vector::Zero(4);
    bell[0] = bell[3] = 1 / std::sqrt(2.0);
    EXPECT_THROW(factor_out(PureState({2, 2}, bell), 0), std::domain_error);
}

TEST(GramSchmidt, CompletesToUnitary) {
    Rng rng(5);
    for (std::size_t dim = 2; dim <= 6; dim++) {
        auto v = random_state({dim}, rng);
        std::vector<PureState> fixed{v};
        auto rest = gram_schmidt_complement(fixed, dim);
        ASSERT_EQ(rest.size(), dim - 1);
        Matrix m(dim, dim);
        m.col(0) = v.amps();
        for (std::size_t j = 0; j < rest.size(); j++) m.col(static_cast<Eigen::Index>(j + 1)) = rest[j].amps();
        EXPECT_TRUE(is_unitary(m));
    }
}

TEST(GramSchmidt, RejectsDependentAndNonOrthonormalInput) {
    auto e0 = PureState::basis(3, 0);
    std::vector<PureState> dup{e0, e0};
    EXPECT_THROW(gram_schmidt_complement(dup, 3), std::invalid_argument);
    Vector v = Vector::Zero(3);
    v[0] = 1;
    v[1] = 1;
    std::vector<PureState> skew{e0, PureState({3}, v.normalized())};
    EXPECT_THROW(gram_schmidt_complement(skew, 3), std::invalid_argument);
}
