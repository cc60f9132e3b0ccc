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

#include "qompress/random.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qompress {

namespace {

Complex gaussian(Rng &rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    double re = dist(rng);
    double im = dist(rng);
    return {re, im};
}

}  // namespace

PureState random_state(const std::vector<std::size_t> &dims, Rng &rng) {
    std::size_t n = 1;
    for (auto d : dims) {
        n *= d;
    }
    Vector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); i++) {
        v[i] = gaussian(rng);
    }
    return PureState(dims, v).normalized();
}

Matrix random_unitary(std::size_t n, Rng &rng) {
    auto m = static_cast<Eigen::Index>(n);
    Matrix g(m, m);
    for (Eigen::Index i = 0; i < m; i++) {
        for (Eigen::Index j = 0; j < m; j++) {
            g(i, j) = gaussian(rng);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < m; j++) {
        auto diag = r(j, j);
        auto phase = std::abs(diag) > 0 ? diag / std::abs(diag) : Complex(1.0);
        q.col(j) *= phase;
    }
    return q;
}

std::vector<std::size_t> random_subset(std::size_t d, std::size_t size, Rng &rng) {
    if (size > d) {
        throw std::invalid_argument("subset larger than the ground set");
    }
    std::vector<std::size_t> all(d);
    std::iota(all.begin(), all.end(), std::size_t{0});
    // Partial Fisher-Yates with an explicit uniform draw keeps the sequence
    // independent of the standard library's shuffle implementation.
    for (std::size_t i = 0; i < size; i++) {
        std::uniform_int_distribution<std::size_t> pick(i, d - 1);
        std::swap(all[i], all[pick(rng)]);
    }
    all.resize(size);
    std::sort(all.begin(), all.end());
    return all;
}

std::vector<std::size_t> random_subset(std::size_t d, Rng &rng) {
    if (d < 2) {
        throw std::invalid_argument("a proper nonempty subset needs d >= 2");
    }
    std::uniform_int_distribution<std::size_t> size_dist(1, d - 1);
    return random_subset(d, size_dist(rng), rng);
}

}  // namespace qompress
