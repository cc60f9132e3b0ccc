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

#include "qompress/mcz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qompress {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Unitary diagonal_unitary(const Vector &diag) {
    return Unitary(diag.asDiagonal().toDenseMatrix());
}

}  // namespace

TriggerSet::TriggerSet(std::size_t dimension, std::vector<std::size_t> indices)
    : dimension_(dimension), indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
        throw std::invalid_argument("trigger set contains a repeated level");
    }
    if (indices_.empty()) {
        throw std::invalid_argument("trigger set must be nonempty");
    }
    if (indices_.size() >= dimension_) {
        throw std::invalid_argument(
            "trigger set of size " + std::to_string(indices_.size()) + " must be smaller than d = " +
            std::to_string(dimension_));
    }
    if (indices_.back() >= dimension_) {
        throw std::invalid_argument(
            "trigger level " + std::to_string(indices_.back()) + " out of range for d = " +
            std::to_string(dimension_));
    }
}

TriggerSet TriggerSet::parse(std::size_t dimension, std::string_view text) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        auto token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
            throw std::invalid_argument("cannot parse trigger list '" + std::string(text) + "'");
        }
        out.push_back(value);
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return TriggerSet(dimension, std::move(out));
}

bool TriggerSet::contains(std::size_t level) const {
    return std::binary_search(indices_.begin(), indices_.end(), level);
}

std::string TriggerSet::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < indices_.size(); i++) {
        s += (i ? "," : "") + std::to_string(indices_[i]);
    }
    return s + "}";
}

Unitary u_cz(std::size_t d) {
    if (d < 2) {
        throw std::invalid_argument("u_cz needs d >= 2");
    }
    Vector diag = Vector::Ones(static_cast<Eigen::Index>(d * d));
    diag[static_cast<Eigen::Index>(d * d - 1)] = -1.0;
    return diagonal_unitary(diag);
}

Unitary u_mcz(const TriggerSet &c1, const TriggerSet &c2) {
    auto d2 = c2.dimension();
    Vector diag = Vector::Ones(static_cast<Eigen::Index>(c1.dimension() * d2));
    for (auto m : c1.indices()) {
        for (auto n : c2.indices()) {
            diag[static_cast<Eigen::Index>(m * d2 + n)] = -1.0;
        }
    }
    return diagonal_unitary(diag);
}

Ancilla prepare_ancilla(const PureState &psi, const TriggerSet &c) {
    if (psi.dims() != std::vector<std::size_t>{c.dimension()}) {
        throw std::invalid_argument("input qudit dimension does not match the trigger set");
    }
    auto k = c.size();
    Vector xi = Vector::Zero(static_cast<Eigen::Index>(k + 1));
    double weight = 0;
    for (std::size_t i = 0; i < k; i++) {
        auto a = psi[c.indices()[i]];
        xi[static_cast<Eigen::Index>(i)] = a;
        weight += std::norm(a);
    }

    if (weight < 1e-14) {
        xi.head(static_cast<Eigen::Index>(k)).setConstant(1.0 / std::sqrt(static_cast<double>(k)));
    } else {
        xi /= std::sqrt(weight);
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(k); i++) {
            if (std::abs(xi[i]) > 1e-12) {
                xi *= std::abs(xi[i]) / xi[i];
                xi[i] = std::abs(xi[i]);
                break;
            }
        }
    }

    Vector phi = xi;
    phi[static_cast<Eigen::Index>(k)] += 1.0;
    phi *= kInvSqrt2;
    return Ancilla{PureState({k + 1}, phi), PureState({k + 1}, xi), weight};
}

std::array<Ancilla, 2> prepare_ancillas(
    const PureState &psi1, const PureState &psi2, const TriggerSet &c1, const TriggerSet &c2) {
    return {prepare_ancilla(psi1, c1), prepare_ancilla(psi2, c2)};
}

Unitary build_O(const PureState &xi, std::size_t k) {
    if (xi.dims() != std::vector<std::size_t>{k + 1}) {
        throw std::invalid_argument("xi must have dimension k+1");
    }
    if (!xi.is_normalized()) {
        throw std::invalid_argument("xi must be normalized");
    }
    if (std::abs(xi[k]) > kTolerance) {
        throw std::invalid_argument("xi must have no |k> component");
    }
    auto ket_k = PureState::basis(k + 1, k);
    std::vector<PureState> fixed{ket_k, xi};
    auto rest = gram_schmidt_complement(fixed, k + 1);

    auto n = static_cast<Eigen::Index>(k + 1);
    Matrix o(n, n);
    o.row(0) = ket_k.amps().adjoint();
    o.row(1) = xi.amps().adjoint();
    for (std::size_t j = 0; j < rest.size(); j++) {
        o.row(static_cast<Eigen::Index>(j + 2)) = rest[j].amps().adjoint();
    }
    return Unitary(std::move(o));
}

Unitary correction_unitary(const TriggerSet &c) {
    Vector diag = Vector::Ones(static_cast<Eigen::Index>(c.dimension()));
    for (auto m : c.indices()) {
        diag[static_cast<Eigen::Index>(m)] = -1.0;
    }
    return diagonal_unitary(diag);
}

Unitary hadamard() {
    Matrix h(2, 2);
    h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    return Unitary(std::move(h));
}

Unitary hadamard_on_qubit_subspace(std::size_t dim) {
    if (dim < 2) {
        throw std::invalid_argument("Hadamard needs at least two levels");
    }
    auto n = static_cast<Eigen::Index>(dim);
    Matrix h = Matrix::Identity(n, n);
    h.topLeftCorner(2, 2) = hadamard().matrix();
    return Unitary(std::move(h));
}

std::string_view to_string(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus:
            return "phi+";
        case BellLabel::PhiMinus:
            return "phi-";
        case BellLabel::PsiPlus:
            return "psi+";
        case BellLabel::PsiMinus:
            return "psi-";
        case BellLabel::Fail:
            return "fail";
    }
    return "?";
}

std::optional<BellLabel> parse_bell_label(std::string_view text) {
    for (auto label : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus}) {
        if (text == to_string(label)) {
            return label;
        }
    }
    return std::nullopt;
}

Vector bell_vector(BellLabel label) {
    Vector v = Vector::Zero(4);
    switch (label) {
        case BellLabel::PhiPlus:
            v << kInvSqrt2, 0, 0, kInvSqrt2;
            break;
        case BellLabel::PhiMinus:
            v << kInvSqrt2, 0, 0, -kInvSqrt2;
            break;
        case BellLabel::PsiPlus:
            v << 0, kInvSqrt2, kInvSqrt2, 0;
            break;
        case BellLabel::PsiMinus:
            v << 0, kInvSqrt2, -kInvSqrt2, 0;
            break;
        case BellLabel::Fail:
            throw std::invalid_argument("Fail is not a Bell state");
    }
    return v;
}

BsmModel BsmModel::ideal() {
    return BsmModel(Kind::Ideal, {kBellLabels.begin(), kBellLabels.end()});
}

BsmModel BsmModel::linear_optics() {
    return BsmModel(Kind::LinearOptics, {BellLabel::PsiPlus, BellLabel::PsiMinus});
}

BsmModel BsmModel::heralding(std::vector<BellLabel> heralded) {
    for (auto l : heralded) {
        if (l == BellLabel::Fail) {
            throw std::invalid_argument("cannot herald the failure outcome");
        }
    }
    return BsmModel(Kind::Custom, std::move(heralded));
}

bool BsmModel::heralds(BellLabel label) const {
    return std::find(heralded_.begin(), heralded_.end(), label) != heralded_.end();
}

std::string BsmModel::name() const {
    switch (kind_) {
        case Kind::Ideal:
            return "ideal";
        case Kind::LinearOptics:
            return "linear-optics";
        case Kind::Custom:
            break;
    }
    std::string s = "herald:";
    for (std::size_t i = 0; i < heralded_.size(); i++) {
        s += (i ? "," : "") + std::string(to_string(heralded_[i]));
    }
    return s;
}

std::vector<BsmOutcome> bsm(const PureState &state, std::size_t first, std::size_t second, const BsmModel &model) {
    if (first >= state.subsystem_count() || second >= state.subsystem_count() || first == second) {
        throw std::invalid_argument("invalid Bell-measurement subsystems");
    }
    if (state.dims()[first] != 2 || state.dims()[second] != 2) {
        throw std::invalid_argument("Bell measurement needs two-dimensional subsystems");
    }
    double total = state.squared_norm();
    if (total < 1e-300) {
        throw std::domain_error("Bell measurement on the zero vector");
    }

    std::vector<BsmOutcome> out;
    double failed = 0;
    std::array<std::size_t, 2> targets{first, second};
    for (auto label : kBellLabels) {
        auto branch = project_out(state, targets, bell_vector(label));
        double p = branch.squared_norm() / total;
        if (!model.heralds(label)) {
            failed += p;
            continue;
        }
        std::optional<PureState> collapsed;
        if (p > 1e-300) {
            collapsed = branch.normalized();
        }
        out.push_back(BsmOutcome{label, p, std::move(collapsed)});
    }
    if (out.size() < kBellLabels.size()) {
        out.push_back(BsmOutcome{BellLabel::Fail, failed, std::nullopt});
    }
    return out;
}

std::vector<BsmOutcome> bsm(const PureState &state, const BsmModel &model) {
    auto n = state.subsystem_count();
    if (n < 3) {
        throw std::invalid_argument("Bell measurement needs the pair plus at least one other subsystem");
    }
    return bsm(state, n - 2, n - 1, model);
}

PureState apply_feedforward(
    const PureState &branch, BellLabel label, const TriggerSet &c1, const TriggerSet &c2, std::size_t t1,
    std::size_t t2) {
    switch (label) {
        case BellLabel::PhiPlus:
            return branch;
        case BellLabel::PhiMinus:
            return apply(correction_unitary(c1).on({t1}), branch);
        case BellLabel::PsiPlus:
            return apply(correction_unitary(c2).on({t2}), branch);
        case BellLabel::PsiMinus:
            return apply(correction_unitary(c2).on({t2}), apply(correction_unitary(c1).on({t1}), branch));
        case BellLabel::Fail:
            break;
    }
    throw std::invalid_argument("no feedforward for a failed Bell measurement");
}

}  // namespace qompress
