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

#include "qompress/qstate.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qompress {

namespace {

std::size_t product(const std::vector<std::size_t> &dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::size_t> strides_of(const std::vector<std::size_t> &dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) {
        strides[i - 1] = strides[i] * dims[i];
    }
    return strides;
}

void check_targets(const PureState &s, std::span<const std::size_t> targets) {
    std::vector<bool> seen(s.subsystem_count(), false);
    for (auto t : targets) {
        if (t >= s.subsystem_count()) {
            throw std::invalid_argument(
                "target subsystem " + std::to_string(t) + " out of range for a register of " +
                std::to_string(s.subsystem_count()) + " subsystems");
        }
        if (seen[t]) {
            throw std::invalid_argument("duplicate target subsystem " + std::to_string(t));
        }
        seen[t] = true;
    }
}

// Offsets of every target-local index and the base indices of the complement,
// so that full_index = base + offset[local].
struct Embedding {
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> bases;
};

Embedding embedding_of(const std::vector<std::size_t> &dims, std::span<const std::size_t> targets) {
    auto strides = strides_of(dims);
    std::size_t local = 1;
    for (auto t : targets) {
        local *= dims[t];
    }

    Embedding e;
    e.offsets.resize(local);
    for (std::size_t k = 0; k < local; k++) {
        std::size_t rem = k;
        std::size_t off = 0;
        for (std::size_t j = targets.size(); j-- > 0;) {
            auto t = targets[j];
            off += (rem % dims[t]) * strides[t];
            rem /= dims[t];
        }
        e.offsets[k] = off;
    }

    std::vector<bool> is_target(dims.size(), false);
    for (auto t : targets) {
        is_target[t] = true;
    }
    auto total = product(dims);
    e.bases.reserve(total / local);
    for (std::size_t idx = 0; idx < total; idx++) {
        bool zero = true;
        for (std::size_t t = 0; t < dims.size() && zero; t++) {
            if (is_target[t] && (idx / strides[t]) % dims[t] != 0) {
                zero = false;
            }
        }
        if (zero) {
            e.bases.push_back(idx);
        }
    }
    return e;
}

}  // namespace

PureState::PureState(std::vector<std::size_t> dims, Vector amps) : dims_(std::move(dims)), amps_(std::move(amps)) {
    if (dims_.empty()) {
        throw std::invalid_argument("a state needs at least one subsystem");
    }
    for (auto d : dims_) {
        if (d == 0) {
            throw std::invalid_argument("subsystem dimension must be positive");
        }
    }
    if (product(dims_) != static_cast<std::size_t>(amps_.size())) {
        throw std::invalid_argument(
            "amplitude count " + std::to_string(amps_.size()) + " does not match product of dims " +
            std::to_string(product(dims_)));
    }
}

PureState PureState::basis(std::vector<std::size_t> dims, const std::vector<std::size_t> &digits) {
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(product(dims)));
    PureState s(std::move(dims), std::move(amps));
    s.amps_[static_cast<Eigen::Index>(s.index_of(digits))] = 1.0;
    return s;
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    return basis(std::vector<std::size_t>{dim}, std::vector<std::size_t>{index});
}

PureState PureState::from_amplitudes(const std::vector<Complex> &amps) {
    Vector v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); i++) {
        v[static_cast<Eigen::Index>(i)] = amps[i];
    }
    return PureState({amps.size()}, std::move(v));
}

Complex PureState::amplitude(const std::vector<std::size_t> &digits) const {
    return amps_[static_cast<Eigen::Index>(index_of(digits))];
}

std::size_t PureState::index_of(const std::vector<std::size_t> &digits) const {
    if (digits.size() != dims_.size()) {
        throw std::invalid_argument("digit count does not match subsystem count");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dims_.size(); i++) {
        if (digits[i] >= dims_[i]) {
            throw std::out_of_range(
                "digit " + std::to_string(digits[i]) + " out of range for subsystem of dimension " +
                std::to_string(dims_[i]));
        }
        idx = idx * dims_[i] + digits[i];
    }
    return idx;
}

std::vector<std::size_t> PureState::digits_of(std::size_t index) const {
    std::vector<std::size_t> digits(dims_.size());
    for (std::size_t i = dims_.size(); i-- > 0;) {
        digits[i] = index % dims_[i];
        index /= dims_[i];
    }
    return digits;
}

bool PureState::is_normalized(double tol) const {
    return std::abs(amps_.squaredNorm() - 1.0) < tol;
}

PureState PureState::normalized() const {
    double n = amps_.norm();
    if (n < 1e-300) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    return PureState(dims_, amps_ / n);
}

PureState PureState::scaled(Complex factor) const {
    return PureState(dims_, amps_ * factor);
}

bool is_unitary(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    // Diagonal fast path: unit-modulus diagonal, exact zeros elsewhere.
    bool diagonal = true;
    for (Eigen::Index j = 0; j < m.cols() && diagonal; j++) {
        for (Eigen::Index i = 0; i < m.rows(); i++) {
            if (i != j && m(i, j) != Complex(0)) {
                diagonal = false;
                break;
            }
        }
    }
    if (diagonal) {
        return (m.diagonal().cwiseAbs().array() - 1.0).abs().maxCoeff() <= tol;
    }
    Matrix prod = m * m.adjoint();
    return (prod - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

Unitary::Unitary(Matrix entries, std::vector<std::size_t> targets)
    : entries_(std::move(entries)), targets_(std::move(targets)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("a unitary must be a non-empty square matrix");
    }
    if (!is_unitary(entries_)) {
        throw std::invalid_argument("matrix is not unitary within tolerance");
    }
}

Unitary Unitary::identity(std::size_t dim) {
    return Unitary(Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

Unitary Unitary::on(std::vector<std::size_t> targets) const {
    Unitary u = *this;
    u.targets_ = std::move(targets);
    return u;
}

Unitary Unitary::adjoint() const {
    return Unitary(entries_.adjoint(), targets_);
}

bool Unitary::is_hermitian(double tol) const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Unitary::is_diagonal(double tol) const {
    Matrix off = entries_;
    off.diagonal().setZero();
    return off.cwiseAbs().maxCoeff() <= tol;
}

Unitary operator*(const Unitary &lhs, const Unitary &rhs) {
    if (lhs.dim() != rhs.dim() || lhs.targets() != rhs.targets()) {
        throw std::invalid_argument("cannot multiply unitaries acting on different spaces");
    }
    return Unitary(lhs.matrix() * rhs.matrix(), lhs.targets());
}

PureState tensor(const PureState &a, const PureState &b) {
    std::vector<std::size_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    Vector amps(static_cast<Eigen::Index>(a.size() * b.size()));
    auto nb = static_cast<Eigen::Index>(b.size());
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.size()); i++) {
        amps.segment(i * nb, nb) = a.amps()[i] * b.amps();
    }
    return PureState(std::move(dims), std::move(amps));
}

PureState apply_operator(const Matrix &op, const PureState &s, std::span<const std::size_t> targets) {
    check_targets(s, targets);
    std::size_t local = 1;
    for (auto t : targets) {
        local *= s.dims()[t];
    }
    if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != local) {
        throw std::invalid_argument(
            "operator of order " + std::to_string(op.rows()) + " does not match targeted dimension " +
            std::to_string(local));
    }

    auto e = embedding_of(s.dims(), targets);
    Vector out(s.amps().size());
    Vector in(static_cast<Eigen::Index>(local));
    for (auto base : e.bases) {
        for (std::size_t k = 0; k < local; k++) {
            in[static_cast<Eigen::Index>(k)] = s.amps()[static_cast<Eigen::Index>(base + e.offsets[k])];
        }
        Vector res = op * in;
        for (std::size_t k = 0; k < local; k++) {
            out[static_cast<Eigen::Index>(base + e.offsets[k])] = res[static_cast<Eigen::Index>(k)];
        }
    }
    return PureState(s.dims(), std::move(out));
}

PureState apply(const Unitary &u, const PureState &s) {
    if (u.targets().empty()) {
        if (u.dim() != s.size()) {
            throw std::invalid_argument(
                "unitary of order " + std::to_string(u.dim()) + " applied to a state of size " +
                std::to_string(s.size()));
        }
        return PureState(s.dims(), u.matrix() * s.amps());
    }
    return apply_operator(u.matrix(), s, u.targets());
}

Complex inner(const PureState &a, const PureState &b) {
    if (a.dims() != b.dims()) {
        throw std::invalid_argument("inner product between states of different dimensions");
    }
    return a.amps().dot(b.amps());
}

double fidelity_up_to_phase(const PureState &a, const PureState &b) {
    return std::norm(inner(a, b));
}

PureState project_out(const PureState &s, std::span<const std::size_t> targets, const Vector &bra) {
    check_targets(s, targets);
    if (targets.size() >= s.subsystem_count()) {
        throw std::invalid_argument("project_out must leave at least one subsystem");
    }
    auto e = embedding_of(s.dims(), targets);
    if (static_cast<std::size_t>(bra.size()) != e.offsets.size()) {
        throw std::invalid_argument("projection vector does not match targeted dimension");
    }

    std::vector<std::size_t> rest_dims;
    std::vector<bool> is_target(s.subsystem_count(), false);
    for (auto t : targets) {
        is_target[t] = true;
    }
    for (std::size_t i = 0; i < s.subsystem_count(); i++) {
        if (!is_target[i]) {
            rest_dims.push_back(s.dims()[i]);
        }
    }

    // Bases are enumerated in increasing full index, which is also increasing
    // order of the remaining subsystems' composite index.
    Vector out(static_cast<Eigen::Index>(e.bases.size()));
    for (std::size_t r = 0; r < e.bases.size(); r++) {
        Complex acc = 0;
        for (std::size_t k = 0; k < e.offsets.size(); k++) {
            acc += std::conj(bra[static_cast<Eigen::Index>(k)]) *
                   s.amps()[static_cast<Eigen::Index>(e.bases[r] + e.offsets[k])];
        }
        out[static_cast<Eigen::Index>(r)] = acc;
    }
    return PureState(std::move(rest_dims), std::move(out));
}

PureState truncate_subsystem(const PureState &s, std::size_t sub, std::size_t new_dim, double tol) {
    if (sub >= s.subsystem_count()) {
        throw std::invalid_argument("subsystem index out of range");
    }
    if (new_dim == 0 || new_dim > s.dims()[sub]) {
        throw std::invalid_argument("invalid truncated dimension");
    }
    auto dims = s.dims();
    dims[sub] = new_dim;
    Vector out(static_cast<Eigen::Index>(s.size() / s.dims()[sub] * new_dim));
    double leaked = 0;
    Eigen::Index w = 0;
    for (std::size_t idx = 0; idx < s.size(); idx++) {
        auto digits = s.digits_of(idx);
        auto a = s[idx];
        if (digits[sub] < new_dim) {
            out[w++] = a;
        } else {
            leaked += std::norm(a);
        }
    }
    if (leaked > tol) {
        throw std::domain_error(
            "truncation discards weight " + std::to_string(leaked) + " from subsystem " + std::to_string(sub));
    }
    return PureState(std::move(dims), std::move(out));
}

PureState factor_out(const PureState &s, std::size_t sub, double tol) {
    if (sub >= s.subsystem_count()) {
        throw std::invalid_argument("subsystem index out of range");
    }
    auto d = s.dims()[sub];
    std::size_t rest = s.size() / d;

    // Column c of m is the (unnormalized) state of `sub` for complement index c.
    Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rest));
    std::vector<std::size_t> tgt{sub};
    auto e = embedding_of(s.dims(), tgt);
    for (std::size_t c = 0; c < e.bases.size(); c++) {
        for (std::size_t k = 0; k < d; k++) {
            m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) = s[e.bases[c] + e.offsets[k]];
        }
    }

    Eigen::Index best = 0;
    m.colwise().squaredNorm().maxCoeff(&best);
    double best_norm = m.col(best).norm();
    if (best_norm < 1e-300) {
        throw std::domain_error("cannot factor the zero vector");
    }
    Vector v = m.col(best) / best_norm;
    // Residual of projecting every column onto v.
    Matrix residual = m - v * (v.adjoint() * m);
    if (residual.squaredNorm() > tol * m.squaredNorm()) {
        throw std::domain_error("state is entangled across subsystem " + std::to_string(sub));
    }
    return PureState({d}, std::move(v));
}

std::vector<PureState> gram_schmidt_complement(std::span<const PureState> fixed, std::size_t dim) {
    if (fixed.size() > dim) {
        throw std::invalid_argument("more fixed vectors than the dimension");
    }
    std::vector<Vector> basis;
    for (const auto &f : fixed) {
        if (f.size() != dim) {
            throw std::invalid_argument("fixed vector dimension does not match");
        }
        basis.push_back(f.amps());
    }

    auto n = static_cast<Eigen::Index>(basis.size());
    if (n > 0) {
        Matrix gram(n, n);
        for (Eigen::Index i = 0; i < n; i++) {
            for (Eigen::Index j = 0; j < n; j++) {
                gram(i, j) = basis[static_cast<std::size_t>(i)].dot(basis[static_cast<std::size_t>(j)]);
            }
        }
        Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < 1e-8) {
            throw std::invalid_argument("fixed vectors are linearly dependent");
        }
        if ((gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > kTolerance) {
            throw std::invalid_argument("fixed vectors are not orthonormal");
        }
    }

    auto residual_of = [&](Vector v) {
        // Two passes of modified Gram-Schmidt.
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &b : basis) {
                v -= b * b.dot(v);
            }
        }
        return v;
    };

    std::vector<PureState> out;
    while (basis.size() < dim) {
        Vector best_v;
        double best = -1;
        for (std::size_t j = 0; j < dim; j++) {
            Vector e = Vector::Zero(static_cast<Eigen::Index>(dim));
            e[static_cast<Eigen::Index>(j)] = 1.0;
            Vector r = residual_of(e);
            if (r.norm() > best) {
                best = r.norm();
                best_v = std::move(r);
            }
        }
        best_v /= best;
        basis.push_back(best_v);
        out.emplace_back(std::vector<std::size_t>{dim}, best_v);
    }
    return out;
}

}  // namespace qompress
