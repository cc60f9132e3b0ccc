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

#include "qompress/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qompress {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::vector<std::size_t> checked_triggers(std::size_t d, std::span<const std::size_t> triggers) {
    std::vector<std::size_t> sorted(triggers.begin(), triggers.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("duplicate trigger mode");
    }
    if (!sorted.empty() && sorted.back() >= d) {
        throw std::out_of_range(
            "trigger mode " + std::to_string(sorted.back()) + " out of range for d = " + std::to_string(d));
    }
    return sorted;
}

bool contains(const std::vector<std::size_t> &sorted, std::size_t v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

PhotonConfig PhotonConfig::of(std::size_t a, std::size_t b) {
    return PhotonConfig{{std::min(a, b), std::max(a, b)}};
}

std::size_t PhotonConfig::photons_in(Port port, std::size_t d) const {
    std::size_t n = 0;
    for (auto m : modes) {
        if ((port == Port::C) == (m < d)) {
            n++;
        }
    }
    return n;
}

bool PhotonConfig::coincidence(std::size_t d) const {
    return photons_in(Port::C, d) == 1 && photons_in(Port::D, d) == 1;
}

std::string PhotonConfig::describe(std::size_t d) const {
    std::ostringstream out;
    auto port_ket = [&](Port port) {
        std::vector<std::size_t> labels;
        for (auto m : modes) {
            if ((port == Port::C) == (m < d)) {
                labels.push_back(m < d ? m : m - d);
            }
        }
        out << "|";
        if (labels.empty()) {
            out << "vac";
        }
        for (std::size_t i = 0; i < labels.size(); i++) {
            out << (i ? "," : "") << labels[i];
        }
        out << ">_" << (port == Port::C ? "C" : "D");
    };
    port_ket(Port::C);
    port_ket(Port::D);
    return out.str();
}

Complex TwoPhotonState::amplitude(const PhotonConfig &c) const {
    auto it = amps_.find(c);
    return it == amps_.end() ? Complex(0.0) : it->second;
}

void TwoPhotonState::add(const PhotonConfig &c, Complex a) {
    if (c.modes[1] >= 2 * d_) {
        throw std::out_of_range("photon mode out of range");
    }
    amps_[c] += a;
}

double TwoPhotonState::squared_norm() const {
    double n = 0;
    for (const auto &[c, a] : amps_) {
        n += std::norm(a);
    }
    return n;
}

double TwoPhotonState::coincidence_weight() const {
    double n = 0;
    for (const auto &[c, a] : amps_) {
        if (c.coincidence(d_)) {
            n += std::norm(a);
        }
    }
    return n;
}

TwoPhotonState TwoPhotonState::normalized() const {
    double n = std::sqrt(squared_norm());
    if (n < 1e-300) {
        throw std::domain_error("cannot normalize an empty two-photon state");
    }
    TwoPhotonState out(d_);
    for (const auto &[c, a] : amps_) {
        out.amps_[c] = a / n;
    }
    return out;
}

ModeUnitary::ModeUnitary(std::size_t modes_per_port, Matrix entries) : d_(modes_per_port), entries_(std::move(entries)) {
    if (static_cast<std::size_t>(entries_.rows()) != 2 * d_ || !is_unitary(entries_)) {
        throw std::invalid_argument("mode unitary must be a 2d x 2d unitary matrix");
    }
}

PhotonConfig smr_abstract(std::size_t x, std::size_t y, std::span<const std::size_t> triggers, std::size_t d) {
    if (x >= d || y >= d) {
        throw std::out_of_range("SMR input mode out of range");
    }
    auto trig = checked_triggers(d, triggers);
    bool tx = contains(trig, x);
    bool ty = contains(trig, y);
    if (!tx && !ty) {
        return PhotonConfig::of(x, d + y);
    }
    if (!tx && ty) {
        return PhotonConfig::of(x, y);
    }
    if (tx && !ty) {
        return PhotonConfig::of(d + x, d + y);
    }
    return PhotonConfig::of(y, d + x);
}

Matrix mzi_block(double theta) {
    Matrix bs(2, 2);
    bs << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    Matrix phase = Matrix::Identity(2, 2);
    phase(0, 0) = std::polar(1.0, theta);
    Matrix m = std::polar(1.0, theta) * (bs * phase * bs);
    // The balanced splitters leave ~1e-17 residue on the ideal zeros.
    for (Eigen::Index i = 0; i < m.size(); i++) {
        auto &v = m.data()[i];
        if (std::abs(v.real()) < 1e-15) v.real(0.0);
        if (std::abs(v.imag()) < 1e-15) v.imag(0.0);
    }
    return m;
}

ModeUnitary build_smr_mesh(std::size_t d, std::span<const std::size_t> triggers) {
    auto trig = checked_triggers(d, triggers);
    auto n = static_cast<Eigen::Index>(2 * d);
    Matrix u = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < d; k++) {
        Matrix block = mzi_block(contains(trig, k) ? std::numbers::pi : 0.0);
        auto a = static_cast<Eigen::Index>(k);
        auto b = static_cast<Eigen::Index>(d + k);
        u(a, a) = block(0, 0);
        u(a, b) = block(0, 1);
        u(b, a) = block(1, 0);
        u(b, b) = block(1, 1);
    }
    return ModeUnitary(d, std::move(u));
}

TwoPhotonState two_photon_input(std::size_t x, std::size_t y, std::size_t d) {
    if (x >= d || y >= d) {
        throw std::out_of_range("input mode out of range");
    }
    TwoPhotonState s(d);
    s.add(PhotonConfig::of(x, d + y), 1.0);
    return s;
}

TwoPhotonState evolve_two_photon(const ModeUnitary &u, const TwoPhotonState &s) {
    if (u.modes_per_port() != s.modes_per_port()) {
        throw std::invalid_argument("mode unitary and state disagree on the number of modes");
    }
    const auto &m = u.matrix();
    auto n = static_cast<std::size_t>(m.rows());
    TwoPhotonState out(s.modes_per_port());

    for (const auto &[cfg, amp] : s.amplitudes()) {
        auto p = static_cast<Eigen::Index>(cfg.modes[0]);
        auto q = static_cast<Eigen::Index>(cfg.modes[1]);
        // |1_p 1_q> = a_p^ a_q^ |0>;  |2_p> = a_p^ a_p^ |0> / sqrt(2).
        Complex scale = cfg.bunched() ? amp * kInvSqrt2 : amp;

        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < n; i++) {
            auto ii = static_cast<Eigen::Index>(i);
            if (m(ii, p) != 0.0 || m(ii, q) != 0.0) {
                rows.push_back(i);
            }
        }
        for (std::size_t a = 0; a < rows.size(); a++) {
            auto i = static_cast<Eigen::Index>(rows[a]);
            // a_i^ a_i^ |0> = sqrt(2) |2_i>.
            Complex same = m(i, p) * m(i, q) * std::numbers::sqrt2;
            if (same != 0.0) {
                out.add(PhotonConfig::of(rows[a], rows[a]), scale * same);
            }
            for (std::size_t b = a + 1; b < rows.size(); b++) {
                auto j = static_cast<Eigen::Index>(rows[b]);
                Complex perm = m(i, p) * m(j, q) + m(j, p) * m(i, q);
                if (perm != 0.0) {
                    out.add(PhotonConfig::of(rows[a], rows[b]), scale * perm);
                }
            }
        }
    }
    return out;
}

PureState coincidence_projection(const TwoPhotonState &s) {
    auto d = s.modes_per_port();
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(d * d));
    for (const auto &[cfg, a] : s.amplitudes()) {
        if (cfg.coincidence(d)) {
            // Sorted modes put the port-C photon first.
            auto c = cfg.modes[0];
            auto dd = cfg.modes[1] - d;
            amps[static_cast<Eigen::Index>(c * d + dd)] += a;
        }
    }
    return PureState({d, d}, std::move(amps));
}

Postselection postselect_coincidence(const TwoPhotonState &s) {
    auto projected = coincidence_projection(s);
    double p = projected.squared_norm();
    if (p < 1e-14) {
        throw PostselectionFailure("no coincidence support: post-selection fails with certainty");
    }
    return Postselection{projected.normalized(), p};
}

std::size_t AncillaPairing::ancilla_of_mode(std::size_t mode) const {
    auto it = std::find(ancilla_to_mode.begin(), ancilla_to_mode.end(), mode);
    return static_cast<std::size_t>(it - ancilla_to_mode.begin());
}

AncillaPairing make_pairing(std::size_t d, std::span<const std::size_t> triggers) {
    auto trig = checked_triggers(d, triggers);
    if (trig.empty() || trig.size() >= d) {
        throw std::invalid_argument("ancilla pairing needs 1 <= |triggers| < d");
    }
    AncillaPairing p{d, trig, trig};
    std::size_t spare = 0;
    while (contains(trig, spare)) {
        spare++;
    }
    p.ancilla_to_mode.push_back(spare);
    return p;
}

TwoPhotonState inject(const PureState &qudit_ancilla, const AncillaPairing &pairing) {
    auto d = pairing.d;
    auto k1 = pairing.ancilla_dim();
    if (qudit_ancilla.dims() != std::vector<std::size_t>{d, k1}) {
        throw std::invalid_argument("inject expects a (qudit, ancilla) state with dims {d, k+1}");
    }
    TwoPhotonState s(d);
    for (std::size_t x = 0; x < d; x++) {
        for (std::size_t i = 0; i < k1; i++) {
            auto a = qudit_ancilla[x * k1 + i];
            if (a != 0.0) {
                s.add(PhotonConfig::of(x, d + pairing.ancilla_to_mode[i]), a);
            }
        }
    }
    return s;
}

PureState read_out(const PureState &coincidence, const AncillaPairing &pairing) {
    auto d = pairing.d;
    auto k1 = pairing.ancilla_dim();
    if (coincidence.dims() != std::vector<std::size_t>{d, d}) {
        throw std::invalid_argument("read_out expects a (C mode, D mode) state with dims {d, d}");
    }
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(d * k1));
    double stray = 0;
    for (std::size_t c = 0; c < d; c++) {
        for (std::size_t dm = 0; dm < d; dm++) {
            auto a = coincidence[c * d + dm];
            auto level = pairing.ancilla_of_mode(dm);
            if (level < k1) {
                amps[static_cast<Eigen::Index>(c * k1 + level)] += a;
            } else {
                stray += std::norm(a);
            }
        }
    }
    if (stray > kTolerance) {
        throw std::domain_error("port-D photon found on a mode not wired to the ancilla");
    }
    return PureState({d, k1}, std::move(amps));
}

Matrix smr_coincidence_operator(const AncillaPairing &pairing) {
    auto d = pairing.d;
    auto k1 = pairing.ancilla_dim();
    auto mesh = build_smr_mesh(d, pairing.triggers);
    auto n = static_cast<Eigen::Index>(d * k1);
    Matrix kraus = Matrix::Zero(n, n);
    for (std::size_t x = 0; x < d; x++) {
        for (std::size_t i = 0; i < k1; i++) {
            auto out = evolve_two_photon(mesh, two_photon_input(x, pairing.ancilla_to_mode[i], d));
            auto col = read_out(coincidence_projection(out), pairing);
            kraus.col(static_cast<Eigen::Index>(x * k1 + i)) = col.amps();
        }
    }
    return kraus;
}

}  // namespace qompress
