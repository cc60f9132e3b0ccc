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

#include "qompress/schemes.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "qompress/optics.hpp"

namespace qompress {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::optional<Rational> times(const std::optional<Rational> &a, const std::optional<Rational> &b) {
    if (!a || !b) {
        return std::nullopt;
    }
    return *a * *b;
}

PureState ancilla_state(const PureState &xi) {
    auto k = xi.size() - 1;
    Vector phi = xi.amps();
    phi[static_cast<Eigen::Index>(k)] += 1.0;
    return PureState({k + 1}, phi * kInvSqrt2);
}

void check_target(const PureState &reg, std::size_t t, const TriggerSet &c) {
    if (t >= reg.subsystem_count()) {
        throw std::invalid_argument("target subsystem out of range");
    }
    if (reg.dims()[t] != c.dimension()) {
        throw std::invalid_argument(
            "trigger set for d = " + std::to_string(c.dimension()) + " applied to a subsystem of dimension " +
            std::to_string(reg.dims()[t]));
    }
}

// Coincidence-projected router acting on (target, ancilla); returns the
// renormalized register and the coincidence probability.
std::pair<PureState, double> route(const PureState &reg, std::size_t target, std::size_t ancilla, const TriggerSet &c) {
    auto pairing = make_pairing(c.dimension(), c.indices());
    auto kraus = smr_coincidence_operator(pairing);
    std::array<std::size_t, 2> targets{target, ancilla};
    auto out = apply_operator(kraus, reg, targets);
    double p = out.squared_norm() / reg.squared_norm();
    if (p < 1e-14) {
        throw PostselectionFailure("router has no coincidence support");
    }
    return {out.normalized(), p};
}

// Bell measurement on (a3, a4), feedforward on (t1, t2), ancillas removed.
std::vector<Branch> measure_and_correct(
    const PureState &s, std::size_t t1, std::size_t t2, std::size_t a3, std::size_t a4, const TriggerSet &c1,
    const TriggerSet &c2, const BsmModel &model, double &herald_probability) {
    herald_probability = 0;
    std::vector<Branch> branches;
    for (auto &outcome : bsm(s, a3, a4, model)) {
        if (outcome.label == BellLabel::Fail || !outcome.branch) {
            continue;
        }
        herald_probability += outcome.probability;
        branches.push_back(Branch{
            outcome.label, outcome.probability, apply_feedforward(*outcome.branch, outcome.label, c1, c2, t1, t2)});
    }
    if (branches.empty()) {
        throw std::runtime_error("no Bell outcome is heralded under model " + model.name());
    }
    return branches;
}

SchemeResult assemble(
    std::vector<Branch> branches, double post, std::optional<Rational> post_exact, double herald,
    std::size_t ancillas, std::size_t nonlocal) {
    auto herald_exact = recover_rational(herald);
    SchemeResult r{
        branches.front().output,
        branches.front().label,
        std::move(branches),
        post,
        herald,
        post * herald,
        times(post_exact, herald_exact),
        ancillas,
        nonlocal};
    return r;
}

}  // namespace

std::string_view to_string(Scheme scheme) {
    return scheme == Scheme::StateDependent ? "state-dependent" : "state-independent";
}

SchemeResult run_state_dependent(
    const PureState &reg, std::size_t t1, std::size_t t2, const TriggerSet &c1, const TriggerSet &c2,
    const PureState &xi1, const PureState &xi2, const BsmModel &model) {
    check_target(reg, t1, c1);
    check_target(reg, t2, c2);
    if (t1 == t2) {
        throw std::invalid_argument("the two target qudits must differ");
    }
    if (xi1.size() != c1.size() + 1 || xi2.size() != c2.size() + 1) {
        throw std::invalid_argument("ancilla profile dimension must be k+1");
    }

    auto n = reg.subsystem_count();
    const std::size_t a3 = n;
    const std::size_t a4 = n + 1;
    auto s = tensor(tensor(reg.normalized(), ancilla_state(xi1)), ancilla_state(xi2));

    // Two routers, coincidence post-selected one after the other.
    auto [s1, p1] = route(s, t1, a3, c1);
    auto [s2, p2] = route(s1, t2, a4, c2);
    double post = p1 * p2;
    auto post_exact = times(recover_rational(p1), recover_rational(p2));

    // Compress each ancilla onto {|0>, |1>}, then Hadamard on the second.
    s2 = apply(build_O(xi1, c1.size()).on({a3}), s2);
    s2 = apply(build_O(xi2, c2.size()).on({a4}), s2);
    s2 = apply(hadamard_on_qubit_subspace(c2.size() + 1).on({a4}), s2);
    try {
        s2 = truncate_subsystem(s2, a4, 2, 1e-9);
        s2 = truncate_subsystem(s2, a3, 2, 1e-9);
    } catch (const std::domain_error &e) {
        throw std::domain_error(
            std::string("input is not compatible with the ancilla profiles (") + e.what() + ")");
    }

    double herald = 0;
    auto branches = measure_and_correct(s2, t1, t2, a3, a4, c1, c2, model, herald);
    return assemble(std::move(branches), post, post_exact, herald, 2, 1);
}

SchemeResult run_state_dependent(
    const PureState &psi1, const PureState &psi2, const TriggerSet &c1, const TriggerSet &c2,
    const BsmModel &model) {
    auto ancillas = prepare_ancillas(psi1, psi2, c1, c2);
    return run_state_dependent(tensor(psi1, psi2), 0, 1, c1, c2, ancillas[0].xi, ancillas[1].xi, model);
}

Unitary build_O_tilde(const TriggerSet &c) {
    const TriggerSet ancilla_trigger(2, {1});
    auto d = static_cast<Eigen::Index>(c.dimension());
    Matrix ih = Matrix::Zero(2 * d, 2 * d);
    for (Eigen::Index m = 0; m < d; m++) {
        ih.block(2 * m, 2 * m, 2, 2) = hadamard().matrix();
    }
    Matrix flips = Matrix::Identity(2 * d, 2 * d);
    for (auto s : c.indices()) {
        flips = u_mcz(TriggerSet(c.dimension(), {s}), ancilla_trigger).matrix() * flips;
    }
    return Unitary(ih * flips * ih);
}

EntanglerResult apply_O_tilde(
    const PureState &reg, std::size_t target, std::size_t ancilla, const TriggerSet &c, const BsmModel &model,
    GateExecution execution) {
    check_target(reg, target, c);
    if (ancilla >= reg.subsystem_count() || reg.dims()[ancilla] != 2) {
        throw std::invalid_argument("entangler ancilla must be a qubit subsystem");
    }

    if (execution == GateExecution::Logical) {
        auto per_gate = success_probability(Scheme::StateDependent, 1, 1, model);
        auto exact = pow(per_gate, c.size());
        return {apply(build_O_tilde(c).on({target, ancilla}), reg), to_double(exact), exact};
    }

    const TriggerSet ancilla_trigger(2, {1});
    const auto xi = PureState::basis(2, 0);
    auto s = apply(hadamard().on({ancilla}), reg);
    double probability = 1;
    std::optional<Rational> exact = Rational(1);
    for (auto level : c.indices()) {
        auto gate = run_state_dependent(
            s, target, ancilla, TriggerSet(c.dimension(), {level}), ancilla_trigger, xi, xi, model);
        for (const auto &b : gate.branches) {
            if (fidelity_up_to_phase(b.output, gate.output) < 1 - 1e-9) {
                throw std::logic_error("two-level CZ branches disagree after feedforward");
            }
        }
        s = gate.output;
        probability *= gate.success_probability;
        exact = times(exact, gate.success_exact);
    }
    s = apply(hadamard().on({ancilla}), s);
    return {s, probability, exact};
}

SchemeResult run_state_independent(
    const PureState &reg, std::size_t t1, std::size_t t2, const TriggerSet &c1, const TriggerSet &c2,
    const BsmModel &model, GateExecution execution) {
    check_target(reg, t1, c1);
    check_target(reg, t2, c2);
    if (t1 == t2) {
        throw std::invalid_argument("the two target qudits must differ");
    }

    auto n = reg.subsystem_count();
    const std::size_t a3 = n;
    const std::size_t a4 = n + 1;
    auto zero = PureState::basis(2, 0);
    auto s = tensor(tensor(reg.normalized(), zero), zero);

    auto e1 = apply_O_tilde(s, t1, a3, c1, model, execution);
    auto e2 = apply_O_tilde(e1.state, t2, a4, c2, model, execution);
    s = apply(hadamard().on({a4}), e2.state);

    double herald = 0;
    auto branches = measure_and_correct(s, t1, t2, a3, a4, c1, c2, model, herald);
    auto k = c1.size() + c2.size();
    return assemble(
        std::move(branches), e1.probability * e2.probability, times(e1.exact, e2.exact), herald, 2 * k + 2, k);
}

SchemeResult run_state_independent(
    const PureState &psi1, const PureState &psi2, const TriggerSet &c1, const TriggerSet &c2,
    const BsmModel &model, GateExecution execution) {
    return run_state_independent(tensor(psi1, psi2), 0, 1, c1, c2, model, execution);
}

Rational success_probability(Scheme scheme, std::size_t k1, std::size_t k2, const BsmModel &model) {
    if (k1 < 1 || k2 < 1) {
        throw std::invalid_argument("trigger counts must be at least 1");
    }
    Rational herald(static_cast<long>(model.heralded().size()), 4);
    Rational routers(1, 4);
    if (scheme == Scheme::StateDependent) {
        return routers * herald;
    }
    auto per_gate = routers * herald;
    return pow(per_gate, k1 + k2) * herald;
}

}  // namespace qompress
