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

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qompress/exact.hpp"
#include "qompress/mcz.hpp"
#include "qompress/qstate.hpp"

// End-to-end multi-level CZ pipelines.
//
// Both pipelines enumerate every Bell-measurement branch exactly; nothing is
// sampled. Each run reports the post-feedforward state of every heralded
// branch plus the success probability, both as simulated (double) and as
// the exact rational recovered stage by stage from the simulation.

namespace qompress {

enum class Scheme { StateDependent, StateIndependent };

std::string_view to_string(Scheme scheme);

/// How the two-level CZ gates inside the state-independent entangler are
/// executed: as their logical unitary with the single-gate success factor
/// applied symbolically, or as full optical state-dependent sub-pipelines.
enum class GateExecution { Logical, Optical };

struct Branch {
    BellLabel label;
    double probability;  ///< probability of this outcome given post-selection
    PureState output;    ///< register state after feedforward
};

struct SchemeResult {
    PureState output;  ///< first heralded branch after feedforward
    BellLabel bsm_outcome;
    std::vector<Branch> branches;

    /// State dependent: joint coincidence probability of the two routers.
    /// State independent: product of the inner two-level gate successes.
    double postselection_probability;
    /// Total probability of the heralded Bell outcomes.
    double herald_probability;
    double success_probability;
    /// Exact value; nullopt only if some stage probability is not a
    /// small-denominator rational.
    std::optional<Rational> success_exact;

    std::size_t ancilla_count;
    std::size_t nonlocal_gate_count;
};

/// State-dependent realization on subsystems (t1, t2) of an arbitrary
/// register, with the ancilla profiles xi1, xi2 supplied explicitly. The
/// output is exact for every input whose trigger components on t1 (resp. t2)
/// are proportional to xi1 (resp. xi2); in particular for any input when
/// both trigger sets are singletons.
SchemeResult run_state_dependent(
    const PureState &reg, std::size_t t1, std::size_t t2, const TriggerSet &c1, const TriggerSet &c2,
    const PureState &xi1, const PureState &xi2, const BsmModel &model);

/// Product input |psi1>|psi2>, ancillas prepared from the inputs.
SchemeResult run_state_dependent(
    const PureState &psi1, const PureState &psi2, const TriggerSet &c1, const TriggerSet &c2,
    const BsmModel &model);

/// (1 x H) (prod_{s in C} two-level CZ({s}, {1})) (1 x H) on (qudit, ancilla
/// qubit): flips the ancilla exactly when the qudit sits on a trigger level.
Unitary build_O_tilde(const TriggerSet &c);

struct EntanglerResult {
    PureState state;
    double probability;
    std::optional<Rational> exact;
};

/// Applies the state-independent entangler between `target` and the qubit
/// subsystem `ancilla` of `reg`.
EntanglerResult apply_O_tilde(
    const PureState &reg, std::size_t target, std::size_t ancilla, const TriggerSet &c, const BsmModel &model,
    GateExecution execution);

SchemeResult run_state_independent(
    const PureState &reg, std::size_t t1, std::size_t t2, const TriggerSet &c1, const TriggerSet &c2,
    const BsmModel &model, GateExecution execution = GateExecution::Logical);

SchemeResult run_state_independent(
    const PureState &psi1, const PureState &psi2, const TriggerSet &c1, const TriggerSet &c2,
    const BsmModel &model, GateExecution execution = GateExecution::Logical);

/// Closed-form success probability: the router pair contributes 1/4 and the
/// Bell measurement the heralded fraction of its four equiprobable outcomes;
/// the state-independent scheme pays one state-dependent two-level gate per
/// trigger plus its own Bell measurement.
Rational success_probability(Scheme scheme, std::size_t k1, std::size_t k2, const BsmModel &model);

}  // namespace qompress
