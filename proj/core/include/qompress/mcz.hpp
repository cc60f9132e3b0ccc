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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qompress/qstate.hpp"

namespace qompress {

/// Levels of a qudit that fire a multi-level CZ. Indices are kept strictly
/// ascending; the i-th trigger is wired to ancilla level i.
class TriggerSet {
   public:
    /// Throws std::invalid_argument unless 1 <= |indices| < dimension, all
    /// indices lie in [0, dimension) and none repeat. Input order is free.
    TriggerSet(std::size_t dimension, std::vector<std::size_t> indices);

    /// Parses "3,7" style lists.
    static TriggerSet parse(std::size_t dimension, std::string_view text);

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return indices_.size(); }
    const std::vector<std::size_t> &indices() const { return indices_; }
    bool contains(std::size_t level) const;
    std::string to_string() const;

    bool operator==(const TriggerSet &) const = default;

   private:
    std::size_t dimension_;
    std::vector<std::size_t> indices_;
};

/// Two-level CZ on two qudits of dimension d: -1 on |d-1, d-1> only.
Unitary u_cz(std::size_t d);

/// Multi-level CZ: -1 on |m, n> for every (m, n) in C1 x C2.
Unitary u_mcz(const TriggerSet &c1, const TriggerSet &c2);

/// Ancilla for one input qudit: dimension k+1, state (|xi> + |k>)/sqrt(2).
struct Ancilla {
    PureState state;        ///< (|xi> + |k>)/sqrt(2)
    PureState xi;           ///< normalized trigger profile, dimension k+1
    double trigger_weight;  ///< P = sum over triggers of |amplitude|^2
};

/// Builds the ancilla for input `psi` and triggers `c`. xi is fixed up to a
/// global phase by the amplitudes on the triggers; the phase is chosen so the
/// first nonzero entry is real and positive (for a single trigger this makes
/// xi = |0> for every input). With no weight on the triggers xi falls back to
/// the uniform superposition over levels 0..k-1.
Ancilla prepare_ancilla(const PureState &psi, const TriggerSet &c);

std::array<Ancilla, 2> prepare_ancillas(
    const PureState &psi1, const PureState &psi2, const TriggerSet &c1, const TriggerSet &c2);

/// O = |0><k| + |1><xi| + sum_{j>=2} |j><v_j|, with the v_j completing the
/// basis by Gram-Schmidt. xi must be a unit vector of dimension k+1 without
/// a |k> component.
Unitary build_O(const PureState &xi, std::size_t k);

/// I - 2 sum_{m in C} |m><m| on a qudit of dimension C.dimension().
Unitary correction_unitary(const TriggerSet &c);

/// 2x2 Hadamard.
Unitary hadamard();

/// Hadamard on levels {0, 1} of a qudit of dimension dim, identity elsewhere.
Unitary hadamard_on_qubit_subspace(std::size_t dim);

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus, Fail };

std::string_view to_string(BellLabel label);
std::optional<BellLabel> parse_bell_label(std::string_view text);

inline constexpr std::array<BellLabel, 4> kBellLabels = {
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

/// Two-qubit Bell vector, basis order |00>, |01>, |10>, |11>.
Vector bell_vector(BellLabel label);

/// Which Bell outcomes a measurement device heralds.
class BsmModel {
   public:
    enum class Kind { Ideal, LinearOptics, Custom };

    /// All four Bell states resolved.
    static BsmModel ideal();
    /// Psi+ and Psi- heralded, Phi+/Phi- reported as failure.
    static BsmModel linear_optics();
    /// Arbitrary herald set; used for negative controls.
    static BsmModel heralding(std::vector<BellLabel> heralded);

    Kind kind() const { return kind_; }
    bool heralds(BellLabel label) const;
    const std::vector<BellLabel> &heralded() const { return heralded_; }
    std::string name() const;

   private:
    BsmModel(Kind kind, std::vector<BellLabel> heralded) : kind_(kind), heralded_(std::move(heralded)) {}

    Kind kind_;
    std::vector<BellLabel> heralded_;
};

struct BsmOutcome {
    BellLabel label;
    double probability;
    /// Renormalized post-measurement state of the remaining subsystems;
    /// empty for the aggregated Fail outcome.
    std::optional<PureState> branch;
};

/// Bell-state measurement on the last two subsystems of `state` (both must
/// be two-dimensional). Heralded outcomes carry their collapsed branch on the
/// remaining subsystems; unheralded ones are pooled into a single Fail
/// outcome. Probabilities are relative to the squared norm of `state`.
std::vector<BsmOutcome> bsm(const PureState &state, const BsmModel &model);

/// Same, on an explicit pair of subsystems.
std::vector<BsmOutcome> bsm(
    const PureState &state, std::size_t first, std::size_t second, const BsmModel &model);

/// Feedforward after outcome `label`: Phi+ nothing, Phi- U1 on t1, Psi+ U2 on
/// t2, Psi- both. Throws on Fail.
PureState apply_feedforward(
    const PureState &branch, BellLabel label, const TriggerSet &c1, const TriggerSet &c2, std::size_t t1,
    std::size_t t2);

}  // namespace qompress
