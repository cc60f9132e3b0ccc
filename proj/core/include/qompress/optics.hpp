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
#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qompress/qstate.hpp"

// Two-photon layer of the selective mode router (SMR).
//
// An SMR with d modes per port has 2d optical modes. Input port A occupies
// modes 0..d-1 and input port B modes d..2d-1; after the mesh the same labels
// are read as output port C (0..d-1) and output port D (d..2d-1). A mode
// unitary U maps creation operators as a_j^dagger -> sum_i U(i, j) a_i^dagger.

namespace qompress {

enum class Port { C, D };

/// Occupation of exactly two photons, stored as the (sorted) pair of mode
/// labels they occupy. A bunched configuration has both photons in one mode.
struct PhotonConfig {
    std::array<std::size_t, 2> modes;

    static PhotonConfig of(std::size_t a, std::size_t b);

    bool bunched() const { return modes[0] == modes[1]; }
    std::size_t photons_in(Port port, std::size_t d) const;
    /// Exactly one photon in port C and one in port D.
    bool coincidence(std::size_t d) const;
    /// Ket notation over (port C, port D), e.g. "|3>_C|1>_D" or "|vac>_C|0,5>_D".
    std::string describe(std::size_t d) const;

    auto operator<=>(const PhotonConfig &) const = default;
};

/// Amplitudes over two-photon configurations of 2d modes. Failure
/// (bunched / vacuum-port) configurations are kept so their weight stays
/// auditable.
class TwoPhotonState {
   public:
    explicit TwoPhotonState(std::size_t modes_per_port) : d_(modes_per_port) {}

    std::size_t modes_per_port() const { return d_; }
    const std::map<PhotonConfig, Complex> &amplitudes() const { return amps_; }

    Complex amplitude(const PhotonConfig &c) const;
    void add(const PhotonConfig &c, Complex a);

    double squared_norm() const;
    double coincidence_weight() const;
    TwoPhotonState normalized() const;

   private:
    std::size_t d_;
    std::map<PhotonConfig, Complex> amps_;
};

/// Linear-optical transformation of 2d modes.
class ModeUnitary {
   public:
    ModeUnitary(std::size_t modes_per_port, Matrix entries);

    std::size_t modes_per_port() const { return d_; }
    const Matrix &matrix() const { return entries_; }

   private:
    std::size_t d_;
    Matrix entries_;
};

/// The four-case routing rule: pass-through when neither mode is a trigger,
/// bunch into C when only the B-side mode is a trigger, bunch into D when
/// only the A-side mode is a trigger, swap when both are. x and y are mode
/// labels within their ports (0..d-1).
PhotonConfig smr_abstract(std::size_t x, std::size_t y, std::span<const std::size_t> triggers, std::size_t d);

/// 2x2 Mach-Zehnder block: balanced beamsplitter, phase theta on the upper
/// arm, balanced beamsplitter, and an output phase e^{i theta} that gauges the
/// theta = pi setting to an exact +1 swap.
Matrix mzi_block(double theta);

/// Per-mode MZI mesh coupling (A_k, B_k): theta_k = pi on triggers, 0
/// elsewhere. Triggers may be empty.
ModeUnitary build_smr_mesh(std::size_t d, std::span<const std::size_t> triggers);

/// One photon in input mode A_x and one in B_y.
TwoPhotonState two_photon_input(std::size_t x, std::size_t y, std::size_t d);

/// Second-quantized evolution of a two-photon state (two-photon permanent
/// rule, with the 1/sqrt(2) normalization of doubly occupied modes).
TwoPhotonState evolve_two_photon(const ModeUnitary &u, const TwoPhotonState &s);

/// Projects onto coincidence configurations and returns the result as an
/// unnormalized state over (port-C mode, port-D mode), dims {d, d}.
PureState coincidence_projection(const TwoPhotonState &s);

struct Postselection {
    PureState state;     ///< renormalized state over (C mode, D mode)
    double probability;  ///< coincidence probability before renormalization
};

/// Thrown when a post-selection has (numerically) no support.
class PostselectionFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

Postselection postselect_coincidence(const TwoPhotonState &s);

/// How an ancilla qudit of dimension k+1 is wired into port B of an SMR with
/// d modes per port: ancilla level i < k enters on the mode of the i-th
/// trigger (ascending), ancilla level k on the smallest non-trigger mode.
struct AncillaPairing {
    std::size_t d;
    std::vector<std::size_t> triggers;          // ascending
    std::vector<std::size_t> ancilla_to_mode;   // size k+1

    std::size_t ancilla_dim() const { return ancilla_to_mode.size(); }
    /// Ancilla level wired to port mode `mode`, or ancilla_dim() when none.
    std::size_t ancilla_of_mode(std::size_t mode) const;
};

AncillaPairing make_pairing(std::size_t d, std::span<const std::size_t> triggers);

/// Loads a (qudit, ancilla) state with dims {d, k+1} into the SMR input
/// ports: the qudit photon on port A, the ancilla photon on port B.
TwoPhotonState inject(const PureState &qudit_ancilla, const AncillaPairing &pairing);

/// Reads a post-selected (C mode, D mode) state back as (qudit, ancilla)
/// with dims {d, k+1}. Throws std::domain_error if a port-D mode outside the
/// pairing carries weight.
PureState read_out(const PureState &coincidence, const AncillaPairing &pairing);

/// Linear map from the (qudit, ancilla) basis to the post-selected (qudit,
/// ancilla) space realized by the MZI mesh followed by coincidence
/// projection; a Kraus operator of order d(k+1). Built by evolving every
/// basis input through the mesh.
Matrix smr_coincidence_operator(const AncillaPairing &pairing);

}  // namespace qompress
