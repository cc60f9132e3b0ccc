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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qompress/exact.hpp"
#include "qompress/mcz.hpp"
#include "qompress/qstate.hpp"
#include "qompress/schemes.hpp"

namespace qompress {

enum class GateKind { H, X, Z, CX, CZ, CCX, CCZ, MCZ, MCX };

std::string_view to_string(GateKind kind);
std::optional<GateKind> parse_gate_kind(std::string_view text);

/// Controlled gates list their controls first and the target last.
struct Gate {
    GateKind kind;
    std::vector<std::size_t> operands;

    bool is_multi_qubit() const { return operands.size() > 1; }
    /// True for CX, CCX and MCX.
    bool is_x_type() const;
    std::size_t target() const { return operands.back(); }
    std::string describe() const;  ///< e.g. "ccx(0,1,3)"

    bool operator==(const Gate &) const = default;
};

struct CircuitIR {
    std::size_t qubits = 0;
    std::vector<Gate> gates;

    /// Throws std::invalid_argument on bad arity, out-of-range or repeated
    /// operands; the message names the offending gate.
    void validate() const;
};

/// Partition of the qubits into qudits. Within a group the first qubit is the
/// most significant bit of the mode index, so group {q0,q1,q2} maps
/// |q0 q1 q2> to mode 4*q0 + 2*q1 + q2.
struct QuditLayout {
    std::vector<std::vector<std::size_t>> groups;

    std::size_t qubit_count() const;
    std::size_t dimension(std::size_t group) const { return std::size_t{1} << groups[group].size(); }
    std::vector<std::size_t> dims() const;
    std::size_t group_of(std::size_t qubit) const;
    /// Bit weight of `qubit` inside its group's mode index.
    std::size_t bit_of(std::size_t qubit) const;

    /// Throws unless the groups are nonempty, disjoint and cover exactly
    /// 0..qubits-1.
    void validate(std::size_t qubits) const;
};

/// Document error with a 1-based source location (0 when the problem is
/// semantic rather than syntactic) and a JSON path such as "gates[2].kind".
class ParseError : public std::runtime_error {
   public:
    ParseError(std::string message, std::size_t line, std::size_t column, std::string path);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string &path() const { return path_; }

   private:
    std::size_t line_;
    std::size_t column_;
    std::string path_;
};

/// {"qubits": N, "gates": [{"kind": "ccx", "operands": [0, 1, 3]}, ...]}
CircuitIR parse_circuit(std::string_view text);
/// {"groups": [[0, 1, 2], [3]]}
QuditLayout parse_layout(std::string_view text);

/// The bundled four-qubit full adder: q0 = a, q1 = b, q2 = carry-in, q3 = 0.
/// Afterwards q2 holds the sum and q3 the carry.
CircuitIR qfa_circuit();
/// (q0 q1 q2)(q3).
QuditLayout qfa_layout();

struct GateClass {
    bool local;
    std::vector<std::size_t> groups;  ///< groups touched, ascending
};

std::vector<GateClass> classify_gates(const CircuitIR &c, const QuditLayout &l);

struct TriggerAssignment {
    std::size_t group1;  ///< lower-index group, plays qudit 1
    std::size_t group2;
    TriggerSet c1;
    TriggerSet c2;
    std::size_t r1;
    std::size_t r2;
};

/// Trigger modes of a non-local gate: in each of the two groups, every mode
/// whose participating bits are all 1, with the group's other (removed)
/// qubits free. Throws std::invalid_argument for single-group gates and for
/// gates spanning more than two groups.
TriggerAssignment trigger_sets(const Gate &gate, const QuditLayout &l);

struct Legality {
    bool legal;
    std::string reason;
    std::optional<std::size_t> blocking_gate;
};

/// The state-dependent scheme needs product-form qudits, so every gate
/// before `gate_index` must be local.
Legality legality_state_dependent(const CircuitIR &c, std::size_t gate_index, const QuditLayout &l);

enum class Backend { Uncompressed, StandardCompression, StateDependentMCZ, StateIndependentMCZ };

std::string_view to_string(Backend backend);
std::optional<Backend> parse_backend(std::string_view text);

inline constexpr std::array<Backend, 4> kBackends = {
    Backend::Uncompressed, Backend::StandardCompression, Backend::StateDependentMCZ,
    Backend::StateIndependentMCZ};

struct CostRow {
    Backend backend;
    std::size_t gate_count;
    Rational probability;
    std::size_t ancilla_count;
    bool legal;
    std::string reason;
};

struct NonLocalGate {
    std::size_t index;
    Gate gate;
    TriggerAssignment triggers;
};

struct CostReport {
    std::vector<NonLocalGate> nonlocal;
    std::vector<CostRow> rows;  ///< one per backend, in kBackends order

    const CostRow &row(Backend backend) const;
};

/// Baseline success probability of one two-level CZ (and hence one CX).
Rational baseline_gate_probability();

/// CX count of a gate in the uncompressed baseline: 0 for single-qubit
/// gates, 2n-3 for n operands (CX 1, CCX 3).
std::size_t uncompressed_cx_count(const Gate &gate);

/// Throws std::invalid_argument if a non-local gate spans more than two
/// groups.
CostReport cost_report(const CircuitIR &c, const QuditLayout &l);

/// Rewrites CX-type gates to CZ-type gates between Hadamards on the target.
CircuitIR normalize_to_cz(const CircuitIR &c);

/// Unitary of a gate restricted to `qubits`, which must contain all of its
/// operands; qubits[0] is the most significant bit.
Matrix gate_matrix(const Gate &gate, const std::vector<std::size_t> &qubits);

struct SimulateOptions {
    Backend backend = Backend::StateIndependentMCZ;
    BsmModel model = BsmModel::linear_optics();
    GateExecution execution = GateExecution::Logical;
};

struct SimulationRow {
    std::vector<std::uint8_t> input;  ///< one bit per qubit
    PureState output;                 ///< qudit register after the circuit
    /// Output bits when the output is a computational basis state.
    std::optional<std::vector<std::uint8_t>> output_bits;
    double success_probability;
    std::optional<Rational> success_exact;
};

/// Runs the circuit on every computational basis input, qudit by qudit.
/// Local gates act as their unitaries. Non-local gates run through the
/// chosen backend: the uncompressed and standard backends apply the logical
/// gate with their cost-model probability; the MCZ backends run the full
/// heralded pipelines and keep the first heralded branch after checking
/// every heralded branch agrees.
std::vector<SimulationRow> simulate_compressed(
    const CircuitIR &c, const QuditLayout &l, const SimulateOptions &options = {});

/// Qubit bits of a qudit-register basis index.
std::vector<std::uint8_t> bits_of_index(const QuditLayout &l, std::size_t index);
std::size_t index_of_bits(const QuditLayout &l, const std::vector<std::uint8_t> &bits);

}  // namespace qompress
