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

#include "qompress/compress.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace qompress {

namespace {

using json = nlohmann::json;

constexpr std::array<std::pair<GateKind, std::string_view>, 9> kGateNames = {{
    {GateKind::H, "h"},
    {GateKind::X, "x"},
    {GateKind::Z, "z"},
    {GateKind::CX, "cx"},
    {GateKind::CZ, "cz"},
    {GateKind::CCX, "ccx"},
    {GateKind::CCZ, "ccz"},
    {GateKind::MCZ, "mcz"},
    {GateKind::MCX, "mcx"},
}};

// Register size above which simulate_compressed refuses to run.
constexpr std::size_t kMaxSimulatedDimension = std::size_t{1} << 20;

std::pair<std::size_t, std::size_t> arity(GateKind kind) {
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Z:
            return {1, 1};
        case GateKind::CX:
        case GateKind::CZ:
            return {2, 2};
        case GateKind::CCX:
        case GateKind::CCZ:
            return {3, 3};
        case GateKind::MCZ:
        case GateKind::MCX:
            break;
    }
    return {2, 64};
}

std::string gate_problem(const Gate &g, std::size_t qubits) {
    auto [lo, hi] = arity(g.kind);
    auto n = g.operands.size();
    if (n < lo || n > hi) {
        return std::string(to_string(g.kind)) + " takes " +
               (lo == hi ? std::to_string(lo) : "at least " + std::to_string(lo)) + " operands, got " +
               std::to_string(n);
    }
    std::set<std::size_t> seen;
    for (auto q : g.operands) {
        if (q >= qubits) {
            return "operand " + std::to_string(q) + " out of range for " + std::to_string(qubits) + " qubits";
        }
        if (!seen.insert(q).second) {
            return "duplicate operand " + std::to_string(q);
        }
    }
    return {};
}

std::pair<std::size_t, std::size_t> location(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    auto end = std::min(byte, text.size());
    for (std::size_t i = 0; i < end; i++) {
        if (text[i] == '\n') {
            line++;
            column = 1;
        } else {
            column++;
        }
    }
    return {line, column};
}

json parse_document(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        // e.byte is one past the offending character.
        auto [line, column] = location(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string what = e.what();
        auto cut = what.find("syntax error");
        throw ParseError(cut == std::string::npos ? what : what.substr(cut), line, column, "");
    }
}

void require_fields(const json &obj, std::initializer_list<std::string_view> allowed, const std::string &path) {
    if (!obj.is_object()) {
        throw ParseError("expected an object", 0, 0, path.empty() ? "$" : path);
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            throw ParseError("unknown field '" + it.key() + "'", 0, 0, path.empty() ? it.key() : path + "." + it.key());
        }
    }
    for (auto key : allowed) {
        if (!obj.contains(key)) {
            throw ParseError("missing field '" + std::string(key) + "'", 0, 0, path.empty() ? "$" : path);
        }
    }
}

std::size_t as_index(const json &v, const std::string &path) {
    if (!v.is_number_unsigned()) {
        throw ParseError("expected a non-negative integer", 0, 0, path);
    }
    return v.get<std::size_t>();
}

std::vector<std::size_t> as_index_list(const json &v, const std::string &path) {
    if (!v.is_array()) {
        throw ParseError("expected an array", 0, 0, path);
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v.size(); i++) {
        out.push_back(as_index(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::string join(const std::vector<std::size_t> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); i++) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s;
}

// Qubits of the given groups, concatenated in group order.
std::vector<std::size_t> qubits_of(const QuditLayout &l, std::initializer_list<std::size_t> groups) {
    std::vector<std::size_t> out;
    for (auto g : groups) {
        out.insert(out.end(), l.groups[g].begin(), l.groups[g].end());
    }
    return out;
}

PureState apply_gate_locally(const PureState &s, const Gate &g, const QuditLayout &l, std::size_t group) {
    return apply(Unitary(gate_matrix(g, l.groups[group])).on({group}), s);
}

}  // namespace

std::string_view to_string(GateKind kind) {
    for (auto [k, name] : kGateNames) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view text) {
    for (auto [k, name] : kGateNames) {
        if (name == text) {
            return k;
        }
    }
    return std::nullopt;
}

bool Gate::is_x_type() const {
    return kind == GateKind::CX || kind == GateKind::CCX || kind == GateKind::MCX;
}

std::string Gate::describe() const {
    return std::string(to_string(kind)) + "(" + join(operands) + ")";
}

void CircuitIR::validate() const {
    for (std::size_t i = 0; i < gates.size(); i++) {
        auto problem = gate_problem(gates[i], qubits);
        if (!problem.empty()) {
            throw std::invalid_argument("gate " + std::to_string(i) + " " + gates[i].describe() + ": " + problem);
        }
    }
}

std::size_t QuditLayout::qubit_count() const {
    std::size_t n = 0;
    for (const auto &g : groups) {
        n += g.size();
    }
    return n;
}

std::vector<std::size_t> QuditLayout::dims() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < groups.size(); i++) {
        out.push_back(dimension(i));
    }
    return out;
}

std::size_t QuditLayout::group_of(std::size_t qubit) const {
    for (std::size_t i = 0; i < groups.size(); i++) {
        if (std::find(groups[i].begin(), groups[i].end(), qubit) != groups[i].end()) {
            return i;
        }
    }
    throw std::invalid_argument("qubit " + std::to_string(qubit) + " is not in the layout");
}

std::size_t QuditLayout::bit_of(std::size_t qubit) const {
    const auto &g = groups[group_of(qubit)];
    auto pos = static_cast<std::size_t>(std::find(g.begin(), g.end(), qubit) - g.begin());
    return std::size_t{1} << (g.size() - 1 - pos);
}

void QuditLayout::validate(std::size_t qubits) const {
    std::vector<bool> seen(qubits, false);
    for (std::size_t i = 0; i < groups.size(); i++) {
        if (groups[i].empty()) {
            throw std::invalid_argument("group " + std::to_string(i) + " is empty");
        }
        if (groups[i].size() > 20) {
            throw std::invalid_argument("group " + std::to_string(i) + " is too large");
        }
        for (auto q : groups[i]) {
            if (q >= qubits) {
                throw std::invalid_argument(
                    "group " + std::to_string(i) + " names qubit " + std::to_string(q) + " of " +
                    std::to_string(qubits));
            }
            if (seen[q]) {
                throw std::invalid_argument("qubit " + std::to_string(q) + " appears in more than one group");
            }
            seen[q] = true;
        }
    }
    for (std::size_t q = 0; q < qubits; q++) {
        if (!seen[q]) {
            throw std::invalid_argument("qubit " + std::to_string(q) + " is not in any group");
        }
    }
}

ParseError::ParseError(std::string message, std::size_t line, std::size_t column, std::string path)
    : std::runtime_error([&] {
          std::string prefix;
          if (line > 0) {
              prefix = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
          } else if (!path.empty()) {
              prefix = path + ": ";
          }
          return prefix + message;
      }()),
      line_(line),
      column_(column),
      path_(std::move(path)) {}

CircuitIR parse_circuit(std::string_view text) {
    auto doc = parse_document(text);
    require_fields(doc, {"qubits", "gates"}, "");
    CircuitIR c;
    c.qubits = as_index(doc["qubits"], "qubits");
    if (c.qubits == 0) {
        throw ParseError("circuit needs at least one qubit", 0, 0, "qubits");
    }
    const auto &gates = doc["gates"];
    if (!gates.is_array()) {
        throw ParseError("expected an array", 0, 0, "gates");
    }
    for (std::size_t i = 0; i < gates.size(); i++) {
        auto path = "gates[" + std::to_string(i) + "]";
        require_fields(gates[i], {"kind", "operands"}, path);
        const auto &kind = gates[i]["kind"];
        if (!kind.is_string()) {
            throw ParseError("expected a string", 0, 0, path + ".kind");
        }
        auto parsed = parse_gate_kind(kind.get<std::string>());
        if (!parsed) {
            throw ParseError("unsupported gate kind '" + kind.get<std::string>() + "'", 0, 0, path + ".kind");
        }
        Gate g{*parsed, as_index_list(gates[i]["operands"], path + ".operands")};
        auto problem = gate_problem(g, c.qubits);
        if (!problem.empty()) {
            throw ParseError(problem, 0, 0, path);
        }
        c.gates.push_back(std::move(g));
    }
    return c;
}

QuditLayout parse_layout(std::string_view text) {
    auto doc = parse_document(text);
    require_fields(doc, {"groups"}, "");
    const auto &groups = doc["groups"];
    if (!groups.is_array() || groups.empty()) {
        throw ParseError("expected a nonempty array", 0, 0, "groups");
    }
    QuditLayout l;
    for (std::size_t i = 0; i < groups.size(); i++) {
        l.groups.push_back(as_index_list(groups[i], "groups[" + std::to_string(i) + "]"));
    }
    try {
        l.validate(l.qubit_count());
    } catch (const std::invalid_argument &e) {
        throw ParseError(e.what(), 0, 0, "groups");
    }
    return l;
}

CircuitIR qfa_circuit() {
    return CircuitIR{
        4,
        {
            {GateKind::CCX, {0, 1, 3}},
            {GateKind::CX, {0, 1}},
            {GateKind::CCX, {1, 2, 3}},
            {GateKind::CX, {1, 2}},
            {GateKind::CX, {0, 1}},
        }};
}

QuditLayout qfa_layout() {
    return QuditLayout{{{0, 1, 2}, {3}}};
}

std::vector<GateClass> classify_gates(const CircuitIR &c, const QuditLayout &l) {
    std::vector<GateClass> out;
    out.reserve(c.gates.size());
    for (const auto &g : c.gates) {
        std::set<std::size_t> groups;
        for (auto q : g.operands) {
            groups.insert(l.group_of(q));
        }
        out.push_back(GateClass{groups.size() == 1, {groups.begin(), groups.end()}});
    }
    return out;
}

TriggerAssignment trigger_sets(const Gate &gate, const QuditLayout &l) {
    std::set<std::size_t> touched;
    for (auto q : gate.operands) {
        touched.insert(l.group_of(q));
    }
    if (touched.size() < 2) {
        throw std::invalid_argument(gate.describe() + " is local; it has no trigger sets");
    }
    if (touched.size() > 2) {
        throw std::invalid_argument(
            gate.describe() + " spans " + std::to_string(touched.size()) +
            " qudits; only two-qudit gates are supported");
    }

    auto triggers_of = [&](std::size_t group) {
        std::size_t mask = 0;
        std::size_t participants = 0;
        for (auto q : gate.operands) {
            if (l.group_of(q) == group) {
                mask |= l.bit_of(q);
                participants++;
            }
        }
        std::vector<std::size_t> modes;
        for (std::size_t m = 0; m < l.dimension(group); m++) {
            if ((m & mask) == mask) {
                modes.push_back(m);
            }
        }
        return std::pair{TriggerSet(l.dimension(group), modes), l.groups[group].size() - participants};
    };

    auto g1 = *touched.begin();
    auto g2 = *touched.rbegin();
    auto [c1, r1] = triggers_of(g1);
    auto [c2, r2] = triggers_of(g2);
    return TriggerAssignment{g1, g2, std::move(c1), std::move(c2), r1, r2};
}

Legality legality_state_dependent(const CircuitIR &c, std::size_t gate_index, const QuditLayout &l) {
    if (gate_index >= c.gates.size()) {
        throw std::out_of_range("gate index out of range");
    }
    auto classes = classify_gates(c, l);
    for (std::size_t i = 0; i < gate_index; i++) {
        if (!classes[i].local) {
            return Legality{
                false,
                "gate " + std::to_string(gate_index) + " is preceded by non-local gate " + std::to_string(i) + " " +
                    c.gates[i].describe(),
                i};
        }
    }
    return Legality{true, "all earlier gates are local", std::nullopt};
}

std::string_view to_string(Backend backend) {
    switch (backend) {
        case Backend::Uncompressed:
            return "uncompressed";
        case Backend::StandardCompression:
            return "standard";
        case Backend::StateDependentMCZ:
            return "state-dependent";
        case Backend::StateIndependentMCZ:
            return "state-independent";
    }
    return "?";
}

std::optional<Backend> parse_backend(std::string_view text) {
    for (auto b : kBackends) {
        if (to_string(b) == text) {
            return b;
        }
    }
    return std::nullopt;
}

const CostRow &CostReport::row(Backend backend) const {
    for (const auto &r : rows) {
        if (r.backend == backend) {
            return r;
        }
    }
    throw std::out_of_range("backend missing from cost report");
}

Rational baseline_gate_probability() {
    return Rational(1, 9);
}

std::size_t uncompressed_cx_count(const Gate &gate) {
    auto n = gate.operands.size();
    return n < 2 ? 0 : 2 * n - 3;
}

CostReport cost_report(const CircuitIR &c, const QuditLayout &l) {
    c.validate();
    l.validate(c.qubits);
    auto classes = classify_gates(c, l);
    const auto lo = BsmModel::linear_optics();

    CostReport report;
    std::size_t cx = 0;
    for (std::size_t i = 0; i < c.gates.size(); i++) {
        cx += uncompressed_cx_count(c.gates[i]);
        if (!classes[i].local) {
            try {
                report.nonlocal.push_back(NonLocalGate{i, c.gates[i], trigger_sets(c.gates[i], l)});
            } catch (const std::invalid_argument &e) {
                throw std::invalid_argument("gate " + std::to_string(i) + ": " + e.what());
            }
        }
    }

    std::size_t standard = 0;
    std::size_t si_gates = 0;
    std::size_t si_ancillas = 0;
    Rational si_probability(1);
    bool sd_legal = true;
    std::string sd_reason = "every non-local gate is preceded only by local gates";
    for (const auto &g : report.nonlocal) {
        const auto &t = g.triggers;
        standard += std::size_t{1} << (t.r1 + t.r2);
        si_gates += t.c1.size() + t.c2.size();
        si_ancillas += 2 * (t.c1.size() + t.c2.size()) + 2;
        si_probability *= success_probability(Scheme::StateIndependent, t.c1.size(), t.c2.size(), lo);
        auto legality = legality_state_dependent(c, g.index, l);
        if (sd_legal && !legality.legal) {
            sd_legal = false;
            sd_reason = legality.reason;
        }
    }
    auto nonlocal = report.nonlocal.size();
    auto sd_probability = pow(success_probability(Scheme::StateDependent, 1, 1, lo), nonlocal);

    report.rows = {
        CostRow{Backend::Uncompressed, cx, pow(baseline_gate_probability(), cx), 0, true, "every CX is a two-qubit gate"},
        CostRow{
            Backend::StandardCompression, standard, pow(baseline_gate_probability(), standard), 0, true,
            "each non-local gate expands into 2^(r1+r2) two-level gates"},
        CostRow{Backend::StateDependentMCZ, nonlocal, sd_probability, 2 * nonlocal, sd_legal, sd_reason},
        CostRow{
            Backend::StateIndependentMCZ, si_gates, si_probability, si_ancillas, true,
            "each non-local gate costs 2^r1 + 2^r2 two-level gates"},
    };
    return report;
}

CircuitIR normalize_to_cz(const CircuitIR &c) {
    CircuitIR out{c.qubits, {}};
    for (const auto &g : c.gates) {
        if (!g.is_x_type()) {
            out.gates.push_back(g);
            continue;
        }
        auto kind = g.kind == GateKind::CX ? GateKind::CZ : g.kind == GateKind::CCX ? GateKind::CCZ : GateKind::MCZ;
        out.gates.push_back({GateKind::H, {g.target()}});
        out.gates.push_back({kind, g.operands});
        out.gates.push_back({GateKind::H, {g.target()}});
    }
    return out;
}

Matrix gate_matrix(const Gate &gate, const std::vector<std::size_t> &qubits) {
    auto bit = [&](std::size_t q) {
        auto it = std::find(qubits.begin(), qubits.end(), q);
        if (it == qubits.end()) {
            throw std::invalid_argument("gate operand " + std::to_string(q) + " outside the given qubits");
        }
        return std::size_t{1} << (qubits.size() - 1 - static_cast<std::size_t>(it - qubits.begin()));
    };
    std::size_t controls = 0;
    for (std::size_t i = 0; i + 1 < gate.operands.size(); i++) {
        controls |= bit(gate.operands[i]);
    }
    auto t = bit(gate.target());
    auto n = std::size_t{1} << qubits.size();
    const double s = 1 / std::sqrt(2.0);

    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; j++) {
        auto col = static_cast<Eigen::Index>(j);
        if ((j & controls) != controls) {
            m(col, col) = 1;
            continue;
        }
        bool one = (j & t) != 0;
        switch (gate.kind) {
            case GateKind::H:
                m(static_cast<Eigen::Index>(j & ~t), col) = s;
                m(static_cast<Eigen::Index>(j | t), col) = one ? -s : s;
                break;
            case GateKind::X:
            case GateKind::CX:
            case GateKind::CCX:
            case GateKind::MCX:
                m(static_cast<Eigen::Index>(j ^ t), col) = 1;
                break;
            case GateKind::Z:
            case GateKind::CZ:
            case GateKind::CCZ:
            case GateKind::MCZ:
                m(col, col) = one ? -1 : 1;
                break;
        }
    }
    return m;
}

std::vector<std::uint8_t> bits_of_index(const QuditLayout &l, std::size_t index) {
    std::vector<std::uint8_t> bits(l.qubit_count(), 0);
    for (std::size_t g = l.groups.size(); g-- > 0;) {
        auto d = l.dimension(g);
        auto mode = index % d;
        index /= d;
        for (auto q : l.groups[g]) {
            bits[q] = (mode & l.bit_of(q)) ? 1 : 0;
        }
    }
    return bits;
}

std::size_t index_of_bits(const QuditLayout &l, const std::vector<std::uint8_t> &bits) {
    std::size_t index = 0;
    for (std::size_t g = 0; g < l.groups.size(); g++) {
        std::size_t mode = 0;
        for (auto q : l.groups[g]) {
            if (bits.at(q)) {
                mode |= l.bit_of(q);
            }
        }
        index = index * l.dimension(g) + mode;
    }
    return index;
}

std::vector<SimulationRow> simulate_compressed(const CircuitIR &c, const QuditLayout &l, const SimulateOptions &options) {
    c.validate();
    l.validate(c.qubits);
    auto dims = l.dims();
    std::size_t total = 1;
    for (auto d : dims) {
        total *= d;
    }
    if (total > kMaxSimulatedDimension) {
        throw std::invalid_argument("register too large to simulate");
    }
    auto classes = classify_gates(c, l);

    // Compile once: trigger sets, legality.
    std::vector<std::optional<TriggerAssignment>> triggers(c.gates.size());
    for (std::size_t i = 0; i < c.gates.size(); i++) {
        if (classes[i].local) {
            continue;
        }
        try {
            triggers[i] = trigger_sets(c.gates[i], l);
        } catch (const std::invalid_argument &e) {
            throw std::invalid_argument("gate " + std::to_string(i) + ": " + e.what());
        }
        if (options.backend == Backend::StateDependentMCZ) {
            auto legality = legality_state_dependent(c, i, l);
            if (!legality.legal) {
                throw std::invalid_argument("state-dependent backend cannot compile: " + legality.reason);
            }
        }
    }

    std::vector<SimulationRow> rows;
    rows.reserve(total);
    for (std::size_t in = 0; in < total; in++) {
        auto s = PureState(dims, Vector::Unit(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(in)));
        double probability = 1;
        std::optional<Rational> exact = Rational(1);

        for (std::size_t i = 0; i < c.gates.size(); i++) {
            const auto &g = c.gates[i];
            if (classes[i].local) {
                s = apply_gate_locally(s, g, l, classes[i].groups.front());
                if (options.backend == Backend::Uncompressed && g.is_multi_qubit()) {
                    auto p = pow(baseline_gate_probability(), uncompressed_cx_count(g));
                    probability *= to_double(p);
                    exact = exact ? std::optional(*exact * p) : std::nullopt;
                }
                continue;
            }

            const auto &t = *triggers[i];
            if (options.backend == Backend::Uncompressed || options.backend == Backend::StandardCompression) {
                auto count = options.backend == Backend::Uncompressed ? uncompressed_cx_count(g)
                                                                      : std::size_t{1} << (t.r1 + t.r2);
                auto p = pow(baseline_gate_probability(), count);
                s = apply(Unitary(gate_matrix(g, qubits_of(l, {t.group1, t.group2}))).on({t.group1, t.group2}), s);
                probability *= to_double(p);
                exact = exact ? std::optional(*exact * p) : std::nullopt;
                continue;
            }

            // X-type gates become CZ-type between Hadamards on the target.
            Gate h{GateKind::H, {g.target()}};
            auto target_group = l.group_of(g.target());
            if (g.is_x_type()) {
                s = apply_gate_locally(s, h, l, target_group);
            }
            SchemeResult r = [&] {
                if (options.backend == Backend::StateDependentMCZ) {
                    auto psi1 = factor_out(s, t.group1);
                    auto psi2 = factor_out(s, t.group2);
                    auto a = prepare_ancillas(psi1, psi2, t.c1, t.c2);
                    return run_state_dependent(s, t.group1, t.group2, t.c1, t.c2, a[0].xi, a[1].xi, options.model);
                }
                return run_state_independent(s, t.group1, t.group2, t.c1, t.c2, options.model, options.execution);
            }();
            for (const auto &b : r.branches) {
                if (fidelity_up_to_phase(b.output, r.output) < 1 - 1e-9) {
                    throw std::logic_error("heralded branches disagree at gate " + std::to_string(i));
                }
            }
            s = r.output;
            if (g.is_x_type()) {
                s = apply_gate_locally(s, h, l, target_group);
            }
            probability *= r.success_probability;
            exact = exact && r.success_exact ? std::optional(*exact * *r.success_exact) : std::nullopt;
        }

        SimulationRow row{bits_of_index(l, in), s, std::nullopt, probability, exact};
        for (std::size_t k = 0; k < total; k++) {
            if (std::norm(s[k]) > 1 - 1e-9) {
                row.output_bits = bits_of_index(l, k);
                break;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qompress
