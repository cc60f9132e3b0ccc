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

#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>
#include "qompress/compress.hpp"
#include "qompress/random.hpp"
#include "qompress/schemes.hpp"

namespace qompress::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kFidelityTol = 1e-10;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string fixed(double x, int digits) {
    std::ostringstream ss;
    ss << std::setprecision(digits) << std::fixed << x;
    return ss.str();
}

std::string general(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

/// "1/8 (0.125)": exact first, float second.
std::string render(const Rational &r) {
    return to_string(r) + " (" + general(to_double(r)) + ")";
}

ojson probability_json(const Rational &r) {
    return ojson{{"exact", to_string(r)}, {"float", to_double(r)}};
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string read_text(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CircuitIR load_circuit(const std::string &path) {
    try {
        return parse_circuit(read_text(path));
    } catch (const ParseError &e) {
        throw UsageError(path + ": " + e.what());
    }
}

QuditLayout load_layout(const std::string &path, std::size_t qubits) {
    QuditLayout l;
    try {
        l = parse_layout(read_text(path));
    } catch (const ParseError &e) {
        throw UsageError(path + ": " + e.what());
    }
    try {
        l.validate(qubits);
    } catch (const std::invalid_argument &e) {
        throw UsageError(path + ": layout does not fit the circuit: " + e.what());
    }
    return l;
}

BsmModel model_from(const std::string &name, const std::string &herald) {
    if (!herald.empty()) {
        std::vector<BellLabel> labels;
        std::stringstream ss(herald);
        std::string token;
        while (std::getline(ss, token, ',')) {
            auto label = parse_bell_label(token);
            if (!label) {
                throw UsageError("unknown Bell label '" + token + "' (use phi+, phi-, psi+, psi-)");
            }
            labels.push_back(*label);
        }
        return BsmModel::heralding(labels);
    }
    return name == "ideal" ? BsmModel::ideal() : BsmModel::linear_optics();
}

std::string layout_string(const QuditLayout &l) {
    std::string s;
    for (const auto &g : l.groups) {
        s += "(";
        for (std::size_t i = 0; i < g.size(); i++) s += (i ? " " : "") + std::to_string(g[i]);
        s += ")";
    }
    return s;
}

// ---- verify ---------------------------------------------------------------

struct VerifyConfig {
    std::size_t d1 = 8;
    std::size_t d2 = 2;
    std::string c1 = "3,7";
    std::string c2 = "1";
    std::string scheme = "state-dependent";
    std::string model = "linear-optics";
    std::string herald;
    std::string execution = "logical";
    std::size_t samples = 20;
};

int cmd_verify(const VerifyConfig &cfg, std::uint64_t seed, bool json, std::ostream &out) {
    if (cfg.d1 < 2 || cfg.d1 > 64 || cfg.d2 < 2 || cfg.d2 > 64) {
        throw UsageError("dimensions must lie in [2, 64]");
    }
    TriggerSet c1 = [&] {
        try {
            return TriggerSet::parse(cfg.d1, cfg.c1);
        } catch (const std::invalid_argument &e) {
            throw UsageError(std::string("--c1: ") + e.what());
        }
    }();
    TriggerSet c2 = [&] {
        try {
            return TriggerSet::parse(cfg.d2, cfg.c2);
        } catch (const std::invalid_argument &e) {
            throw UsageError(std::string("--c2: ") + e.what());
        }
    }();
    auto model = model_from(cfg.model, cfg.herald);
    auto scheme = cfg.scheme == "state-independent" ? Scheme::StateIndependent : Scheme::StateDependent;
    auto execution = cfg.execution == "optical" ? GateExecution::Optical : GateExecution::Logical;
    auto expected = success_probability(scheme, c1.size(), c2.size(), model);
    auto reference = u_mcz(c1, c2);

    Rng rng(seed);
    std::vector<PureState> inputs;
    if (cfg.d1 * cfg.d2 <= 256) {
        for (std::size_t m = 0; m < cfg.d1; m++)
            for (std::size_t n = 0; n < cfg.d2; n++) inputs.push_back(PureState::basis({cfg.d1, cfg.d2}, {m, n}));
    }
    for (std::size_t i = 0; i < cfg.samples; i++) {
        inputs.push_back(tensor(random_state({cfg.d1}, rng), random_state({cfg.d2}, rng)));
    }
    std::size_t entangled = 0;
    if (scheme == Scheme::StateIndependent) {
        for (std::size_t i = 0; i < cfg.samples; i++) inputs.push_back(random_state({cfg.d1, cfg.d2}, rng));
        entangled = cfg.samples;
    }

    double worst = 1;
    std::set<std::string> probabilities;
    bool exact_ok = true;
    std::size_t ancillas = 0, nonlocal = 0;
    std::string error;
    try {
        for (const auto &psi : inputs) {
            SchemeResult r = [&] {
                if (scheme == Scheme::StateIndependent) {
                    return run_state_independent(psi, 0, 1, c1, c2, model, execution);
                }
                auto a = prepare_ancillas(factor_out(psi, 0), factor_out(psi, 1), c1, c2);
                return run_state_dependent(psi, 0, 1, c1, c2, a[0].xi, a[1].xi, model);
            }();
            auto want = apply(reference, psi);
            for (const auto &b : r.branches) worst = std::min(worst, fidelity_up_to_phase(b.output, want));
            probabilities.insert(r.success_exact ? to_string(*r.success_exact) : "unrecovered");
            exact_ok = exact_ok && r.success_exact && *r.success_exact == expected;
            ancillas = r.ancilla_count;
            nonlocal = r.nonlocal_gate_count;
        }
    } catch (const std::exception &e) {
        error = e.what();
    }
    bool fidelity_ok = worst >= 1 - kFidelityTol;
    bool pass = error.empty() && fidelity_ok && exact_ok;

    std::string seen;
    for (const auto &p : probabilities) seen += (seen.empty() ? "" : ", ") + p;

    if (json) {
        ojson j;
        j["command"] = "verify";
        j["scheme"] = std::string(to_string(scheme));
        j["model"] = model.name();
        j["execution"] = cfg.execution;
        j["d1"] = cfg.d1;
        j["d2"] = cfg.d2;
        j["c1"] = c1.indices();
        j["c2"] = c2.indices();
        j["seed"] = seed;
        j["inputs"] = inputs.size();
        j["entangled_inputs"] = entangled;
        j["min_fidelity"] = worst;
        j["fidelity_tolerance"] = kFidelityTol;
        j["success_probability"] = probability_json(expected);
        j["observed_probabilities"] = ojson::array();
        for (const auto &p : probabilities) j["observed_probabilities"].push_back(p);
        j["ancillas"] = ancillas;
        j["nonlocal_gates"] = nonlocal;
        if (!error.empty()) j["error"] = error;
        j["pass"] = pass;
        out << j.dump(2) << "\n";
    } else {
        out << "verify " << to_string(scheme) << "  d1=" << cfg.d1 << " C1=" << c1.to_string() << "  d2=" << cfg.d2
            << " C2=" << c2.to_string() << "  model=" << model.name() << "\n";
        out << "  inputs               " << inputs.size() << " (" << entangled << " entangled), seed " << seed << "\n";
        out << "  min fidelity         " << fixed(worst, 15) << (fidelity_ok ? "" : "  FAIL") << "\n";
        out << "  success probability  " << render(expected) << "\n";
        out << "  observed             " << seen << (exact_ok ? "" : "  FAIL") << "\n";
        out << "  ancillas             " << ancillas << "\n";
        out << "  non-local gates      " << nonlocal << "\n";
        if (!error.empty()) out << "  error                " << error << "\n";
        out << "  result               " << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? kOk : kCheckFailed;
}

// ---- compress -------------------------------------------------------------

int cmd_compress(const std::string &circuit_path, const std::string &layout_path, bool json, std::ostream &out) {
    auto c = load_circuit(circuit_path);
    auto l = load_layout(layout_path, c.qubits);
    CostReport report;
    try {
        report = cost_report(c, l);
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("unsupported circuit: ") + e.what());
    }

    if (json) {
        ojson j;
        j["command"] = "compress";
        j["qubits"] = c.qubits;
        j["gates"] = c.gates.size();
        j["layout"] = l.groups;
        j["nonlocal"] = ojson::array();
        for (const auto &g : report.nonlocal) {
            j["nonlocal"].push_back(ojson{
                {"index", g.index},
                {"gate", g.gate.describe()},
                {"qudits", {g.triggers.group1, g.triggers.group2}},
                {"c1", g.triggers.c1.indices()},
                {"c2", g.triggers.c2.indices()},
                {"r1", g.triggers.r1},
                {"r2", g.triggers.r2}});
        }
        j["backends"] = ojson::array();
        for (const auto &row : report.rows) {
            j["backends"].push_back(ojson{
                {"backend", std::string(to_string(row.backend))},
                {"gates", row.gate_count},
                {"success_probability", probability_json(row.probability)},
                {"ancillas", row.ancilla_count},
                {"legal", row.legal},
                {"reason", row.reason}});
        }
        out << j.dump(2) << "\n";
        return kOk;
    }

    out << "circuit: " << c.qubits << " qubits, " << c.gates.size() << " gates; layout " << layout_string(l) << "\n";
    if (report.nonlocal.empty()) {
        out << "no non-local gates\n";
    } else {
        out << "non-local gates:\n";
        for (const auto &g : report.nonlocal) {
            out << "  #" << g.index << " " << pad(g.gate.describe(), 14) << " qudits " << g.triggers.group1 << ","
                << g.triggers.group2 << "  C1=" << g.triggers.c1.to_string() << " r1=" << g.triggers.r1
                << "  C2=" << g.triggers.c2.to_string() << " r2=" << g.triggers.r2 << "\n";
        }
    }
    out << "\n" << pad("backend", 19) << pad("gates", 7) << pad("success probability", 34) << pad("ancillas", 10)
        << "realizable\n";
    for (const auto &row : report.rows) {
        out << pad(std::string(to_string(row.backend)), 19) << pad(std::to_string(row.gate_count), 7)
            << pad(render(row.probability), 34) << pad(std::to_string(row.ancilla_count), 10)
            << (row.legal ? "yes" : "no") << "\n";
    }
    for (const auto &row : report.rows) {
        if (!row.legal) out << "  " << to_string(row.backend) << ": " << row.reason << "\n";
    }
    return kOk;
}

// ---- simulate -------------------------------------------------------------

struct SimulateConfig {
    std::string circuit;
    std::string layout;
    std::string backend = "state-independent";
    std::string model = "linear-optics";
    std::string execution = "logical";
    std::size_t shots = 0;
};

std::string bits_string(const std::vector<std::uint8_t> &bits) {
    std::string s;
    for (auto b : bits) s += b ? '1' : '0';
    return s;
}

int cmd_simulate(const SimulateConfig &cfg, std::uint64_t seed, bool json, std::ostream &out) {
    auto c = load_circuit(cfg.circuit);
    auto l = load_layout(cfg.layout, c.qubits);
    SimulateOptions options{
        *parse_backend(cfg.backend), model_from(cfg.model, ""),
        cfg.execution == "optical" ? GateExecution::Optical : GateExecution::Logical};
    std::vector<SimulationRow> rows;
    try {
        rows = simulate_compressed(c, l, options);
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("cannot simulate: ") + e.what());
    }

    // Sampling: one Bernoulli trial per shot with the row's success
    // probability, from a generator seeded once.
    Rng rng(seed);
    std::vector<std::size_t> heralded(rows.size(), 0);
    for (std::size_t i = 0; i < rows.size() && cfg.shots > 0; i++) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::size_t s = 0; s < cfg.shots; s++) heralded[i] += u(rng) < rows[i].success_probability;
    }

    if (json) {
        ojson j;
        j["command"] = "simulate";
        j["backend"] = cfg.backend;
        j["model"] = options.model.name();
        j["seed"] = seed;
        j["shots"] = cfg.shots;
        j["rows"] = ojson::array();
        for (std::size_t i = 0; i < rows.size(); i++) {
            ojson r{{"input", bits_string(rows[i].input)}};
            r["output"] = rows[i].output_bits ? ojson(bits_string(*rows[i].output_bits)) : ojson(nullptr);
            r["success_probability"] = rows[i].success_exact ? probability_json(*rows[i].success_exact)
                                                             : ojson{{"exact", nullptr}, {"float", rows[i].success_probability}};
            if (cfg.shots > 0) r["heralded"] = heralded[i];
            j["rows"].push_back(r);
        }
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << "simulate " << cfg.backend << " (" << options.model.name() << "); qubit order q0..q" << c.qubits - 1
        << "\n";
    out << pad("input", c.qubits + 3) << pad("output", std::max<std::size_t>(c.qubits + 3, 14)) << (cfg.shots ? pad("success probability", 34) + "heralded" : "success probability") << "\n";
    for (std::size_t i = 0; i < rows.size(); i++) {
        auto p = rows[i].success_exact ? render(*rows[i].success_exact) : general(rows[i].success_probability);
        out << pad(bits_string(rows[i].input), c.qubits + 3)
            << pad(rows[i].output_bits ? bits_string(*rows[i].output_bits) : "superposition",
                   std::max<std::size_t>(c.qubits + 3, 14))
            << (cfg.shots ? pad(p, 34) + std::to_string(heralded[i]) + "/" + std::to_string(cfg.shots) : p);
        out << "\n";
    }
    return kOk;
}

// ---- reproduce ------------------------------------------------------------

int cmd_reproduce(const std::string &herald, std::uint64_t seed, bool json, std::ostream &out) {
    ReproduceOptions options{model_from("linear-optics", herald), seed};
    auto claims = reproduce_claims(options);
    bool all = true;
    for (const auto &c : claims) all = all && c.pass;

    if (json) {
        ojson j;
        j["command"] = "reproduce";
        j["model"] = options.model.name();
        j["seed"] = seed;
        j["claims"] = ojson::array();
        for (const auto &c : claims) {
            j["claims"].push_back(ojson{
                {"id", c.id}, {"description", c.description}, {"expected", c.expected}, {"computed", c.computed},
                {"pass", c.pass}});
        }
        j["pass"] = all;
        out << j.dump(2) << "\n";
    } else {
        std::size_t passed = 0;
        for (const auto &c : claims) {
            passed += c.pass;
            out << (c.pass ? "PASS " : "FAIL ") << pad(c.id, 23) << c.description << "\n"
                << "     expected " << c.expected << "\n"
                << "     computed " << c.computed << "\n";
        }
        out << passed << "/" << claims.size() << " claims hold\n";
    }
    return all ? kOk : kCheckFailed;
}

std::uint64_t default_seed() {
    if (const char *env = std::getenv("QOMPRESS_SEED")) {
        try {
            std::size_t used = 0;
            auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception &) {
        }
        throw UsageError("QOMPRESS_SEED must be a non-negative integer");
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Multi-level CZ gates on photonic qudits and qudit circuit compression", "qompress"};
    app.require_subcommand(1);

    std::string format = "human";
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json"}));
        sub->add_option("--seed", seed, "Seed for random inputs (default 0, or QOMPRESS_SEED)");
    };

    VerifyConfig vc;
    auto *verify = app.add_subcommand("verify", "Check a multi-level CZ realization against the gate oracle");
    verify->add_option("--d1", vc.d1, "Dimension of qudit 1")->capture_default_str();
    verify->add_option("--d2", vc.d2, "Dimension of qudit 2")->capture_default_str();
    verify->add_option("--c1", vc.c1, "Trigger levels of qudit 1, e.g. 3,7")->capture_default_str();
    verify->add_option("--c2", vc.c2, "Trigger levels of qudit 2")->capture_default_str();
    verify->add_option("--scheme", vc.scheme)->check(CLI::IsMember({"state-dependent", "state-independent"}))
        ->capture_default_str();
    verify->add_option("--model", vc.model, "Bell measurement")->check(CLI::IsMember({"linear-optics", "ideal"}))
        ->capture_default_str();
    verify->add_option("--herald", vc.herald, "Override the heralded Bell outcomes, e.g. psi+,psi-");
    verify->add_option("--execution", vc.execution, "Inner two-level gates of the state-independent scheme")
        ->check(CLI::IsMember({"logical", "optical"}))->capture_default_str();
    verify->add_option("--samples", vc.samples, "Random inputs per check")->capture_default_str();
    add_common(verify);

    std::string circuit_path, layout_path;
    auto *compress = app.add_subcommand("compress", "Cost report of a circuit under a qudit layout");
    compress->add_option("circuit", circuit_path, "Circuit JSON")->required();
    compress->add_option("layout", layout_path, "Layout JSON")->required();
    add_common(compress);

    SimulateConfig sc;
    auto *simulate = app.add_subcommand("simulate", "Truth table of a compressed circuit");
    simulate->add_option("circuit", sc.circuit, "Circuit JSON")->required();
    simulate->add_option("layout", sc.layout, "Layout JSON")->required();
    simulate->add_option("--backend", sc.backend)
        ->check(CLI::IsMember({"uncompressed", "standard", "state-dependent", "state-independent"}))
        ->capture_default_str();
    simulate->add_option("--model", sc.model)->check(CLI::IsMember({"linear-optics", "ideal"}))->capture_default_str();
    simulate->add_option("--execution", sc.execution)->check(CLI::IsMember({"logical", "optical"}))
        ->capture_default_str();
    simulate->add_option("--shots", sc.shots, "Sampled runs per input (0: exact only)")->capture_default_str();
    add_common(simulate);

    std::string herald;
    auto *reproduce = app.add_subcommand("reproduce", "Check every headline number");
    reproduce->add_option("--herald", herald, "Override the heralded Bell outcomes (negative control)");
    add_common(reproduce);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        seed = default_seed();
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "qompress: " << e.what() << "\n";
        if (!app.get_subcommands().empty()) {
            err << "run 'qompress " << app.get_subcommands().front()->get_name() << " --help' for usage\n";
        }
        return kUsage;
    } catch (const UsageError &e) {
        err << "qompress: " << e.what() << "\n";
        return kUsage;
    }

    bool json = format == "json";
    try {
        if (verify->parsed()) return cmd_verify(vc, seed, json, out);
        if (compress->parsed()) return cmd_compress(circuit_path, layout_path, json, out);
        if (simulate->parsed()) return cmd_simulate(sc, seed, json, out);
        if (reproduce->parsed()) return cmd_reproduce(herald, seed, json, out);
    } catch (const UsageError &e) {
        err << "qompress: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument &e) {
        err << "qompress: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace qompress::cli
