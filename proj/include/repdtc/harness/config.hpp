// Copyright 2026 The repdtc Authors
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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "repdtc/disorder.hpp"
#include "repdtc/errors.hpp"
#include "repdtc/layout.hpp"
#include "repdtc/models.hpp"
#include "repdtc/observables.hpp"

namespace repdtc {

enum class Lowering { PauliLayers, LocalGadgets, NativeIswap };
enum class NoiseMode { None, Temporal };

inline std::string lowering_name(Lowering l) {
    switch (l) {
        case Lowering::PauliLayers:
            return "pauli-layers";
        case Lowering::LocalGadgets:
            return "local-gadgets";
        case Lowering::NativeIswap:
            return "native-iswap";
    }
    return "?";
}

inline Lowering parse_lowering(const std::string &s) {
    if (s == "pauli-layers") return Lowering::PauliLayers;
    if (s == "local-gadgets") return Lowering::LocalGadgets;
    if (s == "native-iswap") return Lowering::NativeIswap;
    throw ConfigError("lowering: unknown level '" + s + "' (expected pauli-layers, local-gadgets or native-iswap)");
}

/// Everything that determines a run. Replaying the same config (including
/// the seed) reproduces every series bit for bit.
struct ExperimentConfig {
    std::string name = "custom";
    DisorderConfig disorder;
    std::size_t realizations = 100;
    std::size_t cycles = 500;
    /// Spectrum window [first, last]; last = 0 means the final cycle.
    std::size_t window_first = 1;
    std::size_t window_last = 0;
    double initial_angle = std::numbers::pi / 8;
    /// Relative per-qubit jitter of the initial angle.
    double initial_jitter = 0.0;
    Lowering lowering = Lowering::PauliLayers;
    NoiseMode noise = NoiseMode::None;
    TemporalNoiseSpec temporal;
    /// 0 = exact expectation values.
    std::size_t shots = 0;
    /// Observed qubits; empty = whole register.
    std::vector<std::size_t> observe;
    /// Subharmonic targets; empty = 2 pi / P and 2 pi (P - 1) / P for the model period P.
    std::vector<double> targets;
    SpectrumMode spectrum_mode = SpectrumMode::SeriesFirst;
    /// Refuse runs whose estimated single-thread time exceeds this many seconds.
    double max_seconds = 6 * 3600.0;

    const ModelSpec &model() const { return disorder.model; }
    const ChainLayout &layout() const { return disorder.layout; }
    std::uint64_t seed() const { return disorder.master_seed; }

    std::size_t window_end() const { return window_last == 0 ? cycles : window_last; }

    std::vector<double> resolved_targets() const {
        if (!targets.empty()) {
            return targets;
        }
        const double P = static_cast<double>(model().period());
        return {2 * std::numbers::pi / P, 2 * std::numbers::pi * (P - 1) / P};
    }

    void validate() const {
        layout().validate(2);
        if (layout().chains != model().required_chains()) {
            throw ConfigError("chains: model " + model().name() + " needs " + std::to_string(model().required_chains()) +
                              " chains, got " + std::to_string(layout().chains));
        }
        if (disorder.coupling.empty()) {
            throw ConfigError("coupling: missing spec");
        }
        if (realizations < 1) {
            throw ConfigError("realizations: must be >= 1");
        }
        if (cycles < 2) {
            throw ConfigError("cycles: must be >= 2");
        }
        if (window_first < 1 || window_end() > cycles || window_end() < window_first + 1) {
            throw ConfigError("window: need 1 <= first < last <= cycles");
        }
        if (noise == NoiseMode::Temporal && lowering != Lowering::NativeIswap) {
            throw ConfigError("noise: temporal noise attaches to native gates and needs lowering = native-iswap");
        }
        if (initial_jitter < 0) {
            throw ConfigError("initial_jitter: must be >= 0");
        }
        for (auto q : observe) {
            if (q >= layout().num_qubits()) {
                throw ConfigError("observe: qubit " + std::to_string(q) + " out of range");
            }
        }
        const std::size_t tau = window_end() - window_first + 1;
        for (double w : resolved_targets()) {
            double k = w * static_cast<double>(tau) / (2 * std::numbers::pi);
            if (std::abs(k - std::round(k)) > 1e-9) {
                throw ConfigError("targets: frequency " + std::to_string(w) + " is off the " + std::to_string(tau) +
                                  "-point grid of the spectrum window");
            }
        }
    }
};

namespace detail {

inline std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string &s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

/// Reals may be written as plain numbers or as multiples of pi:
/// `pi`, `pi/8`, `3*pi/2`, `0.5*pi`.
inline double parse_real(const std::string &field, const std::string &text) {
    auto fail = [&]() -> double { throw ConfigError(field + ": cannot parse '" + text + "' as a number"); };
    std::string t = trim(text);
    if (t.empty()) {
        return fail();
    }
    auto number = [&](const std::string &s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (...) {
            fail();
        }
        if (used != s.size()) {
            fail();
        }
        return v;
    };
    auto p = t.find("pi");
    if (p == std::string::npos) {
        return number(t);
    }
    double coeff = 1.0, denom = 1.0;
    std::string before = t.substr(0, p), after = t.substr(p + 2);
    if (!before.empty()) {
        if (before == "-") {
            coeff = -1.0;
        } else if (before.back() == '*') {
            coeff = number(before.substr(0, before.size() - 1));
        } else {
            fail();
        }
    }
    if (!after.empty()) {
        if (after[0] != '/') {
            fail();
        }
        denom = number(after.substr(1));
    }
    return coeff * std::numbers::pi / denom;
}

inline std::size_t parse_count(const std::string &field, const std::string &text) {
    std::string t = trim(text);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        if (!t.empty() && t[0] == '-') {
            throw std::invalid_argument("negative");
        }
        v = std::stoull(t, &used);
    } catch (...) {
        throw ConfigError(field + ": expected a non-negative integer, got '" + text + "'");
    }
    if (used != t.size()) {
        throw ConfigError(field + ": expected a non-negative integer, got '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

inline DisorderSpec parse_spec(const std::string &field, const std::string &text) {
    auto toks = split_ws(text);
    if (toks.size() != 2) {
        throw ConfigError(field + ": expected '<mean> <half-width>', got '" + text + "'");
    }
    DisorderSpec s{parse_real(field, toks[0]), parse_real(field, toks[1])};
    s.validate(field);
    return s;
}

// Shortest text that parses back to the same double.
inline std::string fmt(double x) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
}

}  // namespace detail

/// Parses the line-oriented `key = value` format with `[section]` headers.
/// Sections: [experiment], [disorder], [noise]. `#` and `;` start comments.
inline ExperimentConfig parse_config(const std::string &text, const std::string &origin = "config") {
    using detail::parse_count;
    using detail::parse_real;
    using detail::parse_spec;
    ExperimentConfig cfg;
    cfg.name = origin;
    std::map<std::string, std::string> seen;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    std::optional<std::size_t> chains, sites;
    std::optional<std::string> model_name;
    std::vector<std::pair<std::size_t, DisorderSpec>> per_chain;
    std::optional<DisorderSpec> shared_coupling;

    while (std::getline(in, raw)) {
        lineno++;
        std::string line = raw;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        const std::string where = origin + ":" + std::to_string(lineno) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(where + "unterminated section header");
            }
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section != "experiment" && section != "disorder" && section != "noise") {
                throw ConfigError(where + "unknown section [" + section + "]");
            }
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + "expected 'key = value'");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (section.empty()) {
            throw ConfigError(where + "key '" + key + "' outside any section");
        }
        const std::string field = section + "." + key;
        if (seen.count(field)) {
            throw ConfigError(where + field + ": duplicate key");
        }
        seen[field] = value;
        try {
            if (section == "experiment") {
                if (key == "name") cfg.name = value;
                else if (key == "model") model_name = value;
                else if (key == "chains") chains = parse_count(field, value);
                else if (key == "sites") sites = parse_count(field, value);
                else if (key == "realizations") cfg.realizations = parse_count(field, value);
                else if (key == "cycles") cfg.cycles = parse_count(field, value);
                else if (key == "window") {
                    auto t = detail::split_ws(value);
                    if (t.size() != 2) throw ConfigError(field + ": expected '<first> <last>'");
                    cfg.window_first = parse_count(field, t[0]);
                    cfg.window_last = parse_count(field, t[1]);
                } else if (key == "initial_angle") cfg.initial_angle = parse_real(field, value);
                else if (key == "initial_jitter") cfg.initial_jitter = parse_real(field, value);
                else if (key == "lowering") cfg.lowering = parse_lowering(value);
                else if (key == "noise") {
                    if (value == "none") cfg.noise = NoiseMode::None;
                    else if (value == "temporal") cfg.noise = NoiseMode::Temporal;
                    else throw ConfigError(field + ": expected none or temporal");
                } else if (key == "shots") {
                    cfg.shots = value == "exact" ? 0 : parse_count(field, value);
                } else if (key == "observe") {
                    cfg.observe.clear();
                    if (value != "all") {
                        for (const auto &t : detail::split_ws(value)) {
                            std::string q = t[0] == 'q' ? t.substr(1) : t;
                            cfg.observe.push_back(parse_count(field, q));
                        }
                    }
                } else if (key == "targets") {
                    cfg.targets.clear();
                    if (value != "auto") {
                        for (const auto &t : detail::split_ws(value)) {
                            cfg.targets.push_back(parse_real(field, t));
                        }
                    }
                } else if (key == "spectrum") {
                    if (value == "series-first") cfg.spectrum_mode = SpectrumMode::SeriesFirst;
                    else if (value == "spectrum-first") cfg.spectrum_mode = SpectrumMode::SpectrumFirst;
                    else throw ConfigError(field + ": expected series-first or spectrum-first");
                } else if (key == "seed") {
                    try {
                        cfg.disorder.master_seed = std::stoull(value);
                    } catch (...) {
                        throw ConfigError(field + ": expected a 64-bit unsigned integer");
                    }
                } else if (key == "max_seconds") cfg.max_seconds = parse_real(field, value);
                else throw ConfigError(field + ": unknown key");
            } else if (section == "disorder") {
                if (key == "coupling") shared_coupling = parse_spec(field, value);
                else if (key.rfind("coupling.", 0) == 0) {
                    per_chain.emplace_back(parse_count(field, key.substr(9)), parse_spec(field, value));
                } else if (key == "field_factor") cfg.disorder.field_factor = parse_spec(field, value);
                else if (key == "cnot_factor") cfg.disorder.cnot_factor = parse_spec(field, value);
                else if (key == "scale_factor") cfg.disorder.scale_factor = parse_spec(field, value);
                else if (key == "field_z") cfg.disorder.field_z = parse_spec(field, value);
                else if (key == "long_range_exponent") cfg.disorder.long_range_exponent = parse_real(field, value);
                else if (key == "gate_error") {
                    auto t = detail::split_ws(value);
                    if (t.size() < 2 || t.size() > 3) {
                        throw ConfigError(field + ": expected '<low> <high> [signed|one-sided]'");
                    }
                    GateErrorSpec g{parse_real(field, t[0]), parse_real(field, t[1]), ErrorSign::Signed};
                    if (t.size() == 3) {
                        if (t[2] == "signed") g.sign = ErrorSign::Signed;
                        else if (t[2] == "one-sided") g.sign = ErrorSign::OneSided;
                        else throw ConfigError(field + ": sign mode must be signed or one-sided");
                    }
                    g.validate();
                    cfg.disorder.gate_error = g;
                } else throw ConfigError(field + ": unknown key");
            } else {
                if (key == "rotation") cfg.temporal.rotation = parse_real(field, value);
                else if (key == "iswap") cfg.temporal.iswap = parse_real(field, value);
                else throw ConfigError(field + ": unknown key");
            }
        } catch (const ConfigError &e) {
            std::string msg = e.what();
            if (msg.rfind(origin, 0) == 0) {
                throw;
            }
            throw ConfigError(where + msg);
        }
    }
    if (!model_name) {
        throw ConfigError(origin + ": experiment.model is required");
    }
    cfg.disorder.model = ModelSpec::parse(*model_name);
    cfg.disorder.layout.chains = chains.value_or(cfg.disorder.model.required_chains());
    if (!sites) {
        throw ConfigError(origin + ": experiment.sites is required");
    }
    cfg.disorder.layout.sites = *sites;
    if (shared_coupling && !per_chain.empty()) {
        throw ConfigError(origin + ": give either disorder.coupling or disorder.coupling.<chain>, not both");
    }
    if (shared_coupling) {
        cfg.disorder.coupling = {*shared_coupling};
    } else if (!per_chain.empty()) {
        cfg.disorder.coupling.assign(cfg.disorder.layout.chains, DisorderSpec{});
        std::vector<bool> given(cfg.disorder.layout.chains, false);
        for (const auto &[c, s] : per_chain) {
            if (c >= cfg.disorder.layout.chains) {
                throw ConfigError(origin + ": disorder.coupling." + std::to_string(c) + ": chain out of range");
            }
            cfg.disorder.coupling[c] = s;
            given[c] = true;
        }
        for (std::size_t c = 0; c < given.size(); c++) {
            if (!given[c]) {
                throw ConfigError(origin + ": disorder.coupling." + std::to_string(c) + " is missing");
            }
        }
    }
    cfg.validate();
    return cfg;
}

inline ExperimentConfig load_config(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path);
}

/// Canonical text form; parse_config(to_config_text(c)) == c field by field.
inline std::string to_config_text(const ExperimentConfig &c) {
    using detail::fmt;
    std::ostringstream o;
    auto spec = [](const DisorderSpec &s) { return fmt(s.mean) + " " + fmt(s.half_width); };
    o << "[experiment]\n";
    o << "name = " << c.name << "\n";
    o << "model = " << c.model().name() << "\n";
    o << "chains = " << c.layout().chains << "\n";
    o << "sites = " << c.layout().sites << "\n";
    o << "realizations = " << c.realizations << "\n";
    o << "cycles = " << c.cycles << "\n";
    o << "window = " << c.window_first << " " << c.window_last << "\n";
    o << "initial_angle = " << fmt(c.initial_angle) << "\n";
    o << "initial_jitter = " << fmt(c.initial_jitter) << "\n";
    o << "lowering = " << lowering_name(c.lowering) << "\n";
    o << "noise = " << (c.noise == NoiseMode::Temporal ? "temporal" : "none") << "\n";
    o << "shots = " << c.shots << "\n";
    o << "observe =";
    if (c.observe.empty()) {
        o << " all";
    }
    for (auto q : c.observe) {
        o << " q" << q;
    }
    o << "\n";
    o << "targets =";
    if (c.targets.empty()) {
        o << " auto";
    }
    for (double w : c.targets) {
        o << " " << fmt(w);
    }
    o << "\n";
    o << "spectrum = " << (c.spectrum_mode == SpectrumMode::SeriesFirst ? "series-first" : "spectrum-first") << "\n";
    o << "seed = " << c.seed() << "\n";
    o << "max_seconds = " << fmt(c.max_seconds) << "\n";
    o << "\n[disorder]\n";
    const auto &d = c.disorder;
    if (d.coupling.size() == 1) {
        o << "coupling = " << spec(d.coupling[0]) << "\n";
    } else {
        for (std::size_t i = 0; i < d.coupling.size(); i++) {
            o << "coupling." << i << " = " << spec(d.coupling[i]) << "\n";
        }
    }
    if (d.field_factor) o << "field_factor = " << spec(*d.field_factor) << "\n";
    if (d.cnot_factor) o << "cnot_factor = " << spec(*d.cnot_factor) << "\n";
    if (d.scale_factor) o << "scale_factor = " << spec(*d.scale_factor) << "\n";
    if (d.field_z) o << "field_z = " << spec(*d.field_z) << "\n";
    if (d.gate_error) {
        o << "gate_error = " << fmt(d.gate_error->low) << " " << fmt(d.gate_error->high) << " "
          << (d.gate_error->sign == ErrorSign::Signed ? "signed" : "one-sided") << "\n";
    }
    o << "long_range_exponent = " << fmt(d.long_range_exponent) << "\n";
    o << "\n[noise]\n";
    o << "rotation = " << fmt(c.temporal.rotation) << "\n";
    o << "iswap = " << fmt(c.temporal.iswap) << "\n";
    return o.str();
}

}  // namespace repdtc
