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

#include <algorithm>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "repdtc/errors.hpp"
#include "repdtc/harness/config.hpp"

namespace repdtc {

struct Preset {
    std::string name;
    std::string summary;
    /// Where the numbers come from and what was interpreted.
    std::string notes;
    ExperimentConfig config;
};

namespace detail {

inline ExperimentConfig base_config(const std::string &name, const std::string &model, std::size_t sites) {
    ExperimentConfig c;
    c.name = name;
    c.disorder.model = ModelSpec::parse(model);
    c.disorder.layout = ChainLayout{c.disorder.model.required_chains(), sites};
    c.disorder.master_seed = 1;
    return c;
}

inline ExperimentConfig fig2(const std::string &name, std::size_t sites) {
    ExperimentConfig c = base_config(name, "U4", sites);
    c.disorder.coupling = {{1.5, 0.5}, {2.5, 0.5}};
    c.disorder.field_factor = DisorderSpec{1.125, 0.025};
    c.disorder.cnot_factor = DisorderSpec{0.925, 0.025};
    c.realizations = 100;
    c.cycles = 500;
    return c;
}

inline ExperimentConfig fig4(const std::string &name, std::size_t sites) {
    ExperimentConfig c = base_config(name, "U4", sites);
    c.disorder.coupling = {{1.5, 0.5}, {2.5, 0.5}};
    c.disorder.gate_error = GateErrorSpec{0.0, 0.075, ErrorSign::Signed};
    c.realizations = 20;
    c.cycles = 100;
    c.lowering = Lowering::NativeIswap;
    c.noise = NoiseMode::Temporal;
    c.temporal = TemporalNoiseSpec{0.005, 0.04};
    c.initial_jitter = 0.005;
    c.shots = 480;
    // first qubit of the second chain
    c.observe = {sites};
    return c;
}

inline ExperimentConfig fig5(const std::string &name, const std::string &model) {
    ExperimentConfig c = base_config(name, model, 4);
    c.disorder.coupling = {{1.0, 0.5}, {1.5, 0.5}, {2.0, 0.5}};
    c.disorder.gate_error = GateErrorSpec{0.05, 0.10, ErrorSign::Signed};
    c.realizations = 100;
    // 480 cycles put both pi/4 and 2 pi/3 on the frequency grid
    c.cycles = 480;
    return c;
}

inline ExperimentConfig ideal(const std::string &name, const std::string &model, std::size_t sites,
                              std::size_t cycles) {
    ExperimentConfig c = base_config(name, model, sites);
    c.disorder.coupling = {{1.0, 0.0}};
    c.disorder.field_factor = DisorderSpec{1.0, 0.0};
    c.disorder.cnot_factor = DisorderSpec{1.0, 0.0};
    c.disorder.scale_factor = DisorderSpec{1.0, 0.0};
    c.realizations = 1;
    c.cycles = cycles;
    c.initial_angle = 0.0;
    return c;
}

inline std::vector<Preset> build_presets() {
    std::vector<Preset> out;
    out.push_back({"fig2a", "U4 drive on two size-4 chains with disordered couplings and imperfect gates",
                   "J per chain uniform on [1, 2] and [2, 3]; X-bar angles uniform on [1.1, 1.15] * pi/2; "
                   "CNOT angles uniform on [0.9, 0.95] times their ideal values (signs kept); initial state "
                   "R_X(pi/8) on every qubit; spectrum over the first 500 cycles; 100 realizations by default "
                   "(raise with --realizations).",
                   fig2("fig2a", 4)});
    out.push_back({"fig2b", "as fig2a with size-5 chains", "Same disorder as fig2a; 10 qubits.", fig2("fig2b", 5)});
    {
        ExperimentConfig c = fig2("fig3", 4);
        c.disorder.model = ModelSpec::parse("U4_long_range");
        c.disorder.long_range_exponent = 1.5;
        out.push_back({"fig3", "U4 drive with power-law all-to-all Ising couplings (exponent 1.5)",
                       "Every pair coupling J_jk / |j - k|^1.5 with J_jk drawn from the fig2a chain specs; "
                       "gate imperfections as fig2a.",
                       c});
    }
    out.push_back({"fig4-analog", "U4 lowered to iSWAP + single-qubit rotations on two size-8 chains, with noise",
                   "16 qubits; quenched gate errors up to 7.5% (signed); temporal noise redrawn every cycle: "
                   "single-qubit rotations up to 0.5%, iSWAP angles up to 4%; initial angle jittered by 0.5%; "
                   "480 Z-basis shots per cycle on the first qubit of the second chain; 20 realizations, "
                   "100 cycles.",
                   fig4("fig4-analog", 8)});
    out.push_back({"fig4-smoke", "reduced fig4-analog on two size-4 chains", "8 qubits; otherwise as fig4-analog.",
                   fig4("fig4-smoke", 4)});
    out.push_back({"fig5a", "U8 drive on three size-4 chains",
                   "(J-bar, Delta J) per chain: (1, 0.5), (1.5, 0.5), (2, 0.5); every gate angle deviates by a "
                   "5-10% error (signed); 100 realizations; 480 cycles so pi/4 is on the frequency grid.",
                   fig5("fig5a", "U8")});
    {
        ExperimentConfig c = fig5("fig5b", "U3");
        out.push_back({"fig5b", "U3 drive on three size-4 chains",
                       "(J-bar, Delta J) per chain: (1, 0.5), (1.5, 0.5), (2, 0.5); every gate angle deviates by a "
                       "5-10% error (signed); 100 realizations; 480 cycles so 2 pi/3 is on the frequency grid.",
                       c});
    }
    out.push_back({"ideal-u2n", "ideal U2n(3) on three size-2 chains from |000>-bar",
                   "Zero disorder width, ideal gates; period 8.", ideal("ideal-u2n", "U2n(3)", 2, 64)});
    out.push_back({"ideal-u3", "ideal U3 on three size-3 chains from |000>-bar",
                   "Zero disorder width, ideal gates; period 3.", ideal("ideal-u3", "U3", 3, 60)});
    out.push_back({"ideal-u4", "ideal U4 on two size-4 chains", "Zero disorder width, ideal gates; period 4.",
                   ideal("ideal-u4", "U4", 4, 100)});
    return out;
}

}  // namespace detail

inline const std::vector<Preset> &list_presets() {
    static const std::vector<Preset> presets = detail::build_presets();
    return presets;
}

inline const Preset &find_preset(const std::string &name) {
    for (const auto &p : list_presets()) {
        if (p.name == name) {
            return p;
        }
    }
    std::string names;
    for (const auto &p : list_presets()) {
        names += (names.empty() ? "" : ", ") + p.name;
    }
    throw ConfigError("unknown preset '" + name + "'; valid presets: " + names);
}

inline std::string describe(const std::string &name) {
    const Preset &p = find_preset(name);
    std::ostringstream o;
    o << p.name << ": " << p.summary << "\n\n" << p.notes << "\n\n";
    const auto &d = p.config.disorder;
    o << "model " << d.model.name() << ", " << d.layout.chains << " chains x " << d.layout.sites << " sites ("
      << d.layout.num_qubits() << " qubits)\n";
    for (std::size_t c = 0; c < d.coupling.size(); c++) {
        o << "  chain " << c << " (J-bar, Delta J) = (" << d.coupling[c].mean << ", " << d.coupling[c].half_width
          << ")\n";
    }
    if (d.gate_error) {
        o << "  gate error " << d.gate_error->low * 100 << "-" << d.gate_error->high * 100 << "% ("
          << (d.gate_error->sign == ErrorSign::Signed ? "signed" : "one-sided") << ")\n";
    }
    o << "\n" << to_config_text(p.config);
    return o.str();
}

}  // namespace repdtc
