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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "repdtc/circuit.hpp"
#include "repdtc/compiler.hpp"
#include "repdtc/disorder.hpp"
#include "repdtc/errors.hpp"
#include "repdtc/harness/config.hpp"
#include "repdtc/models.hpp"
#include "repdtc/observables.hpp"

namespace repdtc {

/// Largest register a run may use.
inline constexpr std::size_t kRunQubitCap = 20;
/// Rough single-core throughput of the gate kernels, in amplitude updates per second.
inline constexpr double kAmplitudeOpsPerSecond = 1.5e8;

/// Circuit of one realization at the configured lowering level.
struct RealizationCircuit {
    FloquetProgram program;
    /// Set for native-iswap lowering.
    std::optional<NativeCircuit> native;
    /// Fused circuit for noiseless evolution.
    CompiledCircuit compiled;
};

inline RealizationCircuit build_realization_circuit(const ExperimentConfig &cfg, std::size_t r) {
    ModelParams params = sample_model_params(cfg.disorder, r);
    RealizationCircuit rc{build_model(cfg.model(), cfg.layout(), params), std::nullopt, {}};
    const std::size_t Q = cfg.layout().num_qubits();
    std::vector<Gate> gates;
    switch (cfg.lowering) {
        case Lowering::PauliLayers:
            gates = to_gates(rc.program);
            break;
        case Lowering::LocalGadgets:
            gates = to_gates(lower_program_local(rc.program));
            break;
        case Lowering::NativeIswap:
            rc.native = lower_to_iswap(lower_program_local(rc.program), Q, cfg.layout());
            gates = to_gates(*rc.native);
            break;
    }
    if (cfg.noise == NoiseMode::None) {
        rc.compiled = CompiledCircuit(gates, Q);
    }
    return rc;
}

/// Magnetization series of realization r.
inline TimeSeries run_realization(const ExperimentConfig &cfg, std::size_t r) {
    const SeedPlan plan{cfg.seed()};
    const std::size_t Q = cfg.layout().num_qubits();
    RealizationCircuit rc = build_realization_circuit(cfg, r);

    Stream init_stream = plan.stream(r, Purpose::InitialAngle);
    StateVector state = prepare_initial_state(Q, cfg.initial_angle, cfg.initial_jitter, &init_stream);

    Stream noise_stream = plan.stream(r, Purpose::TemporalNoise);
    std::function<void(StateVector &, std::size_t)> step;
    if (cfg.noise == NoiseMode::Temporal) {
        const DisorderSpec rot{0.0, cfg.temporal.rotation};
        const DisorderSpec isw{0.0, cfg.temporal.iswap};
        step = [&](StateVector &s, std::size_t) {
            for (const auto &g : rc.native->gates) {
                NativeNoise n;
                if (g.is_two_qubit()) {
                    n.iswap_factor = 1.0 + sample_uniform(isw, noise_stream);
                } else {
                    n.rotation_factor = 1.0 + sample_uniform(rot, noise_stream);
                }
                s.apply(to_gate(g, Q, n));
            }
        };
    } else {
        step = [&](StateVector &s, std::size_t) { rc.compiled.apply(s); };
    }

    ObservationSpec obs;
    obs.qubits = cfg.observe;
    obs.shots = cfg.shots;
    Stream shot_stream = plan.stream(r, Purpose::ShotNoise);
    StroboscopicResult res = stroboscopic_run(step, std::move(state), cfg.cycles, obs, &shot_stream);
    res.series.model = cfg.model().name();
    res.series.realization = static_cast<long long>(r);
    return res.series;
}

/// Gate applications per cycle after fusion, for realization 0.
inline std::size_t ops_per_cycle(const ExperimentConfig &cfg) {
    RealizationCircuit rc = build_realization_circuit(cfg, 0);
    return cfg.noise == NoiseMode::Temporal ? rc.native->gates.size() : rc.compiled.num_ops();
}

/// Single-thread runtime estimate in seconds.
inline double estimate_seconds(const ExperimentConfig &cfg) {
    const double dim = static_cast<double>(std::size_t{1} << cfg.layout().num_qubits());
    double per_cycle = static_cast<double>(ops_per_cycle(cfg)) * dim;
    // observation: one pass per observed qubit (or one for the register mean)
    per_cycle += dim * static_cast<double>(std::max<std::size_t>(1, cfg.observe.size()));
    return per_cycle * static_cast<double>(cfg.cycles + 1) * static_cast<double>(cfg.realizations) /
           kAmplitudeOpsPerSecond;
}

/// Throws CapacityError if the config is over the qubit cap or, unless
/// `force`, over its time budget.
inline double check_capacity(const ExperimentConfig &cfg, bool force = false) {
    const std::size_t Q = cfg.layout().num_qubits();
    if (Q > kRunQubitCap) {
        throw CapacityError("config needs " + std::to_string(Q) + " qubits; runs are capped at " +
                            std::to_string(kRunQubitCap));
    }
    const double est = estimate_seconds(cfg);
    if (!force && est > cfg.max_seconds) {
        throw CapacityError("estimated runtime " + std::to_string(static_cast<long long>(est)) +
                            " s exceeds max_seconds = " + std::to_string(static_cast<long long>(cfg.max_seconds)) +
                            " (reduce realizations/cycles or raise max_seconds)");
    }
    return est;
}

struct RunRecord {
    ExperimentConfig config;
    std::vector<TimeSeries> realizations;
    TimeSeries mean;
    Spectrum spectrum;
    std::vector<double> targets;
    /// Background without the targets' other harmonics.
    double score = 0;
    /// Background over every non-target, non-DC bin.
    double score_all_bins = 0;
    bool targets_argmax = false;
    double estimated_seconds = 0;
    double wall_seconds = 0;
};

struct RunOptions {
    std::size_t threads = 1;
    bool keep_realizations = true;
    bool force = false;
};

inline RunRecord run_experiment(const ExperimentConfig &cfg, const RunOptions &opt = {}) {
    cfg.validate();
    RunRecord rec;
    rec.config = cfg;
    rec.estimated_seconds = check_capacity(cfg, opt.force);
    const auto t0 = std::chrono::steady_clock::now();
    AveragedResult avg = disorder_average([&](std::size_t r) { return run_realization(cfg, r); }, cfg.realizations,
                                          opt.threads, opt.keep_realizations, cfg.spectrum_mode, cfg.window_first,
                                          cfg.window_end());
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec.mean = std::move(avg.mean);
    rec.mean.model = cfg.model().name();
    rec.realizations = std::move(avg.realizations);
    rec.spectrum = std::move(avg.spectrum);
    rec.targets = cfg.resolved_targets();
    rec.score = subharmonic_score(rec.spectrum, rec.targets);
    rec.score_all_bins = subharmonic_score(rec.spectrum, rec.targets, ScoreOptions{1e6, false});
    rec.targets_argmax = targets_are_argmax(rec.spectrum, rec.targets);
    return rec;
}

namespace detail {

inline std::string csv_header(const RunRecord &rec, const std::string &kind) {
    const auto &c = rec.config;
    std::string h = "# repdtc " + kind + "\n";
    h += "# preset = " + c.name + "\n";
    h += "# model = " + c.model().name() + "\n";
    h += "# layout = " + std::to_string(c.layout().chains) + "x" + std::to_string(c.layout().sites) + "\n";
    h += "# seed = " + std::to_string(c.seed()) + "\n";
    h += "# realizations = " + std::to_string(c.realizations) + "\n";
    h += "# cycles = " + std::to_string(c.cycles) + "\n";
    h += "# lowering = " + lowering_name(c.lowering) + "\n";
    h += "# scope = " + rec.mean.scope + "\n";
    for (std::size_t i = 0; i < c.disorder.coupling.size(); i++) {
        h += "# coupling." + std::to_string(i) + " = " + fmt(c.disorder.coupling[i].mean) + " " +
             fmt(c.disorder.coupling[i].half_width) + "\n";
    }
    auto opt_spec = [&](const char *name, const std::optional<DisorderSpec> &s) {
        if (s) {
            h += std::string("# ") + name + " = " + fmt(s->mean) + " " + fmt(s->half_width) + "\n";
        }
    };
    opt_spec("field_factor", c.disorder.field_factor);
    opt_spec("cnot_factor", c.disorder.cnot_factor);
    opt_spec("scale_factor", c.disorder.scale_factor);
    opt_spec("field_z", c.disorder.field_z);
    if (c.disorder.gate_error) {
        h += "# gate_error = " + fmt(c.disorder.gate_error->low) + " " + fmt(c.disorder.gate_error->high) + " " +
             (c.disorder.gate_error->sign == ErrorSign::Signed ? "signed" : "one-sided") + "\n";
    }
    return h;
}

}  // namespace detail

inline std::string series_csv(const RunRecord &rec) {
    std::string out = detail::csv_header(rec, "series");
    out += "realization,cycle,Sz\n";
    char buf[96];
    for (const auto &ts : rec.realizations) {
        for (std::size_t j = 0; j < ts.values.size(); j++) {
            std::snprintf(buf, sizeof(buf), "%lld,%zu,%.17g\n", ts.realization, j, ts.values[j]);
            out += buf;
        }
    }
    for (std::size_t j = 0; j < rec.mean.values.size(); j++) {
        std::snprintf(buf, sizeof(buf), "mean,%zu,%.17g\n", j, rec.mean.values[j]);
        out += buf;
    }
    return out;
}

inline std::string spectrum_csv(const RunRecord &rec) {
    std::string out = detail::csv_header(rec, "spectrum");
    out += "# window = " + std::to_string(rec.config.window_first) + " " + std::to_string(rec.config.window_end()) +
           "\n";
    out += "omega,magnitude\n";
    char buf[96];
    for (std::size_t k = 0; k < rec.spectrum.size(); k++) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", rec.spectrum.omega[k], rec.spectrum.magnitude[k]);
        out += buf;
    }
    return out;
}

inline nlohmann::json record_json(const RunRecord &rec) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto &ts : rec.realizations) {
        per.push_back(ts.values);
    }
    return nlohmann::json{
        {"config", to_config_text(rec.config)},
        {"seed", rec.config.seed()},
        {"model", rec.config.model().name()},
        {"targets", rec.targets},
        {"subharmonic_score", rec.score},
        {"subharmonic_score_all_bins", rec.score_all_bins},
        {"targets_are_argmax", rec.targets_argmax},
        {"estimated_seconds", rec.estimated_seconds},
        {"wall_seconds", rec.wall_seconds},
        {"mean_series", rec.mean.values},
        {"spectrum", {{"omega", rec.spectrum.omega}, {"magnitude", rec.spectrum.magnitude}}},
        {"realization_series", per},
    };
}

/// Writes series.csv, spectrum.csv and record.json into `dir`.
inline void write_outputs(const RunRecord &rec, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string &name, const std::string &text) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write " + (dir / name).string());
        }
        f << text;
    };
    write("series.csv", series_csv(rec));
    write("spectrum.csv", spectrum_csv(rec));
    write("record.json", record_json(rec).dump(2) + "\n");
}

}  // namespace repdtc
