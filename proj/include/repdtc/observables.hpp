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
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "repdtc/disorder.hpp"
#include "repdtc/errors.hpp"
#include "repdtc/layout.hpp"
#include "repdtc/models.hpp"
#include "repdtc/statevector.hpp"

namespace repdtc {

/// Magnetization samples <S_z>(j) for cycles j = 0..tau.
struct TimeSeries {
    std::vector<double> values;
    std::string model;
    /// Realization index, or -1 for an average.
    long long realization = -1;
    /// "all" for the register average, or a qubit list such as "q4".
    std::string scope = "all";

    std::size_t cycles() const { return values.empty() ? 0 : values.size() - 1; }
};

/// |(1/tau) sum_{j=1}^{tau} exp(-i j Omega) <S_z>(j)| on Omega_k = 2 pi k / tau.
struct Spectrum {
    std::vector<double> omega;
    std::vector<double> magnitude;

    std::size_t size() const { return omega.size(); }

    /// Bin index of an on-grid frequency (mod 2 pi).
    std::size_t bin_of(double w) const {
        const std::size_t n = omega.size();
        if (n == 0) {
            throw std::invalid_argument("empty spectrum");
        }
        const double step = 2 * std::numbers::pi / static_cast<double>(n);
        double k = std::remainder(w, 2 * std::numbers::pi);
        if (k < 0) {
            k += 2 * std::numbers::pi;
        }
        k /= step;
        const double r = std::round(k);
        if (std::abs(k - r) > 1e-9) {
            throw std::invalid_argument("frequency " + std::to_string(w) + " is not on the " + std::to_string(n) +
                                        "-point grid");
        }
        return static_cast<std::size_t>(r) % n;
    }
};

/// prod_q exp(-i theta_q X_q)|0...0>, theta_q = theta0 (1 + delta_q) with
/// delta_q uniform in [-jitter, jitter] when a stream is supplied.
inline StateVector prepare_initial_state(std::size_t num_qubits, double theta0, double jitter = 0.0,
                                         Stream *stream = nullptr) {
    StateVector s(num_qubits);
    for (std::size_t q = 0; q < num_qubits; q++) {
        double theta = theta0;
        if (jitter > 0.0 && stream) {
            theta *= 1.0 + sample_uniform(DisorderSpec{0.0, jitter}, *stream);
        }
        if (theta != 0.0) {
            s.apply(PauliRotation(theta, PauliString::single(num_qubits, q, Pauli::X)));
        }
    }
    return s;
}

inline StateVector prepare_initial_state(const ChainLayout &layout, double theta0, double jitter = 0.0,
                                         Stream *stream = nullptr) {
    layout.validate();
    return prepare_initial_state(layout.num_qubits(), theta0, jitter, stream);
}

/// What to record after each period.
struct ObservationSpec {
    /// Qubits averaged into <S_z>; empty means the whole register.
    std::vector<std::size_t> qubits;
    /// 0 for exact expectation values, otherwise the number of Z-basis shots.
    std::size_t shots = 0;
    /// Also keep one series per observed qubit.
    bool per_qubit = false;
};

struct StroboscopicResult {
    TimeSeries series;
    std::vector<TimeSeries> per_qubit;
};

namespace detail {

inline std::string scope_name(const std::vector<std::size_t> &qubits) {
    if (qubits.empty()) {
        return "all";
    }
    std::string s;
    for (auto q : qubits) {
        s += (s.empty() ? "q" : ",q") + std::to_string(q);
    }
    return s;
}

}  // namespace detail

/// Applies `step(state, cycle)` for cycle = 1..cycles and records the
/// observation at cycle 0 and after every period.
inline StroboscopicResult stroboscopic_run(const std::function<void(StateVector &, std::size_t)> &step,
                                           StateVector state, std::size_t cycles, const ObservationSpec &obs = {},
                                           Stream *shot_stream = nullptr) {
    if (cycles < 1) {
        throw std::invalid_argument("stroboscopic_run needs at least one cycle");
    }
    if (obs.shots > 0 && !shot_stream) {
        throw std::invalid_argument("sampled observation needs a shot stream");
    }
    const std::size_t Q = state.num_qubits();
    std::vector<std::size_t> qubits = obs.qubits;
    for (auto q : qubits) {
        if (q >= Q) {
            throw DimensionError("observed qubit " + std::to_string(q) + " out of range");
        }
    }
    const bool whole = qubits.empty();
    if (whole && (obs.per_qubit || obs.shots > 0)) {
        for (std::size_t q = 0; q < Q; q++) {
            qubits.push_back(q);
        }
    }

    StroboscopicResult out;
    out.series.scope = detail::scope_name(obs.qubits);
    out.series.values.reserve(cycles + 1);
    if (obs.per_qubit) {
        out.per_qubit.resize(qubits.size());
        for (std::size_t k = 0; k < qubits.size(); k++) {
            out.per_qubit[k].scope = "q" + std::to_string(qubits[k]);
        }
    }
    auto record = [&] {
        if (whole && obs.shots == 0 && !obs.per_qubit) {
            out.series.values.push_back(state.mean_z());
            return;
        }
        double sum = 0;
        for (std::size_t k = 0; k < qubits.size(); k++) {
            double z = obs.shots > 0 ? sample_z(state, qubits[k], obs.shots, *shot_stream)
                                     : state.expectation_z(qubits[k]);
            sum += z;
            if (obs.per_qubit) {
                out.per_qubit[k].values.push_back(z);
            }
        }
        out.series.values.push_back(sum / static_cast<double>(qubits.size()));
    };
    record();
    for (std::size_t j = 1; j <= cycles; j++) {
        step(state, j);
        record();
    }
    return out;
}

/// Program-driven overload: one application of the program per period.
inline StroboscopicResult stroboscopic_run(const FloquetProgram &program, StateVector initial, std::size_t cycles,
                                           const ObservationSpec &obs = {}, Stream *shot_stream = nullptr) {
    return stroboscopic_run([&](StateVector &s, std::size_t) { apply_rotations(s, program); }, std::move(initial),
                            cycles, obs, shot_stream);
}

/// Fourier sum over cycles [first, last] of the series, evaluated at
/// arbitrary frequency `omega`, normalized by the window length.
inline std::complex<double> fourier_sum(const TimeSeries &series, double omega, std::size_t first, std::size_t last) {
    if (first < 1 || last < first || last >= series.values.size()) {
        throw std::invalid_argument("empty or out-of-range Fourier window [" + std::to_string(first) + ", " +
                                    std::to_string(last) + "]");
    }
    std::complex<double> acc{};
    for (std::size_t j = first; j <= last; j++) {
        acc += std::polar(series.values[j], -static_cast<double>(j) * omega);
    }
    return acc / static_cast<double>(last - first + 1);
}

/// Off-grid evaluation of the spectrum magnitude.
inline double spectrum_at(const TimeSeries &series, double omega, std::size_t first, std::size_t last) {
    return std::abs(fourier_sum(series, omega, first, last));
}

/// Spectrum over cycles [first, last] (default: 1..tau) on the grid tied to
/// the window length.
inline Spectrum power_spectrum(const TimeSeries &series, std::size_t first = 1, std::size_t last = 0) {
    if (last == 0) {
        last = series.cycles();
    }
    if (first < 1 || last < first || last >= series.values.size()) {
        throw std::invalid_argument("empty or out-of-range spectrum window");
    }
    const std::size_t tau = last - first + 1;
    if (tau < 2) {
        throw std::invalid_argument("spectrum window needs at least two cycles");
    }
    Spectrum s;
    s.omega.resize(tau);
    s.magnitude.resize(tau);
    // Recurrence-free evaluation: the phase index (j*k) mod tau keeps every
    // twiddle exact regardless of the window length.
    std::vector<std::complex<double>> twiddle(tau);
    for (std::size_t m = 0; m < tau; m++) {
        twiddle[m] = std::polar(1.0, -2 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(tau));
    }
    for (std::size_t k = 0; k < tau; k++) {
        std::complex<double> acc{};
        for (std::size_t j = first; j <= last; j++) {
            acc += series.values[j] * twiddle[(j * k) % tau];
        }
        s.omega[k] = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(tau);
        s.magnitude[k] = std::abs(acc) / static_cast<double>(tau);
    }
    return s;
}

struct ScoreOptions {
    /// Upper bound on the returned score (an exact signal has ~0 background).
    double ceiling = 1e6;
    /// Leave the other harmonics of the targets' common period (and DC) out of
    /// the background. When false only DC and the targets are left out.
    bool exclude_harmonics = true;
    /// Magnitudes below this are rounding noise: a target under it scores 0,
    /// a background under it scores the ceiling.
    double noise_floor = 1e-12;
};

namespace detail {

/// Smallest integer period P with every target a multiple of 2 pi / P, or 0.
inline std::size_t common_period(const std::vector<double> &targets) {
    for (std::size_t p = 2; p <= 4096; p++) {
        bool ok = true;
        for (double w : targets) {
            double m = w * static_cast<double>(p) / (2 * std::numbers::pi);
            ok = ok && std::abs(m - std::round(m)) < 1e-9;
        }
        if (ok) {
            return p;
        }
    }
    return 0;
}

/// Bins that are left out of the background.
inline std::vector<bool> excluded_bins(const Spectrum &s, const std::vector<double> &targets,
                                       const ScoreOptions &opt) {
    const std::size_t n = s.size();
    std::vector<bool> skip(n, false);
    skip[0] = true;
    for (double w : targets) {
        skip[s.bin_of(w)] = true;
    }
    const std::size_t period = opt.exclude_harmonics ? common_period(targets) : 0;
    for (std::size_t m = 1; period && m < period; m++) {
        // nearest bin(s) of each harmonic, even when it falls between bins
        double k = static_cast<double>(m) * static_cast<double>(n) / static_cast<double>(period);
        skip[static_cast<std::size_t>(std::floor(k)) % n] = true;
        skip[static_cast<std::size_t>(std::ceil(k)) % n] = true;
    }
    return skip;
}

}  // namespace detail

/// Mean magnitude at the target bins over the largest background bin.
inline double subharmonic_score(const Spectrum &s, const std::vector<double> &targets, const ScoreOptions &opt = {}) {
    if (targets.empty()) {
        throw std::invalid_argument("subharmonic_score needs at least one target");
    }
    double target = 0;
    for (double w : targets) {
        target += s.magnitude[s.bin_of(w)];
    }
    target /= static_cast<double>(targets.size());
    auto skip = detail::excluded_bins(s, targets, opt);
    double background = 0;
    for (std::size_t k = 0; k < s.size(); k++) {
        if (!skip[k]) {
            background = std::max(background, s.magnitude[k]);
        }
    }
    if (target < opt.noise_floor) {
        return 0.0;
    }
    if (background < opt.noise_floor || target / background > opt.ceiling) {
        return opt.ceiling;
    }
    return target / background;
}

/// True when every target bin is at least as large as every other non-DC bin
/// (relative slack `tol` for ties between mirror bins).
inline bool targets_are_argmax(const Spectrum &s, const std::vector<double> &targets, double tol = 1e-9) {
    std::vector<bool> is_target(s.size(), false);
    double smallest = INFINITY;
    for (double w : targets) {
        auto k = s.bin_of(w);
        is_target[k] = true;
        smallest = std::min(smallest, s.magnitude[k]);
    }
    for (std::size_t k = 1; k < s.size(); k++) {
        if (!is_target[k] && s.magnitude[k] > smallest * (1 + tol)) {
            return false;
        }
    }
    return true;
}

/// Largest non-DC bin.
inline std::size_t argmax_non_dc(const Spectrum &s) {
    std::size_t best = 1;
    for (std::size_t k = 2; k < s.size(); k++) {
        if (s.magnitude[k] > s.magnitude[best]) {
            best = k;
        }
    }
    return best;
}

enum class SpectrumMode {
    /// Average the series, then transform (figure pipeline).
    SeriesFirst,
    /// Transform every realization and average the magnitudes.
    SpectrumFirst,
};

struct AveragedResult {
    TimeSeries mean;
    std::vector<TimeSeries> realizations;
    Spectrum spectrum;
};

/// Runs `realization(r)` for r = 0..R-1 on `threads` workers and averages
/// pointwise in realization order, so the result does not depend on the
/// worker count. The spectrum covers cycles [first, last] (default 1..tau).
inline AveragedResult disorder_average(const std::function<TimeSeries(std::size_t)> &realization, std::size_t R,
                                       std::size_t threads = 1, bool keep_realizations = false,
                                       SpectrumMode mode = SpectrumMode::SeriesFirst, std::size_t first = 1,
                                       std::size_t last = 0) {
    if (R < 1) {
        throw std::invalid_argument("disorder_average needs at least one realization");
    }
    std::vector<TimeSeries> all(R);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t r = next.fetch_add(1);
            if (r >= R) {
                return;
            }
            try {
                all[r] = realization(r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = R;
                return;
            }
        }
    };
    threads = std::max<std::size_t>(1, std::min(threads, R));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; t++) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    AveragedResult out;
    const std::size_t len = all[0].values.size();
    out.mean.values.assign(len, 0.0);
    out.mean.model = all[0].model;
    out.mean.scope = all[0].scope;
    for (const auto &ts : all) {
        if (ts.values.size() != len) {
            throw DimensionError("realizations produced series of different lengths");
        }
        for (std::size_t j = 0; j < len; j++) {
            out.mean.values[j] += ts.values[j];
        }
    }
    for (auto &v : out.mean.values) {
        v /= static_cast<double>(R);
    }
    if (mode == SpectrumMode::SeriesFirst) {
        out.spectrum = power_spectrum(out.mean, first, last);
    } else {
        for (std::size_t r = 0; r < R; r++) {
            Spectrum s = power_spectrum(all[r], first, last);
            if (r == 0) {
                out.spectrum = s;
            } else {
                for (std::size_t k = 0; k < s.size(); k++) {
                    out.spectrum.magnitude[k] += s.magnitude[k];
                }
            }
        }
        for (auto &m : out.spectrum.magnitude) {
            m /= static_cast<double>(R);
        }
    }
    if (keep_realizations) {
        out.realizations = std::move(all);
    }
    return out;
}

/// Fourier amplitude at `omega` over consecutive windows of `window` cycles
/// starting at cycle 1.
inline std::vector<double> windowed_amplitude(const TimeSeries &series, double omega, std::size_t window) {
    if (window < 1) {
        throw std::invalid_argument("window must be positive");
    }
    std::vector<double> out;
    for (std::size_t first = 1; first + window - 1 <= series.cycles(); first += window) {
        out.push_back(spectrum_at(series, omega, first, first + window - 1));
    }
    return out;
}

/// Cycle at which the windowed amplitude at `omega` first drops below
/// `fraction` of its first-window value (default 1/e, the e-folding time);
/// the series length if it never does.
inline std::size_t pattern_lifetime(const TimeSeries &series, double omega, std::size_t window,
                                    double fraction = 1.0 / std::numbers::e) {
    auto amp = windowed_amplitude(series, omega, window);
    if (amp.empty()) {
        return 0;
    }
    for (std::size_t w = 1; w < amp.size(); w++) {
        if (amp[w] < fraction * amp[0]) {
            return w * window;
        }
    }
    return series.cycles();
}

}  // namespace repdtc
