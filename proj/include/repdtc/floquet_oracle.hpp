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

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "repdtc/errors.hpp"
#include "repdtc/layout.hpp"
#include "repdtc/models.hpp"
#include "repdtc/statevector.hpp"

namespace repdtc {

/// Basis index of the logical product state |j-bar>: chain s is all-1 iff bit s of j is set.
inline std::uint64_t logical_basis_index(const ChainLayout &layout, std::uint64_t j) {
    std::uint64_t bits = 0;
    for (std::size_t s = 0; s < layout.chains; s++) {
        if ((j >> s) & 1) {
            for (std::size_t site = 0; site < layout.sites; site++) {
                bits |= std::uint64_t{1} << layout.qubit(s, site);
            }
        }
    }
    return bits;
}

inline StateVector logical_basis_state(const ChainLayout &layout, std::uint64_t j) {
    layout.validate();
    if (j >= (std::uint64_t{1} << layout.chains)) {
        throw DimensionError("logical index " + std::to_string(j) + " out of range");
    }
    return StateVector::basis_state(layout.num_qubits(), logical_basis_index(layout, j));
}

/// Predicted quasienergy (E0 - l pi / 2^{n-1}) mod 2 pi with E0 = -sum J.
inline double predicted_quasienergy(const ModelParams &params, std::size_t chains, std::size_t l) {
    double e0 = 0;
    for (const auto &chain : params.coupling) {
        for (double J : chain) {
            e0 -= J;
        }
    }
    double e = e0 - static_cast<double>(l) * std::numbers::pi / static_cast<double>(std::size_t{1} << (chains - 1));
    e = std::fmod(e, 2 * std::numbers::pi);
    return e < 0 ? e + 2 * std::numbers::pi : e;
}

/// (1/sqrt(2^n)) sum_j exp(+i j pi l / 2^{n-1}) |j-bar>.
inline StateVector build_logical_eigenstate(const ChainLayout &layout, std::size_t l) {
    layout.validate();
    const std::size_t count = std::size_t{1} << layout.chains;
    if (l >= count) {
        throw DimensionError("eigenstate label " + std::to_string(l) + " out of range for " +
                             std::to_string(layout.chains) + " chains");
    }
    std::vector<Amplitude> amps(std::size_t{1} << layout.num_qubits());
    const double norm = 1.0 / std::sqrt(static_cast<double>(count));
    const double step = std::numbers::pi / static_cast<double>(count / 2);
    for (std::size_t j = 0; j < count; j++) {
        // reduce j*l mod 2^n first so the angle stays exact
        std::size_t m = (j * l) % count;
        amps[logical_basis_index(layout, j)] = std::polar(norm, static_cast<double>(m) * step);
    }
    return StateVector::from_amplitudes(std::move(amps));
}

struct QuasienergyEntry {
    std::size_t l = 0;
    double residual = 0;
    double measured = 0;
    double predicted = 0;
};

struct QuasienergyReport {
    std::vector<QuasienergyEntry> entries;
    /// measured (eps_l - eps_{l+1}) mod 2 pi, cyclically over l.
    std::vector<double> spacings;
    double expected_spacing = 0;
    double tolerance = 1e-9;

    double max_residual() const {
        double m = 0;
        for (const auto &e : entries) {
            m = std::max(m, e.residual);
        }
        return m;
    }

    double max_spacing_error() const {
        double m = 0;
        for (double s : spacings) {
            m = std::max(m, std::abs(s - expected_spacing));
        }
        return m;
    }

    double max_phase_error() const {
        double m = 0;
        for (const auto &e : entries) {
            m = std::max(m, std::abs(std::remainder(e.measured - e.predicted, 2 * std::numbers::pi)));
        }
        return m;
    }

    bool passed() const {
        return max_residual() < tolerance && max_spacing_error() < tolerance && max_phase_error() < tolerance;
    }

    nlohmann::json to_json() const {
        nlohmann::json states = nlohmann::json::array();
        for (const auto &e : entries) {
            states.push_back({{"l", e.l}, {"residual", e.residual}, {"measured", e.measured}, {"predicted", e.predicted}});
        }
        return nlohmann::json{{"states", states},
                              {"spacings", spacings},
                              {"expected_spacing", expected_spacing},
                              {"tolerance", tolerance},
                              {"passed", passed()}};
    }
};

namespace detail {

inline double wrap_2pi(double x) {
    x = std::fmod(x, 2 * std::numbers::pi);
    return x < 0 ? x + 2 * std::numbers::pi : x;
}

}  // namespace detail

/// Applies the program (with its gate-reference phase removed, so logical
/// gates act as exact permutations) to every |eps_{0,l}> and compares with
/// exp(-i eps) |eps>. Failures are reported, not thrown.
inline QuasienergyReport check_quasienergy_spectrum(const FloquetProgram &program, double tolerance = 1e-9) {
    const auto &layout = program.layout;
    const std::size_t count = std::size_t{1} << layout.chains;
    QuasienergyReport report;
    report.tolerance = tolerance;
    report.expected_spacing = std::numbers::pi / static_cast<double>(count / 2);
    for (std::size_t l = 0; l < count; l++) {
        StateVector eps = build_logical_eigenstate(layout, l);
        StateVector out = eps;
        apply_exact(out, program);
        out.apply_global_phase(-program.reference_phase());
        const Amplitude overlap = inner_product(eps, out);
        const double measured = detail::wrap_2pi(-std::arg(overlap));
        const double predicted = predicted_quasienergy(program.params, layout.chains, l);
        const Amplitude ev = std::polar(1.0, -predicted);
        double residual = 0;
        auto a = out.amplitudes();
        auto b = eps.amplitudes();
        for (std::size_t i = 0; i < a.size(); i++) {
            residual += std::norm(a[i] - ev * b[i]);
        }
        report.entries.push_back({l, std::sqrt(residual), measured, predicted});
    }
    for (std::size_t l = 0; l < count; l++) {
        const double gap = report.entries[l].measured - report.entries[(l + 1) % count].measured;
        report.spacings.push_back(detail::wrap_2pi(gap));
    }
    return report;
}

/// Eigenstates of the single-chain 2T operator at h = pi/2:
/// (exp(-i H/2)|0-bar> +/- exp(+i H/2)|1-bar>)/sqrt(2), H = sum h^Z.
inline std::pair<StateVector, StateVector> build_2T_eigenstates(const ChainLayout &layout,
                                                                const std::vector<double> &field_z) {
    layout.validate();
    if (layout.chains != 1) {
        throw DimensionError("2T eigenstates need a single chain, got " + std::to_string(layout.chains));
    }
    if (field_z.size() != layout.sites) {
        throw DimensionError("field_z needs one entry per site");
    }
    double H = 0;
    for (double h : field_z) {
        H += h;
    }
    const std::size_t dim = std::size_t{1} << layout.num_qubits();
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<Amplitude> plus(dim), minus(dim);
    plus[0] = minus[0] = std::polar(r, -H / 2);
    plus[dim - 1] = std::polar(r, H / 2);
    minus[dim - 1] = -plus[dim - 1];
    return {StateVector::from_amplitudes(std::move(plus)), StateVector::from_amplitudes(std::move(minus))};
}

}  // namespace repdtc
