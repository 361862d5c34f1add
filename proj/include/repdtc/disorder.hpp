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
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "repdtc/errors.hpp"
#include "repdtc/layout.hpp"
#include "repdtc/models.hpp"
#include "repdtc/statevector.hpp"

namespace repdtc {

/// Uniform distribution on [mean - half_width, mean + half_width].
struct DisorderSpec {
    double mean = 0.0;
    double half_width = 0.0;

    double low() const { return mean - half_width; }
    double high() const { return mean + half_width; }

    void validate(const std::string &what) const {
        if (!(half_width >= 0.0) || !std::isfinite(mean) || !std::isfinite(half_width)) {
            throw ConfigError(what + ": half-width must be finite and >= 0, got (" + std::to_string(mean) + ", " +
                              std::to_string(half_width) + ")");
        }
    }

    bool operator==(const DisorderSpec &) const = default;
};

enum class Purpose : std::uint64_t {
    Couplings = 1,
    InitialAngle = 2,
    ShotNoise = 3,
    TemporalNoise = 4,
    GateError = 5,
};

/// Parameter families drawn under Purpose::Couplings / Purpose::GateError.
enum class Family : std::uint64_t {
    Coupling = 1,
    LongRange = 2,
    Field = 3,
    FieldZ = 4,
    CnotZX = 5,
    CnotZ = 6,
    CnotX = 7,
    Scale = 8,
};

using Stream = std::mt19937_64;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Counter-based stream derivation: every (realization, purpose, family,
/// index) tuple maps to its own generator, so adding or reordering draws in
/// one place never shifts values drawn elsewhere.
struct SeedPlan {
    std::uint64_t master_seed = 0;

    std::uint64_t key(std::uint64_t realization, Purpose purpose, std::uint64_t family = 0,
                      std::uint64_t index = 0) const {
        std::uint64_t h = detail::splitmix64(master_seed);
        h = detail::splitmix64(h ^ realization);
        h = detail::splitmix64(h ^ static_cast<std::uint64_t>(purpose));
        h = detail::splitmix64(h ^ family);
        h = detail::splitmix64(h ^ index);
        return h;
    }

    Stream stream(std::uint64_t realization, Purpose purpose, std::uint64_t family = 0, std::uint64_t index = 0) const {
        return Stream(key(realization, purpose, family, index));
    }
};

inline double sample_uniform(const DisorderSpec &spec, Stream &stream) {
    if (spec.half_width == 0.0) {
        return spec.mean;
    }
    double u = uniform01(stream);
    // Map [0, 1) onto the closed interval; the endpoint is reachable only by rounding.
    return std::min(spec.high(), spec.low() + 2.0 * spec.half_width * u);
}

enum class ErrorSign { Signed, OneSided };

/// Relative gate error drawn uniformly from [low, high]; a signed error gets
/// an independent random sign.
struct GateErrorSpec {
    double low = 0.0;
    double high = 0.0;
    ErrorSign sign = ErrorSign::Signed;

    void validate() const {
        if (!(low >= 0.0 && low <= high) || !std::isfinite(high)) {
            throw ConfigError("gate_error: need 0 <= low <= high, got [" + std::to_string(low) + ", " +
                              std::to_string(high) + "]");
        }
    }

    bool operator==(const GateErrorSpec &) const = default;
};

inline double sample_error_fraction(double low, double high, ErrorSign sign, Stream &stream) {
    if (!(low >= 0.0 && low <= high)) {
        throw std::invalid_argument("sample_error_fraction needs 0 <= low <= high");
    }
    double eps = low == high ? low : low + (high - low) * uniform01(stream);
    if (sign == ErrorSign::Signed && (stream() >> 63) != 0) {
        eps = -eps;
    }
    return eps;
}

/// Everything needed to draw ModelParams for one realization. Gate families
/// are multiplicative factors on the ideal angles; a family without an
/// explicit factor spec falls back to `gate_error` (factor 1 + eps).
struct DisorderConfig {
    ModelSpec model;
    ChainLayout layout;
    /// One spec per chain (or one shared spec).
    std::vector<DisorderSpec> coupling;
    std::optional<DisorderSpec> field_factor;
    std::optional<DisorderSpec> cnot_factor;
    std::optional<DisorderSpec> scale_factor;
    /// Absolute longitudinal fields of the 2T model.
    std::optional<DisorderSpec> field_z;
    std::optional<GateErrorSpec> gate_error;
    double long_range_exponent = 1.5;
    std::uint64_t master_seed = 0;
};

namespace detail {

inline const DisorderSpec &chain_spec(const DisorderConfig &cfg, std::size_t chain) {
    if (cfg.coupling.empty()) {
        throw ConfigError("missing coupling spec");
    }
    if (cfg.coupling.size() == 1) {
        return cfg.coupling[0];
    }
    if (cfg.coupling.size() != cfg.layout.chains) {
        throw ConfigError("coupling: expected 1 or " + std::to_string(cfg.layout.chains) + " specs, got " +
                          std::to_string(cfg.coupling.size()));
    }
    return cfg.coupling[chain];
}

/// Multiplicative factor for one gate angle.
inline double gate_factor(const DisorderConfig &cfg, const std::optional<DisorderSpec> &factor,
                          const char *family_name, const SeedPlan &plan, std::uint64_t realization, Family family,
                          std::uint64_t index) {
    if (factor) {
        Stream s = plan.stream(realization, Purpose::GateError, static_cast<std::uint64_t>(family), index);
        return sample_uniform(*factor, s);
    }
    if (cfg.gate_error) {
        Stream s = plan.stream(realization, Purpose::GateError, static_cast<std::uint64_t>(family), index);
        return 1.0 + sample_error_fraction(cfg.gate_error->low, cfg.gate_error->high, cfg.gate_error->sign, s);
    }
    throw ConfigError(std::string("missing spec for parameter family '") + family_name +
                      "' (give a factor spec or gate_error)");
}

}  // namespace detail

/// Quenched parameters of realization `realization`.
inline ModelParams sample_model_params(const DisorderConfig &cfg, std::uint64_t realization) {
    cfg.layout.validate(2);
    for (const auto &s : cfg.coupling) {
        s.validate("coupling");
    }
    for (const auto *f : {&cfg.field_factor, &cfg.cnot_factor, &cfg.scale_factor, &cfg.field_z}) {
        if (*f) {
            (*f)->validate("factor");
        }
    }
    if (cfg.gate_error) {
        cfg.gate_error->validate();
    }
    const SeedPlan plan{cfg.master_seed};
    const auto &layout = cfg.layout;
    const std::size_t N = layout.sites;

    ModelParams p = ideal_params(cfg.model, layout);
    p.long_range_exponent = cfg.long_range_exponent;
    auto draw_coupling = [&](Family fam, std::size_t chain, std::uint64_t index) {
        Stream s = plan.stream(realization, Purpose::Couplings, static_cast<std::uint64_t>(fam),
                               (static_cast<std::uint64_t>(chain) << 32) | index);
        return sample_uniform(detail::chain_spec(cfg, chain), s);
    };
    for (std::size_t c = 0; c < layout.chains; c++) {
        for (std::size_t j = 0; j + 1 < N; j++) {
            p.coupling[c][j] = draw_coupling(Family::Coupling, c, j);
        }
    }
    if (cfg.model.kind == ModelKind::U4LongRange) {
        for (std::size_t c = 0; c < layout.chains; c++) {
            for (std::size_t j = 0; j < N; j++) {
                for (std::size_t k = 0; k < j; k++) {
                    p.long_range[c][j][k] = draw_coupling(Family::LongRange, c, j * N + k);
                }
            }
        }
    }
    if (cfg.model.kind == ModelKind::TwoT) {
        if (!cfg.field_z) {
            throw ConfigError("missing spec for parameter family 'field_z'");
        }
        for (std::size_t j = 0; j < N; j++) {
            Stream s = plan.stream(realization, Purpose::Couplings, static_cast<std::uint64_t>(Family::FieldZ), j);
            p.field_z[j] = sample_uniform(*cfg.field_z, s);
        }
    }
    for (std::size_t j = 0; j < N; j++) {
        p.field[j] *= detail::gate_factor(cfg, cfg.field_factor, "field", plan, realization, Family::Field, j);
    }
    for (std::size_t l = 0; l < p.cnot.size(); l++) {
        for (std::size_t j = 0; j < N; j++) {
            const std::uint64_t idx = (static_cast<std::uint64_t>(l) << 32) | j;
            p.cnot[l].zx[j] *= detail::gate_factor(cfg, cfg.cnot_factor, "cnot", plan, realization, Family::CnotZX, idx);
            p.cnot[l].z[j] *= detail::gate_factor(cfg, cfg.cnot_factor, "cnot", plan, realization, Family::CnotZ, idx);
            p.cnot[l].x[j] *= detail::gate_factor(cfg, cfg.cnot_factor, "cnot", plan, realization, Family::CnotX, idx);
        }
    }
    for (std::size_t l = 0; l < p.scale.size(); l++) {
        for (std::size_t j = 0; j < N; j++) {
            const std::uint64_t idx = (static_cast<std::uint64_t>(l) << 32) | j;
            p.scale[l][j] *= detail::gate_factor(cfg, cfg.scale_factor, "scale", plan, realization, Family::Scale, idx);
        }
    }
    return p;
}

/// Per-execution multiplicative noise on native gates (temporal noise):
/// single-qubit rotations by up to `rotation` and iSWAPs by up to `iswap`,
/// both signed, drawn fresh for every gate of every cycle.
struct TemporalNoiseSpec {
    double rotation = 0.005;
    double iswap = 0.04;

    bool operator==(const TemporalNoiseSpec &) const = default;
};

}  // namespace repdtc
