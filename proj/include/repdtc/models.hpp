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
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"
#include "repdtc/errors.hpp"
#include "repdtc/layout.hpp"
#include "repdtc/pauli.hpp"
#include "repdtc/statevector.hpp"

namespace repdtc {

enum class ModelKind { U4, U3, U8, U2n, TwoT, U4LongRange };

/// Which Floquet operator to build. `n` is the chain count for U2n.
struct ModelSpec {
    ModelKind kind = ModelKind::U4;
    std::size_t n = 2;

    static ModelSpec parse(const std::string &name);
    std::string name() const;

    std::size_t required_chains() const {
        switch (kind) {
            case ModelKind::U3:
            case ModelKind::U8:
                return 3;
            case ModelKind::U2n:
                return n;
            case ModelKind::TwoT:
                return 1;
            default:
                return 2;
        }
    }

    /// Logical period of the ideal drive.
    std::size_t period() const {
        switch (kind) {
            case ModelKind::U3:
                return 3;
            case ModelKind::U8:
                return 8;
            case ModelKind::U2n:
                return std::size_t{1} << n;
            case ModelKind::TwoT:
                return 2;
            default:
                return 4;
        }
    }

    bool operator==(const ModelSpec &) const = default;
};

inline std::string ModelSpec::name() const {
    switch (kind) {
        case ModelKind::U4:
            return "U4";
        case ModelKind::U3:
            return "U3";
        case ModelKind::U8:
            return "U8";
        case ModelKind::U2n:
            return "U2n(" + std::to_string(n) + ")";
        case ModelKind::TwoT:
            return "TwoT";
        case ModelKind::U4LongRange:
            return "U4_long_range";
    }
    return "?";
}

inline ModelSpec ModelSpec::parse(const std::string &name) {
    if (name == "U4") return {ModelKind::U4, 2};
    if (name == "U3") return {ModelKind::U3, 3};
    if (name == "U8") return {ModelKind::U8, 3};
    if (name == "TwoT") return {ModelKind::TwoT, 1};
    if (name == "U4_long_range") return {ModelKind::U4LongRange, 2};
    if (name.starts_with("U2n(") && name.ends_with(")")) {
        std::string digits = name.substr(4, name.size() - 5);
        if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
            std::size_t n = std::stoul(digits);
            if (n >= 1) {
                return {ModelKind::U2n, n};
            }
        }
    }
    throw ConfigError("unknown model '" + name + "' (expected U4, U3, U8, U2n(<n>), TwoT or U4_long_range)");
}

/// Per-site angles of one transversal CNOT layer:
/// exp(-i sum_j [zx_j Z_jA X_jB + z_j Z_jA + x_j X_jB]).
struct CnotAngles {
    std::vector<double> zx, z, x;

    static CnotAngles ideal(std::size_t sites) {
        constexpr double q = std::numbers::pi / 4;
        return {std::vector<double>(sites, q), std::vector<double>(sites, -q), std::vector<double>(sites, -q)};
    }
    bool operator==(const CnotAngles &) const = default;
};

/// All numeric inputs of a model. Chains and sites are 0-based.
struct ModelParams {
    /// Ising couplings J[chain][bond]; bond j joins sites j and j+1.
    std::vector<std::vector<double>> coupling;
    /// Long-range couplings J[chain][j][k] for k < j (U4_long_range only).
    std::vector<std::vector<std::vector<double>>> long_range;
    double long_range_exponent = 1.5;
    /// X-bar rotation angles on the driven chain, one per site.
    std::vector<double> field;
    /// Longitudinal fields of the 2T model, one per site.
    std::vector<double> field_z;
    /// One entry per CNOT layer, in application order.
    std::vector<CnotAngles> cnot;
    /// Angle multipliers g[layer][site] of the multi-control layers.
    std::vector<std::vector<double>> scale;

    bool operator==(const ModelParams &) const = default;
};

/// A logical gate step of a model, in application order.
struct LogicalStep {
    enum class Kind { X, Cnot, MultiControl };
    Kind kind = Kind::X;
    std::vector<std::size_t> controls;
    std::size_t target = 0;
    /// Index into ModelParams::cnot or ModelParams::scale.
    std::size_t param_index = 0;
};

/// Logical gate sequence applied after the stabilizer layer.
///
/// The written products are read rightmost-first; for U2n the controlled gates
/// run from CNOT up to C^(n-1)NOT so that each period decrements the logical
/// register by one.
inline std::vector<LogicalStep> logical_steps(const ModelSpec &model) {
    using K = LogicalStep::Kind;
    std::vector<LogicalStep> steps{{K::X, {}, 0, 0}};
    switch (model.kind) {
        case ModelKind::U4:
        case ModelKind::U4LongRange:
            steps.push_back({K::Cnot, {0}, 1, 0});
            break;
        case ModelKind::U3:
            steps.push_back({K::Cnot, {2}, 1, 0});
            steps.push_back({K::Cnot, {0}, 1, 1});
            steps.push_back({K::Cnot, {1}, 0, 2});
            break;
        case ModelKind::U8:
            steps.push_back({K::Cnot, {0}, 1, 0});
            steps.push_back({K::MultiControl, {0, 1}, 2, 0});
            break;
        case ModelKind::U2n:
            if (model.n >= 2) {
                steps.push_back({K::Cnot, {0}, 1, 0});
            }
            for (std::size_t j = 2; j < model.n; j++) {
                std::vector<std::size_t> controls;
                for (std::size_t c = 0; c < j; c++) {
                    controls.push_back(c);
                }
                steps.push_back({K::MultiControl, controls, j, j - 2});
            }
            break;
        case ModelKind::TwoT:
            break;
    }
    return steps;
}

/// Ideal gate angles with all couplings set to `coupling` (zero field_z).
inline ModelParams ideal_params(const ModelSpec &model, const ChainLayout &layout, double coupling = 0.0) {
    ModelParams p;
    const std::size_t bonds = layout.sites > 0 ? layout.sites - 1 : 0;
    p.coupling.assign(layout.chains, std::vector<double>(bonds, coupling));
    if (model.kind == ModelKind::U4LongRange) {
        p.long_range.assign(layout.chains, {});
        for (auto &chain : p.long_range) {
            for (std::size_t j = 0; j < layout.sites; j++) {
                chain.emplace_back(j, coupling);
            }
        }
    }
    p.field.assign(layout.sites, std::numbers::pi / 2);
    if (model.kind == ModelKind::TwoT) {
        p.field_z.assign(layout.sites, 0.0);
    }
    for (const auto &step : logical_steps(model)) {
        if (step.kind == LogicalStep::Kind::Cnot) {
            p.cnot.push_back(CnotAngles::ideal(layout.sites));
        } else if (step.kind == LogicalStep::Kind::MultiControl) {
            p.scale.emplace_back(layout.sites, 1.0);
        }
    }
    return p;
}

/// A set of mutually commuting rotations applied as one block.
///
/// The block's unitary is exp(-i identity_angle) * prod(rotations); the
/// identity angle collects the constant terms of (1 - Z)...(1 - X) expansions.
/// `reference_phase` is the phase such that, at ideal parameters, the block
/// equals exp(-i reference_phase) times the exact logical gate it implements.
struct Layer {
    std::string label;
    std::vector<PauliRotation> rotations;
    double identity_angle = 0.0;
    double reference_phase = 0.0;

    /// Throws if two rotations fail to commute.
    void check_commuting() const {
        for (std::size_t a = 0; a < rotations.size(); a++) {
            for (std::size_t b = a + 1; b < rotations.size(); b++) {
                if (anticommutes(rotations[a].pauli, rotations[b].pauli)) {
                    throw ConfigError("layer " + label + ": " + rotations[a].pauli.str() + " and " +
                                      rotations[b].pauli.str() + " do not commute");
                }
            }
        }
    }
};

struct FloquetProgram {
    ModelSpec model;
    ChainLayout layout;
    ModelParams params;
    /// Application order: layers[0] acts first.
    std::vector<Layer> layers;

    std::size_t num_qubits() const { return layout.num_qubits(); }

    double identity_angle() const {
        double s = 0;
        for (const auto &l : layers) {
            s += l.identity_angle;
        }
        return s;
    }

    double reference_phase() const {
        double s = 0;
        for (const auto &l : layers) {
            s += l.reference_phase;
        }
        return s;
    }

    /// All rotations, flattened in application order.
    std::vector<PauliRotation> rotations() const {
        std::vector<PauliRotation> out;
        for (const auto &l : layers) {
            out.insert(out.end(), l.rotations.begin(), l.rotations.end());
        }
        return out;
    }
};

namespace detail {

inline void require_len(const std::vector<double> &v, std::size_t n, const std::string &what) {
    if (v.size() != n) {
        throw DimensionError(what + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(n));
    }
}

inline void require_chain(const ChainLayout &layout, std::size_t chain) {
    if (chain >= layout.chains) {
        throw ConfigError("chain " + std::to_string(chain) + " does not exist in a " + std::to_string(layout.chains) +
                          "-chain layout");
    }
}

inline void push_rotation(Layer &layer, double angle, PauliString p) {
    layer.rotations.emplace_back(angle, std::move(p));
}

}  // namespace detail

enum class CouplingSign {
    /// exp(-i H_rep) with H_rep = -sum J Z Z, i.e. rotation angle -J.
    Stabilizer,
    /// exp(-i sum J Z Z), rotation angle +J.
    Direct,
};

/// exp(-i sum_s H_rep,s) over the open-chain stabilizers Z_j Z_{j+1}.
inline Layer build_h_rep_layer(const ChainLayout &layout, const std::vector<std::vector<double>> &coupling,
                               CouplingSign sign = CouplingSign::Stabilizer) {
    layout.validate();
    if (coupling.size() != layout.chains) {
        throw DimensionError("coupling table has " + std::to_string(coupling.size()) + " chains, layout has " +
                             std::to_string(layout.chains));
    }
    const std::size_t q = layout.num_qubits();
    const double s = sign == CouplingSign::Stabilizer ? -1.0 : 1.0;
    Layer layer{"H_rep", {}, 0.0, 0.0};
    for (std::size_t c = 0; c < layout.chains; c++) {
        detail::require_len(coupling[c], layout.sites - 1, "coupling[" + std::to_string(c) + "]");
        for (std::size_t j = 0; j + 1 < layout.sites; j++) {
            detail::push_rotation(layer, s * coupling[c][j],
                                  PauliString(q, {{layout.qubit(c, j), Pauli::Z}, {layout.qubit(c, j + 1), Pauli::Z}}));
        }
    }
    return layer;
}

/// Long-range replacement of H_rep: exp(-i sum_{j>k} J_jk Z_j Z_k / |j-k|^exponent).
inline Layer build_long_range_layer(const ChainLayout &layout,
                                    const std::vector<std::vector<std::vector<double>>> &coupling, double exponent) {
    layout.validate();
    if (coupling.size() != layout.chains) {
        throw DimensionError("long-range table has " + std::to_string(coupling.size()) + " chains, layout has " +
                             std::to_string(layout.chains));
    }
    const std::size_t q = layout.num_qubits();
    Layer layer{"H_long_range", {}, 0.0, 0.0};
    for (std::size_t c = 0; c < layout.chains; c++) {
        if (coupling[c].size() != layout.sites) {
            throw DimensionError("long-range table for chain " + std::to_string(c) + " has wrong row count");
        }
        for (std::size_t j = 1; j < layout.sites; j++) {
            detail::require_len(coupling[c][j], j, "long_range[" + std::to_string(c) + "][" + std::to_string(j) + "]");
            for (std::size_t k = 0; k < j; k++) {
                double r = std::pow(static_cast<double>(j - k), exponent);
                detail::push_rotation(layer, coupling[c][j][k] / r,
                                      PauliString(q, {{layout.qubit(c, j), Pauli::Z}, {layout.qubit(c, k), Pauli::Z}}));
            }
        }
    }
    return layer;
}

/// Transversal X-bar: exp(-i sum_j h_j X_{j,chain}).
inline Layer build_logical_x_layer(const ChainLayout &layout, const std::vector<double> &field, std::size_t chain) {
    layout.validate();
    detail::require_chain(layout, chain);
    detail::require_len(field, layout.sites, "field");
    Layer layer{"X" + std::to_string(chain + 1), {}, 0.0, 0.0};
    for (std::size_t j = 0; j < layout.sites; j++) {
        detail::push_rotation(layer, field[j], PauliString::single(layout.num_qubits(), layout.qubit(chain, j), Pauli::X));
        // exp(-i pi/2 X) = exp(-i pi/2) X
        layer.reference_phase += field[j];
    }
    return layer;
}

/// Transversal CNOT from `control` to `target`:
/// exp(-i sum_j [zx_j Z_jA X_jB + z_j Z_jA + x_j X_jB]).
inline Layer build_transversal_cnot_layer(const ChainLayout &layout, std::size_t control, std::size_t target,
                                          const CnotAngles &angles) {
    layout.validate();
    detail::require_chain(layout, control);
    detail::require_chain(layout, target);
    if (control == target) {
        throw ConfigError("CNOT control and target are both chain " + std::to_string(control));
    }
    detail::require_len(angles.zx, layout.sites, "cnot.zx");
    detail::require_len(angles.z, layout.sites, "cnot.z");
    detail::require_len(angles.x, layout.sites, "cnot.x");
    const std::size_t q = layout.num_qubits();
    Layer layer{"CNOT" + std::to_string(control + 1) + "," + std::to_string(target + 1), {}, 0.0, 0.0};
    for (std::size_t j = 0; j < layout.sites; j++) {
        std::size_t a = layout.qubit(control, j), b = layout.qubit(target, j);
        detail::push_rotation(layer, angles.zx[j], PauliString(q, {{a, Pauli::Z}, {b, Pauli::X}}));
        detail::push_rotation(layer, angles.z[j], PauliString::single(q, a, Pauli::Z));
        detail::push_rotation(layer, angles.x[j], PauliString::single(q, b, Pauli::X));
        // the missing identity term of pi/4 (1 - Z)(1 - X)
        layer.reference_phase -= angles.zx[j];
    }
    layer.check_commuting();
    return layer;
}

/// exp(-i g_j pi/2^{k+1} prod_c (1 - Z_c) (1 - X_t)) on every site, with k the
/// number of controls. Each product term becomes one rotation; the constant
/// term goes to the layer's identity angle.
inline Layer build_controlled_not_layer(const ChainLayout &layout, const std::vector<std::size_t> &controls,
                                        std::size_t target, const std::vector<double> &scale) {
    layout.validate();
    if (controls.empty()) {
        throw ConfigError("controlled-NOT layer needs at least one control");
    }
    std::vector<std::size_t> chains = controls;
    chains.push_back(target);
    for (std::size_t a = 0; a < chains.size(); a++) {
        detail::require_chain(layout, chains[a]);
        for (std::size_t b = a + 1; b < chains.size(); b++) {
            if (chains[a] == chains[b]) {
                throw ConfigError("controlled-NOT chains must be distinct, chain " + std::to_string(chains[a]) +
                                  " repeats");
            }
        }
    }
    detail::require_len(scale, layout.sites, "scale");
    const std::size_t k = controls.size();
    const std::size_t q = layout.num_qubits();
    const double base = std::numbers::pi / static_cast<double>(std::size_t{1} << (k + 1));

    std::string label = "C" + std::to_string(k) + "NOT";
    for (auto c : controls) {
        label += std::to_string(c + 1);
    }
    label += "," + std::to_string(target + 1);
    Layer layer{label, {}, 0.0, 0.0};

    // Subset bit c < k picks -Z on control c; bit k picks -X on the target.
    for (std::size_t j = 0; j < layout.sites; j++) {
        const double angle = scale[j] * base;
        for (std::size_t mask = 0; mask < (std::size_t{1} << (k + 1)); mask++) {
            PauliString p(q);
            int sign = 1;
            for (std::size_t c = 0; c < k; c++) {
                if ((mask >> c) & 1) {
                    p.set(layout.qubit(controls[c], j), Pauli::Z);
                    sign = -sign;
                }
            }
            if ((mask >> k) & 1) {
                p.set(layout.qubit(target, j), Pauli::X);
                sign = -sign;
            }
            if (mask == 0) {
                layer.identity_angle += angle;
            } else {
                detail::push_rotation(layer, sign * angle, std::move(p));
            }
        }
    }
    layer.check_commuting();
    return layer;
}

/// Transversal CCNOT with controls {a, b} and target c.
inline Layer build_transversal_ccnot_layer(const ChainLayout &layout, std::size_t a, std::size_t b, std::size_t c,
                                           const std::vector<double> &scale) {
    return build_controlled_not_layer(layout, {a, b}, c, scale);
}

/// C^(j)NOT with controls 0..j-1 and target j.
inline Layer build_generalized_cnot_layer(const ChainLayout &layout, std::size_t j, const std::vector<double> &scale) {
    if (j < 1 || j + 1 > layout.chains) {
        throw ConfigError("C^(" + std::to_string(j) + ")NOT needs " + std::to_string(j + 1) + " chains, layout has " +
                          std::to_string(layout.chains));
    }
    std::vector<std::size_t> controls;
    for (std::size_t c = 0; c < j; c++) {
        controls.push_back(c);
    }
    return build_controlled_not_layer(layout, controls, j, scale);
}

/// Full one-period program, layers in application order: stabilizer (or
/// long-range) layer, X-bar on chain 0, then the model's controlled gates.
inline FloquetProgram build_model(const ModelSpec &model, const ChainLayout &layout, const ModelParams &params) {
    layout.validate(2);
    if (layout.chains != model.required_chains()) {
        throw ConfigError("model " + model.name() + " needs " + std::to_string(model.required_chains()) +
                          " chains, layout has " + std::to_string(layout.chains));
    }
    FloquetProgram prog{model, layout, params, {}};
    if (model.kind == ModelKind::TwoT) {
        // exp(+i sum [J Z Z + hz Z]) followed by the transverse kick
        Layer first = build_h_rep_layer(layout, params.coupling, CouplingSign::Stabilizer);
        detail::require_len(params.field_z, layout.sites, "field_z");
        for (std::size_t j = 0; j < layout.sites; j++) {
            first.rotations.emplace_back(-params.field_z[j], PauliString::single(layout.num_qubits(), j, Pauli::Z));
        }
        first.label = "H_rep+hZ";
        prog.layers.push_back(std::move(first));
    } else if (model.kind == ModelKind::U4LongRange) {
        prog.layers.push_back(build_long_range_layer(layout, params.long_range, params.long_range_exponent));
    } else {
        prog.layers.push_back(build_h_rep_layer(layout, params.coupling, CouplingSign::Stabilizer));
    }

    for (const auto &step : logical_steps(model)) {
        switch (step.kind) {
            case LogicalStep::Kind::X:
                prog.layers.push_back(build_logical_x_layer(layout, params.field, 0));
                break;
            case LogicalStep::Kind::Cnot:
                if (step.param_index >= params.cnot.size()) {
                    throw DimensionError("model " + model.name() + " needs " + std::to_string(step.param_index + 1) +
                                         " CNOT parameter sets");
                }
                prog.layers.push_back(
                    build_transversal_cnot_layer(layout, step.controls[0], step.target, params.cnot[step.param_index]));
                break;
            case LogicalStep::Kind::MultiControl:
                if (step.param_index >= params.scale.size()) {
                    throw DimensionError("model " + model.name() + " needs " + std::to_string(step.param_index + 1) +
                                         " multi-control scale sets");
                }
                prog.layers.push_back(
                    build_controlled_not_layer(layout, step.controls, step.target, params.scale[step.param_index]));
                break;
        }
    }
    for (const auto &layer : prog.layers) {
        layer.check_commuting();
    }
    return prog;
}

/// Applies every rotation of the program once (one driving period). The
/// global identity phase is not applied; see FloquetProgram::identity_angle.
inline void apply_rotations(StateVector &state, const FloquetProgram &program) {
    for (const auto &layer : program.layers) {
        for (const auto &r : layer.rotations) {
            state.apply(r);
        }
    }
}

/// Exact one-period unitary including the identity phase.
inline void apply_exact(StateVector &state, const FloquetProgram &program) {
    apply_rotations(state, program);
    state.apply_global_phase(program.identity_angle());
}

// JSON form used by golden files and run records.

inline nlohmann::json to_json(const PauliRotation &r) {
    return nlohmann::json{{"angle", r.angle}, {"pauli", r.pauli.str()}};
}

inline nlohmann::json to_json(const ModelParams &p) {
    nlohmann::json cnot = nlohmann::json::array();
    for (const auto &c : p.cnot) {
        cnot.push_back({{"zx", c.zx}, {"z", c.z}, {"x", c.x}});
    }
    return nlohmann::json{{"coupling", p.coupling},
                          {"long_range", p.long_range},
                          {"long_range_exponent", p.long_range_exponent},
                          {"field", p.field},
                          {"field_z", p.field_z},
                          {"cnot", cnot},
                          {"scale", p.scale}};
}

inline nlohmann::json to_json(const FloquetProgram &prog) {
    nlohmann::json layers = nlohmann::json::array();
    for (const auto &l : prog.layers) {
        nlohmann::json rots = nlohmann::json::array();
        for (const auto &r : l.rotations) {
            rots.push_back(to_json(r));
        }
        layers.push_back({{"label", l.label},
                          {"identity_angle", l.identity_angle},
                          {"reference_phase", l.reference_phase},
                          {"rotations", rots}});
    }
    return nlohmann::json{{"model", prog.model.name()},
                          {"layout", {{"chains", prog.layout.chains}, {"sites", prog.layout.sites}}},
                          {"params", to_json(prog.params)},
                          {"layers", layers}};
}

}  // namespace repdtc
