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
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "repdtc/errors.hpp"
#include "repdtc/layout.hpp"
#include "repdtc/models.hpp"
#include "repdtc/pauli.hpp"
#include "repdtc/statevector.hpp"

namespace repdtc {

/// Rotations of weight <= 2 on nearest-neighbour qubits, in application order.
/// Unitary: exp(-i identity_angle) * prod(rotations).
struct GadgetSequence {
    std::vector<PauliRotation> rotations;
    double identity_angle = 0.0;

    std::size_t size() const { return rotations.size(); }

    void append(const GadgetSequence &other) {
        rotations.insert(rotations.end(), other.rotations.begin(), other.rotations.end());
        identity_angle += other.identity_angle;
    }

    /// True when every rotation has weight <= 2 and any weight-2 rotation sits
    /// on adjacent qubits of `layout`. Without a layout, qubits q and q+1 are
    /// the only neighbours.
    bool is_local(const std::optional<ChainLayout> &layout = std::nullopt) const {
        for (const auto &r : rotations) {
            auto s = r.pauli.support();
            if (s.size() > 2) {
                return false;
            }
            if (s.size() == 2) {
                bool adj = layout ? layout->adjacent(s[0], s[1]) : s[1] == s[0] + 1;
                if (!adj) {
                    return false;
                }
            }
        }
        return true;
    }
};

enum class NativeKind { RX, RY, RZ, ISWAP, ISWAPINV };

/// One native gate: R_S(angle) = exp(-i angle S) on q1, or an iSWAP / iSWAP^-1
/// on (q1, q2).
struct NativeGate {
    NativeKind kind = NativeKind::RZ;
    std::size_t q1 = 0;
    std::size_t q2 = 0;
    double angle = 0.0;

    bool is_two_qubit() const { return kind == NativeKind::ISWAP || kind == NativeKind::ISWAPINV; }
    bool operator==(const NativeGate &) const = default;
};

/// Circuit over single-qubit rotations and iSWAP gates only.
struct NativeCircuit {
    std::size_t num_qubits = 0;
    std::vector<NativeGate> gates;
    double identity_angle = 0.0;

    std::size_t two_qubit_count() const {
        return static_cast<std::size_t>(std::count_if(gates.begin(), gates.end(), [](const NativeGate &g) { return g.is_two_qubit(); }));
    }

    /// One gate per line: `RY q3 0.78539816339744828`, `ISWAP q3 q4`,
    /// `ISWAPINV q3 q4`. Angles carry 17 significant digits.
    std::string to_text() const {
        std::string out;
        char buf[64];
        for (const auto &g : gates) {
            switch (g.kind) {
                case NativeKind::RX:
                case NativeKind::RY:
                case NativeKind::RZ: {
                    const char *name = g.kind == NativeKind::RX ? "RX" : (g.kind == NativeKind::RY ? "RY" : "RZ");
                    std::snprintf(buf, sizeof(buf), "%s q%zu %.17g\n", name, g.q1, g.angle);
                    break;
                }
                case NativeKind::ISWAP:
                    std::snprintf(buf, sizeof(buf), "ISWAP q%zu q%zu\n", g.q1, g.q2);
                    break;
                case NativeKind::ISWAPINV:
                    std::snprintf(buf, sizeof(buf), "ISWAPINV q%zu q%zu\n", g.q1, g.q2);
                    break;
            }
            out += buf;
        }
        return out;
    }

    static NativeCircuit parse(const std::string &text, std::size_t num_qubits) {
        NativeCircuit c;
        c.num_qubits = num_qubits;
        std::istringstream in(text);
        std::string line;
        std::size_t lineno = 0;
        auto qubit = [&](const std::string &tok) -> std::size_t {
            if (tok.size() < 2 || tok[0] != 'q') {
                throw std::invalid_argument("line " + std::to_string(lineno) + ": bad qubit token '" + tok + "'");
            }
            std::size_t q = std::stoul(tok.substr(1));
            if (q >= num_qubits) {
                throw DimensionError("line " + std::to_string(lineno) + ": qubit " + tok + " out of range");
            }
            return q;
        };
        while (std::getline(in, line)) {
            lineno++;
            std::istringstream ls(line);
            std::string op, a, b;
            if (!(ls >> op)) {
                continue;
            }
            NativeGate g;
            if (op == "RX" || op == "RY" || op == "RZ") {
                if (!(ls >> a >> b)) {
                    throw std::invalid_argument("line " + std::to_string(lineno) + ": expected '<R> q<k> <angle>'");
                }
                g.kind = op == "RX" ? NativeKind::RX : (op == "RY" ? NativeKind::RY : NativeKind::RZ);
                g.q1 = qubit(a);
                g.angle = std::stod(b);
            } else if (op == "ISWAP" || op == "ISWAPINV") {
                if (!(ls >> a >> b)) {
                    throw std::invalid_argument("line " + std::to_string(lineno) + ": expected '" + op + " q<a> q<b>'");
                }
                g.kind = op == "ISWAP" ? NativeKind::ISWAP : NativeKind::ISWAPINV;
                g.q1 = qubit(a);
                g.q2 = qubit(b);
            } else {
                throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown gate '" + op + "'");
            }
            c.gates.push_back(g);
        }
        return c;
    }
};

/// Multiplicative angle errors for one execution of a native gate.
struct NativeNoise {
    double rotation_factor = 1.0;
    double iswap_factor = 1.0;
};

inline Gate to_gate(const NativeGate &g, std::size_t num_qubits, NativeNoise noise = {}) {
    switch (g.kind) {
        case NativeKind::RX:
            return PauliRotation(g.angle * noise.rotation_factor, PauliString::single(num_qubits, g.q1, Pauli::X));
        case NativeKind::RY:
            return PauliRotation(g.angle * noise.rotation_factor, PauliString::single(num_qubits, g.q1, Pauli::Y));
        case NativeKind::RZ:
            return PauliRotation(g.angle * noise.rotation_factor, PauliString::single(num_qubits, g.q1, Pauli::Z));
        case NativeKind::ISWAP:
        case NativeKind::ISWAPINV:
            return ISwap{g.q1, g.q2, g.kind == NativeKind::ISWAPINV, std::numbers::pi / 4 * noise.iswap_factor};
    }
    throw std::logic_error("unreachable native gate kind");
}

namespace detail {

inline PauliRotation dressing(int sign, PauliString generator) {
    // exp(+i s pi/4 G) in the exp(-i angle P) convention
    return PauliRotation(-sign * std::numbers::pi / 4, std::move(generator));
}

/// Builds exp(-i theta target) = V exp(-i theta' core) V^dagger where
/// V = U_K ... U_1 and U_k = exp(+i s_k pi/4 G_k). The core sign theta' is
/// fixed by symbolically conjugating `core` through the chain.
inline GadgetSequence sandwich(const PauliString &core, double theta,
                               const std::vector<std::pair<PauliString, int>> &conjugations,
                               const PauliString &target) {
    PauliString p = core;
    for (const auto &[g, s] : conjugations) {
        auto r = clifford_conjugate(g, s, p);
        if (r.trivial) {
            throw std::logic_error("gadget step " + g.str() + " commutes with " + p.str());
        }
        p = r.value;
    }
    if (p.without_phase() != target.without_phase() || !p.is_hermitian()) {
        throw std::logic_error("gadget chain produced " + p.str() + " instead of " + target.str());
    }
    const double core_sign = (p.phase_exponent() == target.phase_exponent()) ? 1.0 : -1.0;

    GadgetSequence seq;
    for (auto it = conjugations.rbegin(); it != conjugations.rend(); ++it) {
        seq.rotations.push_back(dressing(it->second, it->first).inverse());
    }
    seq.rotations.emplace_back(core_sign * theta, core);
    for (const auto &[g, s] : conjugations) {
        seq.rotations.push_back(dressing(s, g));
    }
    return seq;
}

inline PauliString two_site(std::size_t n, std::size_t a, Pauli pa, std::size_t b, Pauli pb) {
    return PauliString(n, {{a, pa}, {b, pb}});
}

inline std::vector<std::size_t> identity_line(std::size_t n) {
    std::vector<std::size_t> line(n);
    for (std::size_t i = 0; i < n; i++) {
        line[i] = i;
    }
    return line;
}

/// Letters of `target` read along `line`; throws if the target has support
/// off the line.
inline std::vector<Pauli> letters_along(const PauliString &target, std::span<const std::size_t> line) {
    std::vector<Pauli> out;
    std::size_t seen = 0;
    for (auto q : line) {
        if (q >= target.num_qubits()) {
            throw DimensionError("line qubit " + std::to_string(q) + " out of range");
        }
        out.push_back(target[q]);
        seen += target[q] != Pauli::I;
    }
    if (seen != target.weight()) {
        throw CompilationError(target.str() + " has support outside the given qubit line");
    }
    return out;
}

inline void require_hermitian_target(const PauliString &target) {
    if (target.phase_exponent() != 0) {
        throw std::invalid_argument("gadget targets must have phase +1, got " + target.str());
    }
}

}  // namespace detail

/// exp(-i theta Z_m ... Z_j X_{j+1}) via repeated conjugation of the core
/// Z_m X_{m+1} by exp(i pi/4 Y_{m+k} X_{m+k+1}). `line` lists the qubits in
/// adjacency order; the default is 0, 1, ..., Q-1.
inline GadgetSequence decompose_I1(const PauliString &target, double theta, std::span<const std::size_t> line) {
    detail::require_hermitian_target(target);
    auto letters = detail::letters_along(target, line);
    auto first = std::find_if(letters.begin(), letters.end(), [](Pauli p) { return p != Pauli::I; });
    auto last = std::find_if(letters.rbegin(), letters.rend(), [](Pauli p) { return p != Pauli::I; });
    if (first == letters.end()) {
        throw CompilationError("I1 pattern needs a non-identity target");
    }
    std::size_t m = static_cast<std::size_t>(first - letters.begin());
    std::size_t end = letters.size() - 1 - static_cast<std::size_t>(last - letters.rbegin());
    std::size_t length = end - m + 1;
    bool ok = length >= 2 && letters[end] == Pauli::X;
    for (std::size_t i = m; ok && i < end; i++) {
        ok = letters[i] == Pauli::Z;
    }
    if (!ok) {
        throw CompilationError(target.str() + " is not of the form Z...Z X on consecutive qubits");
    }
    const std::size_t n = target.num_qubits();
    PauliString core = detail::two_site(n, line[m], Pauli::Z, line[m + 1], Pauli::X);
    std::vector<std::pair<PauliString, int>> steps;
    for (std::size_t k = 1; k + 1 < length; k++) {
        steps.emplace_back(detail::two_site(n, line[m + k], Pauli::Y, line[m + k + 1], Pauli::X), +1);
    }
    return detail::sandwich(core, theta, steps, target);
}

inline GadgetSequence decompose_I1(const PauliString &target, double theta) {
    auto line = detail::identity_line(target.num_qubits());
    return decompose_I1(target, theta, line);
}

/// exp(-i theta Z_m X_{m+k}): the X is walked outwards by the dressing pair
/// exp(i pi/4 Z Z) exp(i pi/4 Y Y) on each successive bond.
inline GadgetSequence decompose_I2(const PauliString &target, double theta, std::span<const std::size_t> line) {
    detail::require_hermitian_target(target);
    auto letters = detail::letters_along(target, line);
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < letters.size(); i++) {
        if (letters[i] != Pauli::I) {
            pos.push_back(i);
        }
    }
    if (pos.size() != 2 || letters[pos[0]] != Pauli::Z || letters[pos[1]] != Pauli::X) {
        throw CompilationError(target.str() + " is not of the form Z_m X_{m+k}");
    }
    const std::size_t n = target.num_qubits();
    const std::size_t m = pos[0];
    PauliString core = detail::two_site(n, line[m], Pauli::Z, line[m + 1], Pauli::X);
    std::vector<std::pair<PauliString, int>> steps;
    for (std::size_t k = 1; m + k < pos[1]; k++) {
        steps.emplace_back(detail::two_site(n, line[m + k], Pauli::Y, line[m + k + 1], Pauli::Y), +1);
        steps.emplace_back(detail::two_site(n, line[m + k], Pauli::Z, line[m + k + 1], Pauli::Z), +1);
    }
    return detail::sandwich(core, theta, steps, target);
}

inline GadgetSequence decompose_I2(const PauliString &target, double theta) {
    auto line = detail::identity_line(target.num_qubits());
    return decompose_I2(target, theta, line);
}

/// exp(-i theta Z_m Z_{m+h}). The core exp(+i theta Z_m X_{m+1}) is grown with
/// Z Z / Y Y dressings to Z_m X_{m+h-1}, then a final Y Y / Z X pair turns the
/// X into a Z one bond further out.
inline GadgetSequence decompose_I3(const PauliString &target, double theta, std::span<const std::size_t> line) {
    detail::require_hermitian_target(target);
    auto letters = detail::letters_along(target, line);
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < letters.size(); i++) {
        if (letters[i] != Pauli::I) {
            pos.push_back(i);
        }
    }
    if (pos.size() != 2 || letters[pos[0]] != Pauli::Z || letters[pos[1]] != Pauli::Z) {
        throw CompilationError(target.str() + " is not of the form Z_m Z_{m+h}");
    }
    const std::size_t n = target.num_qubits();
    const std::size_t m = pos[0];
    const std::size_t h = pos[1] - pos[0];
    if (h == 1) {
        return GadgetSequence{{PauliRotation(theta, target)}, 0.0};
    }
    PauliString core = detail::two_site(n, line[m], Pauli::Z, line[m + 1], Pauli::X);
    std::vector<std::pair<PauliString, int>> steps;
    for (std::size_t k = 1; k + 1 < h; k++) {
        steps.emplace_back(detail::two_site(n, line[m + k], Pauli::Y, line[m + k + 1], Pauli::Y), +1);
        steps.emplace_back(detail::two_site(n, line[m + k], Pauli::Z, line[m + k + 1], Pauli::Z), +1);
    }
    steps.emplace_back(detail::two_site(n, line[m + h - 1], Pauli::Y, line[m + h], Pauli::Y), +1);
    steps.emplace_back(detail::two_site(n, line[m + h - 1], Pauli::Z, line[m + h], Pauli::X), +1);
    return detail::sandwich(core, theta, steps, target);
}

inline GadgetSequence decompose_I3(const PauliString &target, double theta) {
    auto line = detail::identity_line(target.num_qubits());
    return decompose_I3(target, theta, line);
}

/// Greedy nearest-neighbour reduction for supports the three named gadgets
/// do not cover (e.g. Z Z Z, or Z _ Z X). The rightmost letter is removed by
/// one pi/4 conjugation when its left neighbour is occupied, otherwise it is
/// first shuttled one bond to the left with two conjugations.
inline GadgetSequence decompose_generic(const PauliString &target, double theta, std::span<const std::size_t> line) {
    detail::require_hermitian_target(target);
    auto letters = detail::letters_along(target, line);
    const std::size_t n = target.num_qubits();
    auto anticommuting = [](Pauli p) { return p == Pauli::Z ? Pauli::X : Pauli::Z; };

    // Conjugations are found by shrinking the target; the sandwich is then
    // built outward from the shrunken core, so steps are recorded in reverse.
    std::vector<std::pair<PauliString, int>> shrink;
    PauliString p = target;
    for (;;) {
        std::vector<std::size_t> pos;
        for (std::size_t i = 0; i < line.size(); i++) {
            if (p[line[i]] != Pauli::I) {
                pos.push_back(i);
            }
        }
        if (pos.size() <= 1 || (pos.size() == 2 && pos[1] == pos[0] + 1)) {
            break;
        }
        std::size_t b = pos.back();
        Pauli lb = p[line[b]];
        Pauli left = p[line[b - 1]];
        if (left != Pauli::I) {
            PauliString g = detail::two_site(n, line[b - 1], anticommuting(left), line[b], lb);
            shrink.emplace_back(g, +1);
            p = clifford_conjugate(g, +1, p).value;
        } else {
            PauliString g1 = detail::two_site(n, line[b - 1], Pauli::Z, line[b], anticommuting(lb));
            p = clifford_conjugate(g1, +1, p).value;
            shrink.emplace_back(g1, +1);
            PauliString g2 = detail::two_site(n, line[b - 1], Pauli::X, line[b], p[line[b]]);
            p = clifford_conjugate(g2, +1, p).value;
            shrink.emplace_back(g2, +1);
        }
    }
    // exp(-i theta T) with T = W^dag P W, W = prod exp(+i pi/4 G): the growth
    // chain from P back to T uses the same generators with sign -1 in reverse.
    std::vector<std::pair<PauliString, int>> grow;
    for (auto it = shrink.rbegin(); it != shrink.rend(); ++it) {
        grow.emplace_back(it->first, -1);
    }
    return detail::sandwich(p.without_phase(), theta, grow, target);
}

/// Lowers one rotation onto nearest-neighbour gadgets of `layout`. Supports
/// must lie on a single chain or on a single site across chains.
inline GadgetSequence lower_rotation_local(const PauliRotation &rot, const ChainLayout &layout) {
    auto support = rot.pauli.support();
    if (support.size() <= 1 || (support.size() == 2 && layout.adjacent(support[0], support[1]))) {
        return GadgetSequence{{rot}, 0.0};
    }
    std::vector<std::size_t> line;
    bool same_chain = std::all_of(support.begin(), support.end(),
                                  [&](std::size_t q) { return layout.chain_of(q) == layout.chain_of(support[0]); });
    bool same_site = std::all_of(support.begin(), support.end(),
                                 [&](std::size_t q) { return layout.site_of(q) == layout.site_of(support[0]); });
    if (same_chain) {
        for (std::size_t j = 0; j < layout.sites; j++) {
            line.push_back(layout.qubit(layout.chain_of(support[0]), j));
        }
    } else if (same_site) {
        for (std::size_t c = 0; c < layout.chains; c++) {
            line.push_back(layout.qubit(c, layout.site_of(support[0])));
        }
    } else {
        throw CompilationError(rot.pauli.str() + " spans several chains and sites; no local gadget applies");
    }

    const PauliString &t = rot.pauli;
    std::vector<Pauli> letters = detail::letters_along(t, line);
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < letters.size(); i++) {
        if (letters[i] != Pauli::I) {
            pos.push_back(i);
        }
    }
    bool contiguous = pos.back() - pos.front() + 1 == pos.size();
    bool zs_then_x = letters[pos.back()] == Pauli::X;
    for (std::size_t i = 0; i + 1 < pos.size(); i++) {
        zs_then_x = zs_then_x && letters[pos[i]] == Pauli::Z;
    }
    if (contiguous && zs_then_x) {
        return decompose_I1(t, rot.angle, line);
    }
    if (pos.size() == 2 && letters[pos[0]] == Pauli::Z && letters[pos[1]] == Pauli::X) {
        return decompose_I2(t, rot.angle, line);
    }
    if (pos.size() == 2 && letters[pos[0]] == Pauli::Z && letters[pos[1]] == Pauli::Z) {
        return decompose_I3(t, rot.angle, line);
    }
    return decompose_generic(t, rot.angle, line);
}

/// Merges neighbouring rotations on identical strings and drops rotations
/// whose merged angle is exactly zero.
inline void merge_adjacent(GadgetSequence &seq) {
    std::vector<PauliRotation> out;
    for (const auto &r : seq.rotations) {
        if (!out.empty() && out.back().pauli == r.pauli) {
            out.back().angle += r.angle;
            if (out.back().angle == 0.0) {
                out.pop_back();
            }
        } else {
            out.push_back(r);
        }
    }
    seq.rotations = std::move(out);
}

/// Local form of the transversal CCNOT on site `site` of chains a-b-c
/// (adjacent, b in the middle), scaled by `scale`:
///   exp(-i g pi/8 [Z_a Z_b + Z_b X_c - Z_a - Z_b - X_c]) exp(i pi/4 Y_b X_c)
///   exp(i g pi/8 Z_a X_b) exp(-i pi/4 Y_b X_c) exp(i pi/4 (Z_b Z_c + Y_b Y_c))
///   exp(-i g pi/8 Z_a X_b) exp(-i pi/4 (Z_b Z_c + Y_b Y_c)),
/// with the constant term g pi/8 kept as identity angle.
inline GadgetSequence lower_ccnot_local(const ChainLayout &layout, std::size_t site, double scale,
                                        std::size_t a = 0, std::size_t b = 1, std::size_t c = 2) {
    layout.validate();
    if (site >= layout.sites) {
        throw DimensionError("site " + std::to_string(site) + " out of range");
    }
    if (a >= layout.chains || b >= layout.chains || c >= layout.chains) {
        throw CompilationError("CCNOT chains exceed the layout's " + std::to_string(layout.chains) + " chains");
    }
    const std::size_t q1 = layout.qubit(a, site), q2 = layout.qubit(b, site), q3 = layout.qubit(c, site);
    if (!layout.adjacent(q1, q2) || !layout.adjacent(q2, q3)) {
        throw CompilationError("local CCNOT needs adjacent chains control-control-target, got " + std::to_string(a) +
                               "," + std::to_string(b) + "," + std::to_string(c));
    }
    const std::size_t n = layout.num_qubits();
    const double e = scale * std::numbers::pi / 8;
    const double q = std::numbers::pi / 4;
    auto P = [&](std::size_t x, Pauli px, std::size_t y, Pauli py) { return detail::two_site(n, x, px, y, py); };
    auto S = [&](std::size_t x, Pauli px) { return PauliString::single(n, x, px); };

    GadgetSequence seq;
    seq.identity_angle = e;
    auto &r = seq.rotations;
    // rightmost factor first
    r.emplace_back(q, P(q2, Pauli::Z, q3, Pauli::Z));
    r.emplace_back(q, P(q2, Pauli::Y, q3, Pauli::Y));
    r.emplace_back(e, P(q1, Pauli::Z, q2, Pauli::X));
    r.emplace_back(-q, P(q2, Pauli::Z, q3, Pauli::Z));
    r.emplace_back(-q, P(q2, Pauli::Y, q3, Pauli::Y));
    r.emplace_back(q, P(q2, Pauli::Y, q3, Pauli::X));
    r.emplace_back(-e, P(q1, Pauli::Z, q2, Pauli::X));
    r.emplace_back(-q, P(q2, Pauli::Y, q3, Pauli::X));
    r.emplace_back(e, P(q1, Pauli::Z, q2, Pauli::Z));
    r.emplace_back(e, P(q2, Pauli::Z, q3, Pauli::X));
    r.emplace_back(-e, S(q1, Pauli::Z));
    r.emplace_back(-e, S(q2, Pauli::Z));
    r.emplace_back(-e, S(q3, Pauli::X));
    return seq;
}

/// Local lowering of a whole program. Two-control layers on adjacent chains
/// use the explicit local CCNOT; everything else is lowered rotation by
/// rotation.
inline GadgetSequence lower_program_local(const FloquetProgram &program) {
    GadgetSequence out;
    const auto &layout = program.layout;
    auto steps = logical_steps(program.model);
    for (std::size_t li = 0; li < program.layers.size(); li++) {
        const Layer &layer = program.layers[li];
        // layer 0 is the stabilizer layer; logical steps follow in order
        const LogicalStep *step = li >= 1 && li - 1 < steps.size() ? &steps[li - 1] : nullptr;
        if (step && step->kind == LogicalStep::Kind::MultiControl && step->controls.size() == 2 &&
            step->controls[1] == step->controls[0] + 1 && step->target == step->controls[1] + 1) {
            const auto &scale = program.params.scale.at(step->param_index);
            for (std::size_t j = 0; j < layout.sites; j++) {
                out.append(lower_ccnot_local(layout, j, scale[j], step->controls[0], step->controls[1], step->target));
            }
            continue;
        }
        out.identity_angle += layer.identity_angle;
        for (const auto &r : layer.rotations) {
            out.append(lower_rotation_local(r, layout));
        }
    }
    return out;
}

namespace detail {

/// Single-qubit pi/4 rotation C with C Z C^dagger = `to` (to in {X, Y}).
inline NativeGate basis_change_from_z(std::size_t q, Pauli to, bool dagger) {
    // exp(+i s pi/4 G) Z exp(-i s pi/4 G) = i s G Z.
    // For to = X: G = Y, i s Y Z = i s (i X) = -s X  -> s = -1.
    // For to = Y: G = X, i s X Z = i s (-i Y) = s Y  -> s = +1.
    NativeKind kind = to == Pauli::X ? NativeKind::RY : NativeKind::RX;
    int s = to == Pauli::X ? -1 : 1;
    double angle = -s * std::numbers::pi / 4;  // exp(+i s pi/4 G) = R_G(-s pi/4)
    return NativeGate{kind, q, 0, dagger ? -angle : angle};
}

inline NativeGate rotation_gate(Pauli p, std::size_t q, double angle) {
    NativeKind kind = p == Pauli::X ? NativeKind::RX : (p == Pauli::Y ? NativeKind::RY : NativeKind::RZ);
    return NativeGate{kind, q, 0, angle};
}

/// exp(-i theta Z_a B_b) for B in {X, Y, Z}.
inline void emit_z_pair(std::vector<NativeGate> &out, std::size_t a, std::size_t b, Pauli other, double theta) {
    using K = NativeKind;
    switch (other) {
        case Pauli::X:
            // iSWAP exp(-i theta Y_a) iSWAP^-1
            out.push_back({K::ISWAPINV, a, b, 0});
            out.push_back({K::RY, a, 0, theta});
            out.push_back({K::ISWAP, a, b, 0});
            break;
        case Pauli::Y:
            // iSWAP^-1 exp(-i theta X_a) iSWAP
            out.push_back({K::ISWAP, a, b, 0});
            out.push_back({K::RX, a, 0, theta});
            out.push_back({K::ISWAPINV, a, b, 0});
            break;
        case Pauli::Z:
            // Z_b = C Y_b C^dagger with C = R_X(pi/4)
            out.push_back({K::RX, b, 0, -std::numbers::pi / 4});
            emit_z_pair(out, a, b, Pauli::Y, theta);
            out.push_back({K::RX, b, 0, std::numbers::pi / 4});
            break;
        default:
            throw std::logic_error("identity partner in a weight-2 rotation");
    }
}

}  // namespace detail

/// Rewrites weight-1 rotations as native single-qubit rotations and weight-2
/// rotations as iSWAP-conjugated single-qubit rotations, with pi/4 basis
/// changes for letter pairs other than Z X and Z Y. When `layout` is given,
/// weight-2 rotations must act on adjacent qubits.
inline NativeCircuit lower_to_iswap(const std::vector<PauliRotation> &rotations, std::size_t num_qubits,
                                    const std::optional<ChainLayout> &layout = std::nullopt) {
    NativeCircuit circuit;
    circuit.num_qubits = num_qubits;
    auto &out = circuit.gates;
    for (const auto &rot : rotations) {
        if (rot.num_qubits() != num_qubits) {
            throw DimensionError("rotation on " + std::to_string(rot.num_qubits()) + " qubits in a " +
                                 std::to_string(num_qubits) + "-qubit circuit");
        }
        auto s = rot.pauli.support();
        if (s.empty()) {
            circuit.identity_angle += rot.angle;
            continue;
        }
        if (s.size() == 1) {
            out.push_back(detail::rotation_gate(rot.pauli[s[0]], s[0], rot.angle));
            continue;
        }
        if (s.size() > 2) {
            throw CompilationError("cannot lower weight-" + std::to_string(s.size()) + " rotation " + rot.pauli.str() +
                                   " to iSWAP gates; lower it to local gadgets first");
        }
        if (layout && !layout->adjacent(s[0], s[1])) {
            throw CompilationError("rotation " + rot.pauli.str() + " couples non-adjacent qubits q" +
                                   std::to_string(s[0]) + " and q" + std::to_string(s[1]));
        }
        std::size_t a = s[0], b = s[1];
        Pauli pa = rot.pauli[a], pb = rot.pauli[b];
        if (pa != Pauli::Z && pb == Pauli::Z) {
            std::swap(a, b);
            std::swap(pa, pb);
        }
        if (pa == Pauli::Z) {
            detail::emit_z_pair(out, a, b, pb, rot.angle);
            continue;
        }
        // Neither letter is Z: rotate qubit a so that its letter becomes Z.
        out.push_back(detail::basis_change_from_z(a, pa, true));
        detail::emit_z_pair(out, a, b, pb, rot.angle);
        out.push_back(detail::basis_change_from_z(a, pa, false));
    }
    return circuit;
}

inline NativeCircuit lower_to_iswap(const GadgetSequence &seq, std::size_t num_qubits,
                                    const std::optional<ChainLayout> &layout = std::nullopt) {
    NativeCircuit c = lower_to_iswap(seq.rotations, num_qubits, layout);
    c.identity_angle += seq.identity_angle;
    return c;
}

// Gate-list views used for equivalence checks.

inline std::vector<Gate> to_gates(const std::vector<PauliRotation> &rotations) {
    return {rotations.begin(), rotations.end()};
}
inline std::vector<Gate> to_gates(const GadgetSequence &seq) { return to_gates(seq.rotations); }
inline std::vector<Gate> to_gates(const Layer &layer) { return to_gates(layer.rotations); }
inline std::vector<Gate> to_gates(const FloquetProgram &program) { return to_gates(program.rotations()); }
inline std::vector<Gate> to_gates(const NativeCircuit &circuit) {
    std::vector<Gate> out;
    out.reserve(circuit.gates.size());
    for (const auto &g : circuit.gates) {
        out.push_back(to_gate(g, circuit.num_qubits));
    }
    return out;
}

/// Largest register verified with full dense matrices.
inline constexpr std::size_t kDenseVerifyQubits = 6;
/// Largest register accepted by verify_equivalence at all.
inline constexpr std::size_t kProbeVerifyQubits = 12;

/// Distance between two circuits on `num_qubits` qubits, blind to global
/// phase: max |U_a - e^{i phi} U_b| over matrix entries (Q <= 6) or over
/// probe-state outputs (Q <= 12), with phi fitted by least squares.
inline double verify_equivalence(const std::vector<Gate> &a, const std::vector<Gate> &b, std::size_t num_qubits) {
    if (num_qubits > kProbeVerifyQubits) {
        throw CapacityError("equivalence checks support at most " + std::to_string(kProbeVerifyQubits) +
                            " qubits, got " + std::to_string(num_qubits));
    }
    std::vector<StateVector> probes;
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (num_qubits <= kDenseVerifyQubits) {
        for (std::size_t i = 0; i < dim; i++) {
            probes.push_back(StateVector::basis_state(num_qubits, i));
        }
    } else {
        std::mt19937_64 rng(0x5eedULL + num_qubits);
        probes.push_back(StateVector::basis_state(num_qubits, 0));
        probes.push_back(StateVector::basis_state(num_qubits, dim - 1));
        for (int k = 0; k < 30; k++) {
            probes.push_back(StateVector::basis_state(num_qubits, rng() % dim));
        }
        // dense probes tie the relative phases of different columns together
        for (int k = 0; k < 2; k++) {
            std::vector<Amplitude> amps(dim);
            double norm = 0;
            for (auto &x : amps) {
                x = Amplitude(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
                norm += std::norm(x);
            }
            for (auto &x : amps) {
                x /= std::sqrt(norm);
            }
            probes.push_back(StateVector::from_amplitudes(std::move(amps)));
        }
    }
    std::vector<StateVector> out_a, out_b;
    for (const auto &p : probes) {
        StateVector sa = p, sb = p;
        for (const auto &g : a) {
            sa.apply(g);
        }
        for (const auto &g : b) {
            sb.apply(g);
        }
        out_a.push_back(std::move(sa));
        out_b.push_back(std::move(sb));
    }
    Amplitude overlap{};
    for (std::size_t k = 0; k < probes.size(); k++) {
        overlap += inner_product(out_b[k], out_a[k]);
    }
    const Amplitude phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Amplitude(1);
    double worst = 0;
    for (std::size_t k = 0; k < probes.size(); k++) {
        auto x = out_a[k].amplitudes();
        auto y = out_b[k].amplitudes();
        for (std::size_t i = 0; i < x.size(); i++) {
            worst = std::max(worst, std::abs(x[i] - phase * y[i]));
        }
    }
    return worst;
}

}  // namespace repdtc
