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

#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "repdtc/compiler.hpp"
#include "repdtc/floquet_oracle.hpp"
#include "repdtc/models.hpp"

namespace repdtc {

struct VerifyCheck {
    std::string name;
    double value = 0;
    double tolerance = 0;
    bool passed() const { return value < tolerance; }
};

/// Self-checks of the compiler and the Floquet oracle: gadget and iSWAP
/// lowerings against the rotations they replace, and logical eigenstates
/// against ideal programs.
inline std::vector<VerifyCheck> run_verification_suite(std::uint64_t seed = 7) {
    std::vector<VerifyCheck> out;
    std::mt19937_64 rng(seed);
    auto angle = [&] { return (uniform01(rng) * 2 - 1) * std::numbers::pi; };
    auto check_gadget = [&](const std::string &name, const PauliString &target, auto decompose) {
        double worst = 0;
        for (int k = 0; k < 10; k++) {
            double theta = angle();
            GadgetSequence seq = decompose(target, theta);
            worst = std::max(worst, verify_equivalence({PauliRotation(theta, target)}, to_gates(seq),
                                                       target.num_qubits()));
        }
        out.push_back({name, worst, 1e-10});
    };
    check_gadget("I1 Z0 Z1 Z2 X3", PauliString::parse("Z0 Z1 Z2 X3", 4),
                 [](const PauliString &t, double th) { return decompose_I1(t, th); });
    check_gadget("I2 Z0 X3", PauliString::parse("Z0 X3", 4),
                 [](const PauliString &t, double th) { return decompose_I2(t, th); });
    check_gadget("I3 Z0 Z3", PauliString::parse("Z0 Z3", 4),
                 [](const PauliString &t, double th) { return decompose_I3(t, th); });
    check_gadget("generic Z0 Z2 Z3 X4", PauliString::parse("Z0 Z2 Z3 X4", 5), [](const PauliString &t, double th) {
        auto line = detail::identity_line(t.num_qubits());
        return decompose_generic(t, th, line);
    });

    {
        ChainLayout layout{3, 1};
        Layer ccnot = build_transversal_ccnot_layer(layout, 0, 1, 2, {1.0});
        GadgetSequence local = lower_ccnot_local(layout, 0, 1.0);
        out.push_back({"local CCNOT vs transversal CCNOT (N=1)",
                       verify_equivalence(to_gates(ccnot), to_gates(local), 3), 1e-10});
    }
    for (const char *p : {"Z0 X1", "Z0 Y1", "Z0 Z1", "X0 X1", "Y0 X1"}) {
        PauliString t = PauliString::parse(p, 2);
        double theta = angle();
        NativeCircuit c = lower_to_iswap(std::vector<PauliRotation>{PauliRotation(theta, t)}, 2);
        out.push_back({std::string("iSWAP lowering ") + p,
                       verify_equivalence({PauliRotation(theta, t)}, to_gates(c), 2), 1e-12});
    }
    {
        ChainLayout layout{2, 3};
        ModelSpec m = ModelSpec::parse("U4");
        FloquetProgram prog = build_model(m, layout, ideal_params(m, layout, 0.8));
        NativeCircuit c = lower_to_iswap(lower_program_local(prog), layout.num_qubits(), layout);
        out.push_back({"U4 2x3 native lowering", verify_equivalence(to_gates(prog), to_gates(c), 6), 1e-9});
    }
    for (std::size_t n = 1; n <= 3; n++) {
        ChainLayout layout{n, 2};
        ModelSpec m{ModelKind::U2n, n};
        ModelParams params = ideal_params(m, layout);
        for (auto &chain : params.coupling) {
            for (auto &J : chain) {
                J = 0.5 + uniform01(rng);
            }
        }
        QuasienergyReport rep = check_quasienergy_spectrum(build_model(m, layout, params));
        out.push_back({"quasienergy residual n=" + std::to_string(n), rep.max_residual(), 1e-9});
        out.push_back({"quasienergy spacing n=" + std::to_string(n), rep.max_spacing_error(), 1e-9});
    }
    return out;
}

}  // namespace repdtc
