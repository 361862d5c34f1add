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

#include <random>

#include "catch_amalgamated.hpp"
#include "dense_oracle.hpp"
#include "repdtc/compiler.hpp"

using namespace repdtc;
using oracle::cd;
using oracle::Mat;

namespace {

std::string letters_of(const PauliString &p) {
    std::string s;
    for (std::size_t q = 0; q < p.num_qubits(); q++) s += pauli_char(p[q]);
    return s;
}

Mat dense_rotation(double theta, const PauliString &p) { return oracle::rotation(theta, p.phase() * oracle::pauli_string(letters_of(p))); }

// exp(-i identity_angle) * prod(rotations), built from dense factors only.
Mat dense_sequence(const std::vector<PauliRotation> &rots, double identity_angle, std::size_t Q) {
    Mat u = std::exp(cd(0, -identity_angle)) * oracle::identity(Q);
    for (const auto &r : rots) u = dense_rotation(r.angle, r.pauli) * u;
    return u;
}

Mat dense_sequence(const GadgetSequence &s, std::size_t Q) { return dense_sequence(s.rotations, s.identity_angle, Q); }

Mat dense_native(const NativeCircuit &c) {
    const std::size_t Q = c.num_qubits;
    Mat u = std::exp(cd(0, -c.identity_angle)) * oracle::identity(Q);
    for (const auto &g : c.gates) {
        switch (g.kind) {
            case NativeKind::RX: u = oracle::embed(oracle::rotation(g.angle, oracle::pauli('X')), {g.q1}, Q) * u; break;
            case NativeKind::RY: u = oracle::embed(oracle::rotation(g.angle, oracle::pauli('Y')), {g.q1}, Q) * u; break;
            case NativeKind::RZ: u = oracle::embed(oracle::rotation(g.angle, oracle::pauli('Z')), {g.q1}, Q) * u; break;
            case NativeKind::ISWAP: u = oracle::embed(oracle::iswap(M_PI / 4), {g.q1, g.q2}, Q) * u; break;
            case NativeKind::ISWAPINV: u = oracle::embed(oracle::iswap(-M_PI / 4), {g.q1, g.q2}, Q) * u; break;
        }
    }
    return u;
}

double random_angle(std::mt19937_64 &rng) { return (uniform01(rng) * 2 - 1) * M_PI; }

}  // namespace

TEST_CASE("I1 gadget", "[compiler][gadget]") {
    SECTION("weight two is a single rotation") {
        auto seq = decompose_I1(PauliString::parse("Z0 X1", 2), 0.3);
        REQUIRE(seq.size() == 1);
        CHECK(seq.rotations[0].angle == 0.3);
    }
    SECTION("Z0 Z1 X2 for many angles") {
        auto t = PauliString::parse("Z0 Z1 X2", 3);
        std::mt19937_64 rng(1);
        for (int k = 0; k < 50; k++) {
            double th = random_angle(rng);
            CHECK(oracle::max_abs(dense_sequence(decompose_I1(t, th), 3) - dense_rotation(th, t)) < 1e-12);
        }
    }
    SECTION("Z0 Z1 Z2 X3 at pi/8") {
        auto t = PauliString::parse("Z0 Z1 Z2 X3", 4);
        CHECK(oracle::max_abs(dense_sequence(decompose_I1(t, M_PI / 8), 4) - dense_rotation(M_PI / 8, t)) < 1e-12);
    }
    SECTION("an offset run") {
        auto t = PauliString::parse("Z1 Z2 X3", 5);
        CHECK(oracle::max_abs(dense_sequence(decompose_I1(t, 0.9), 5) - dense_rotation(0.9, t)) < 1e-12);
    }
    SECTION("gate count 2(L-2)+1") {
        for (std::size_t L = 2; L <= 7; L++) {
            PauliString t(L);
            for (std::size_t q = 0; q + 1 < L; q++) t.set(q, Pauli::Z);
            t.set(L - 1, Pauli::X);
            CHECK(decompose_I1(t, 0.2).size() == 2 * (L - 2) + 1);
        }
    }
    SECTION("pattern errors") {
        CHECK_THROWS_AS(decompose_I1(PauliString::parse("Z0 X2", 3), 0.1), CompilationError);
        CHECK_THROWS_AS(decompose_I1(PauliString::parse("Z0 Z1", 2), 0.1), CompilationError);
        CHECK_THROWS_AS(decompose_I1(PauliString::parse("X0 Z1 X2", 3), 0.1), CompilationError);
        CHECK_THROWS_AS(decompose_I1(PauliString(3), 0.1), CompilationError);
    }
}

TEST_CASE("I2 gadget", "[compiler][gadget]") {
    CHECK(decompose_I2(PauliString::parse("Z0 X1", 2), 0.3).size() == 1);
    std::mt19937_64 rng(2);
    for (const char *text : {"Z0 X2", "Z0 X3", "Z1 X4"}) {
        auto t = PauliString::parse(text, 5);
        for (int k = 0; k < 50; k++) {
            double th = random_angle(rng);
            INFO(text << " theta=" << th);
            CHECK(oracle::max_abs(dense_sequence(decompose_I2(t, th), 5) - dense_rotation(th, t)) < 1e-11);
        }
    }
    auto t = PauliString::parse("Z0 X2", 3);
    CHECK(oracle::max_abs(dense_sequence(decompose_I2(t, 0.3), 3) - dense_rotation(0.3, t)) < 1e-12);
    CHECK_THROWS_AS(decompose_I2(PauliString::parse("Z0 Z2", 3), 0.1), CompilationError);
    CHECK_THROWS_AS(decompose_I2(PauliString::parse("X0 Z2", 3), 0.1), CompilationError);
}

TEST_CASE("I3 gadget", "[compiler][gadget]") {
    auto one = decompose_I3(PauliString::parse("Z0 Z1", 2), 0.3);
    REQUIRE(one.size() == 1);
    CHECK(one.rotations[0].pauli == PauliString::parse("Z0 Z1", 2));
    auto t2 = PauliString::parse("Z0 Z2", 3);
    CHECK(oracle::max_abs(dense_sequence(decompose_I3(t2, 0.7), 3) - dense_rotation(0.7, t2)) < 1e-12);
    auto t3 = PauliString::parse("Z0 Z3", 4);
    CHECK(oracle::max_abs(dense_sequence(decompose_I3(t3, 1.2), 4) - dense_rotation(1.2, t3)) < 1e-12);
    std::mt19937_64 rng(3);
    for (const char *text : {"Z0 Z2", "Z0 Z3", "Z0 Z4", "Z1 Z4"}) {
        auto t = PauliString::parse(text, 5);
        for (int k = 0; k < 50; k++) {
            double th = random_angle(rng);
            INFO(text << " theta=" << th);
            CHECK(oracle::max_abs(dense_sequence(decompose_I3(t, th), 5) - dense_rotation(th, t)) < 1e-11);
        }
    }
    CHECK_THROWS_AS(decompose_I3(PauliString::parse("Z0 X2", 3), 0.1), CompilationError);
}

TEST_CASE("generic reduction covers other supports", "[compiler][gadget]") {
    std::mt19937_64 rng(4);
    for (const char *text : {"Z0 Z1 Z2", "Z0 Z2 Z3 X4", "X0 Y2", "Y0 Z1 X3", "X0 X1 X2 X3 X4"}) {
        auto t = PauliString::parse(text, 5);
        auto line = detail::identity_line(5);
        double th = random_angle(rng);
        auto seq = decompose_generic(t, th, line);
        INFO(text);
        CHECK(seq.is_local());
        CHECK(oracle::max_abs(dense_sequence(seq, 5) - dense_rotation(th, t)) < 1e-11);
    }
}

TEST_CASE("gadgets are local and their dressings cancel", "[compiler][gadget]") {
    std::vector<GadgetSequence> seqs{
        decompose_I1(PauliString::parse("Z0 Z1 Z2 Z3 X4", 5), 0.4),
        decompose_I2(PauliString::parse("Z0 X4", 5), 0.4),
        decompose_I3(PauliString::parse("Z0 Z4", 5), 0.4),
    };
    for (const auto &seq : seqs) {
        CHECK(seq.is_local());
        // The core sits in the middle of the sandwich.
        REQUIRE(seq.size() % 2 == 1);
        std::vector<PauliRotation> dressings = seq.rotations;
        dressings.erase(dressings.begin() + static_cast<long>(seq.size() / 2));
        Mat u = dense_sequence(dressings, 0, 5);
        CHECK(oracle::phase_distance(u, oracle::identity(5)) < 1e-12);
    }
}

TEST_CASE("local lowering of layout rotations", "[compiler]") {
    ChainLayout layout{3, 3};
    std::mt19937_64 rng(5);
    for (const char *text : {"Z0 Z2", "Z0 X2", "Z0 Z1 X2", "Z0 Z6", "Z0 X6", "Z1 Z7", "X3 X5"}) {
        auto t = PauliString::parse(text, 9);
        double th = random_angle(rng);
        auto seq = lower_rotation_local(PauliRotation(th, t), layout);
        INFO(text);
        CHECK(seq.is_local(layout));
        CHECK(verify_equivalence({PauliRotation(th, t)}, to_gates(seq), 9) < 1e-10);
    }
    CHECK_THROWS_AS(lower_rotation_local(PauliRotation(0.1, PauliString::parse("Z0 Z4", 9)), layout), CompilationError);
}

TEST_CASE("local CCNOT", "[compiler][ccnot]") {
    SECTION("single site equals the Toffoli gate") {
        ChainLayout layout{3, 1};
        auto seq = lower_ccnot_local(layout, 0, 1.0);
        CHECK(seq.is_local(layout));
        CHECK(oracle::phase_distance(dense_sequence(seq, 3), oracle::multi_controlled_x({0, 1}, 2, 3)) < 1e-10);
    }
    SECTION("zero scale is the identity") {
        ChainLayout layout{3, 1};
        CHECK(oracle::phase_distance(dense_sequence(lower_ccnot_local(layout, 0, 0.0), 3), oracle::identity(3)) < 1e-12);
    }
    SECTION("two sites compose to the transversal layer") {
        ChainLayout layout{3, 2};
        GadgetSequence seq = lower_ccnot_local(layout, 0, 1.0);
        seq.append(lower_ccnot_local(layout, 1, 1.0));
        Mat expected = oracle::multi_controlled_x({0, 2}, 4, 6) * oracle::multi_controlled_x({1, 3}, 5, 6);
        CHECK(oracle::phase_distance(dense_sequence(seq, 6), expected) < 1e-10);
    }
    SECTION("scaled gate matches the scaled layer") {
        ChainLayout layout{3, 1};
        Layer layer = build_transversal_ccnot_layer(layout, 0, 1, 2, {0.93});
        CHECK(oracle::phase_distance(dense_sequence(lower_ccnot_local(layout, 0, 0.93), 3),
                                     dense_sequence(layer.rotations, layer.identity_angle, 3)) < 1e-10);
    }
    SECTION("non-adjacent chains are rejected") {
        ChainLayout layout{3, 1};
        CHECK_THROWS_AS(lower_ccnot_local(layout, 0, 1.0, 0, 2, 1), CompilationError);
    }
}

TEST_CASE("iSWAP lowering", "[compiler][iswap]") {
    std::mt19937_64 rng(6);
    for (const char *text : {"Z0 X1", "Z0 Y1", "Z0 Z1", "X0 Z1", "Y0 Z1", "X0 X1", "X0 Y1", "Y0 Y1", "Y0 X1", "X0", "Y1", "Z0"}) {
        auto t = PauliString::parse(text, 2);
        for (int k = 0; k < 10; k++) {
            double th = random_angle(rng);
            auto c = lower_to_iswap(std::vector<PauliRotation>{PauliRotation(th, t)}, 2);
            INFO(text << " theta=" << th);
            CHECK(oracle::max_abs(dense_native(c) - dense_rotation(th, t)) < 1e-12);
            for (const auto &g : c.gates) {
                if (!g.is_two_qubit()) CHECK(g.q1 < 2);
            }
        }
    }
    auto zx = lower_to_iswap(std::vector<PauliRotation>{PauliRotation(0.4, PauliString::parse("Z0 X1", 2))}, 2);
    CHECK(zx.two_qubit_count() == 2);
    auto zero = lower_to_iswap(std::vector<PauliRotation>{PauliRotation(0.0, PauliString::parse("Z0 X1", 2))}, 2);
    CHECK(oracle::max_abs(dense_native(zero) - oracle::identity(2)) < 1e-15);

    ChainLayout layout{2, 2};
    CHECK_THROWS_AS(lower_to_iswap(std::vector<PauliRotation>{PauliRotation(0.1, PauliString::parse("Z0 Z3", 4))}, 4, layout),
                    CompilationError);
    CHECK_THROWS_AS(lower_to_iswap(std::vector<PauliRotation>{PauliRotation(0.1, PauliString::parse("Z0 Z1 Z2", 3))}, 3),
                    CompilationError);
}

TEST_CASE("U4 on two size-4 chains survives full native lowering", "[compiler][iswap]") {
    ChainLayout layout{2, 4};
    auto model = ModelSpec::parse("U4");
    auto params = ideal_params(model, layout, 1.5);
    params.field[2] *= 1.1;
    params.cnot[0].zx[1] *= 0.95;
    auto prog = build_model(model, layout, params);
    auto local = lower_program_local(prog);
    CHECK(local.is_local(layout));
    auto native = lower_to_iswap(local, 8, layout);

    std::mt19937_64 rng(9);
    StateVector ref(8), low(8);
    for (std::size_t q = 0; q < 8; q++) {
        auto r = PauliRotation(M_PI / 8, PauliString::single(8, q, Pauli::X));
        ref.apply(r);
        low.apply(r);
    }
    auto gates = to_gates(native);
    for (int t = 0; t < 10; t++) {
        apply_exact(ref, prog);
        for (const auto &g : gates) low.apply(g);
        CHECK(fidelity(ref, low) > 1 - 1e-9);
    }
}

TEST_CASE("native circuit text round-trips bit-exactly", "[compiler][io]") {
    ChainLayout layout{2, 3};
    auto model = ModelSpec::parse("U4");
    auto prog = build_model(model, layout, ideal_params(model, layout, 0.7123456789));
    auto c = lower_to_iswap(lower_program_local(prog), 6, layout);
    auto text = c.to_text();
    auto back = NativeCircuit::parse(text, 6);
    CHECK(back.gates == c.gates);
    CHECK(back.to_text() == text);
    CHECK_THROWS_AS(NativeCircuit::parse("RY q9 0.1\n", 6), DimensionError);
    CHECK_THROWS(NativeCircuit::parse("CZ q0 q1\n", 6));
}

TEST_CASE("equivalence checker", "[compiler]") {
    ChainLayout layout{2, 2};
    auto model = ModelSpec::parse("U4");
    auto prog = build_model(model, layout, ideal_params(model, layout, 1.0));
    auto gates = to_gates(prog);
    CHECK(verify_equivalence(gates, gates, 4) == 0.0);
    auto phased = gates;
    phased.push_back(PauliRotation(M_PI / 7, PauliString(4)));
    CHECK(verify_equivalence(gates, phased, 4) < 1e-12);
    auto different = gates;
    different.push_back(PauliRotation(0.1, PauliString::parse("X0", 4)));
    CHECK(verify_equivalence(gates, different, 4) > 0.05);

    std::vector<Gate> big{PauliRotation(0.1, PauliString::parse("X0", 10))};
    std::vector<Gate> big2{PauliRotation(0.1, PauliString::parse("X0", 10)), PauliRotation(0.3, PauliString(10))};
    CHECK(verify_equivalence(big, big2, 10) < 1e-12);
    std::vector<Gate> huge{PauliRotation(0.1, PauliString::parse("X0", 13))};
    CHECK_THROWS_AS(verify_equivalence(huge, huge, 13), CapacityError);
}
