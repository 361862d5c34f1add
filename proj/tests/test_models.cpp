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

#include <fstream>
#include <random>

#include "catch_amalgamated.hpp"
#include "dense_oracle.hpp"
#include "repdtc/models.hpp"

using namespace repdtc;
using oracle::cd;
using oracle::Mat;

namespace {

// exp(-i identity_angle) * prod(rotations), as a dense matrix.
Mat layer_unitary(const Layer &layer, std::size_t Q) {
    return oracle::unitary_of(Q, [&](StateVector &s) {
        for (const auto &r : layer.rotations) s.apply(r);
        s.apply_global_phase(layer.identity_angle);
    });
}

Mat program_unitary(const FloquetProgram &p) {
    return oracle::unitary_of(p.num_qubits(), [&](StateVector &s) { apply_exact(s, p); });
}

cd phase(double a) { return std::exp(cd(0, -a)); }

// Logical ket written chain-1-first.
StateVector ket(const std::string &labels, std::size_t sites) {
    return StateVector::basis_state(labels.size() * sites, oracle::logical_ket(labels, sites));
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("model names", "[models]") {
    CHECK(ModelSpec::parse("U4").period() == 4);
    CHECK(ModelSpec::parse("U3").period() == 3);
    CHECK(ModelSpec::parse("U8").period() == 8);
    CHECK(ModelSpec::parse("U2n(5)").period() == 32);
    CHECK(ModelSpec::parse("U2n(5)").required_chains() == 5);
    CHECK(ModelSpec::parse("U2n(3)").name() == "U2n(3)");
    CHECK(ModelSpec::parse("U4_long_range").name() == "U4_long_range");
    CHECK_THROWS_AS(ModelSpec::parse("U5"), ConfigError);
    CHECK_THROWS_AS(ModelSpec::parse("U2n(x)"), ConfigError);
}

TEST_CASE("stabilizer layer is exp(+iJ ZZ)", "[models]") {
    ChainLayout layout{1, 2};
    Layer l = build_h_rep_layer(layout, {{0.37}});
    Mat expected = oracle::rotation(-0.37, oracle::pauli_string("ZZ"));
    CHECK(oracle::max_abs(layer_unitary(l, 2) - expected) < 1e-14);

    ChainLayout two{2, 4};
    CHECK(build_h_rep_layer(two, {{1, 1, 1}, {1, 1, 1}}).rotations.size() == 6);
    CHECK_THROWS_AS(build_h_rep_layer(two, {{1, 1, 1}}), DimensionError);
    CHECK_THROWS_AS(build_h_rep_layer(two, {{1, 1}, {1, 1}}), DimensionError);
}

TEST_CASE("long-range layer weights all pairs by distance", "[models]") {
    ChainLayout layout{1, 4};
    std::vector<std::vector<std::vector<double>>> J{{{}, {1.0}, {2.0, 1.0}, {3.0, 1.0, 1.0}}};
    Layer l = build_long_range_layer(layout, J, 1.5);
    REQUIRE(l.rotations.size() == 6);
    bool found = false;
    for (const auto &r : l.rotations) {
        if (r.pauli == PauliString::parse("Z0 Z3", 4)) {
            CHECK(r.angle == Catch::Approx(3.0 / std::pow(3.0, 1.5)));
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("single-site CNOT layer is CNOT up to its reference phase", "[models]") {
    ChainLayout layout{2, 1};
    Layer l = build_transversal_cnot_layer(layout, 0, 1, CnotAngles::ideal(1));
    Mat expected = phase(l.reference_phase) * oracle::multi_controlled_x({0}, 1, 2);
    CHECK(oracle::max_abs(layer_unitary(l, 2) - expected) < 1e-14);

    Layer back = build_transversal_cnot_layer(layout, 1, 0, CnotAngles::ideal(1));
    CHECK(oracle::max_abs(layer_unitary(back, 2) - phase(back.reference_phase) * oracle::multi_controlled_x({1}, 0, 2)) <
          1e-14);
}

TEST_CASE("transversal CNOT acts site by site", "[models]") {
    ChainLayout layout{2, 3};
    Layer l = build_transversal_cnot_layer(layout, 0, 1, CnotAngles::ideal(3));
    Mat expected = phase(l.reference_phase) * oracle::identity(6);
    for (std::size_t j = 0; j < 3; j++) {
        expected = oracle::multi_controlled_x({j}, 3 + j, 6) * expected;
    }
    CHECK(oracle::max_abs(layer_unitary(l, 6) - expected) < 1e-13);
}

TEST_CASE("multi-controlled layers match dense Toffoli gates", "[models]") {
    SECTION("CCNOT") {
        ChainLayout layout{3, 1};
        Layer l = build_transversal_ccnot_layer(layout, 0, 1, 2, {1.0});
        CHECK(l.rotations.size() == 7);
        CHECK(l.reference_phase == 0.0);
        CHECK(oracle::max_abs(layer_unitary(l, 3) - oracle::multi_controlled_x({0, 1}, 2, 3)) < 1e-14);
    }
    SECTION("CCNOT with another target") {
        ChainLayout layout{3, 1};
        Layer l = build_transversal_ccnot_layer(layout, 2, 0, 1, {1.0});
        CHECK(oracle::max_abs(layer_unitary(l, 3) - oracle::multi_controlled_x({2, 0}, 1, 3)) < 1e-14);
    }
    SECTION("C3NOT") {
        ChainLayout layout{4, 1};
        Layer l = build_generalized_cnot_layer(layout, 3, {1.0});
        CHECK(l.rotations.size() == 15);
        CHECK(oracle::max_abs(layer_unitary(l, 4) - oracle::multi_controlled_x({0, 1, 2}, 3, 4)) < 1e-13);
    }
    SECTION("reductions to CNOT and CCNOT") {
        ChainLayout two{2, 1};
        CHECK(oracle::max_abs(layer_unitary(build_generalized_cnot_layer(two, 1, {1.0}), 2) -
                              oracle::multi_controlled_x({0}, 1, 2)) < 1e-14);
        ChainLayout three{3, 1};
        CHECK(oracle::max_abs(layer_unitary(build_generalized_cnot_layer(three, 2, {1.0}), 3) -
                              layer_unitary(build_transversal_ccnot_layer(three, 0, 1, 2, {1.0}), 3)) < 1e-14);
    }
    SECTION("two sites") {
        ChainLayout layout{3, 2};
        Layer l = build_transversal_ccnot_layer(layout, 0, 1, 2, {1.0, 1.0});
        Mat expected = oracle::multi_controlled_x({0, 2}, 4, 6) * oracle::multi_controlled_x({1, 3}, 5, 6);
        CHECK(oracle::max_abs(layer_unitary(l, 6) - expected) < 1e-13);
    }
}

TEST_CASE("invalid chain choices are rejected", "[models]") {
    ChainLayout layout{3, 2};
    CHECK_THROWS_AS(build_transversal_cnot_layer(layout, 1, 1, CnotAngles::ideal(2)), ConfigError);
    CHECK_THROWS_AS(build_transversal_ccnot_layer(layout, 0, 0, 2, {1, 1}), ConfigError);
    CHECK_THROWS_AS(build_transversal_ccnot_layer(layout, 0, 1, 0, {1, 1}), ConfigError);
    CHECK_THROWS_AS(build_transversal_cnot_layer(layout, 0, 3, CnotAngles::ideal(2)), ConfigError);
    CHECK_THROWS_AS(build_generalized_cnot_layer(layout, 3, {1, 1}), ConfigError);
    CHECK_THROWS_AS(build_logical_x_layer(layout, {1.0}, 0), DimensionError);
    ChainLayout wrong{3, 2};
    CHECK_THROWS_AS(build_model(ModelSpec::parse("U4"), wrong, ideal_params(ModelSpec::parse("U4"), wrong)),
                    ConfigError);
    ChainLayout one{2, 1};
    CHECK_THROWS_AS(build_model(ModelSpec::parse("U4"), one, ideal_params(ModelSpec::parse("U4"), one)), ConfigError);
}

TEST_CASE("ideal U4 cycles through four logical states", "[models][logical]") {
    for (std::size_t N : {2, 3, 4}) {
        ChainLayout layout{2, N};
        auto model = ModelSpec::parse("U4");
        auto prog = build_model(model, layout, ideal_params(model, layout));
        StateVector s = ket("00", N);
        for (const char *expected : {"11", "01", "10", "00"}) {
            apply_exact(s, prog);
            s.apply_global_phase(-prog.reference_phase());
            INFO("N=" << N << " expected " << expected);
            CHECK(std::abs(inner_product(ket(expected, N), s) - cd(1)) < 1e-12);
        }
    }
}

TEST_CASE("ideal U3 has period three", "[models][logical]") {
    const std::size_t N = 2;
    ChainLayout layout{3, N};
    auto model = ModelSpec::parse("U3");
    auto prog = build_model(model, layout, ideal_params(model, layout));
    StateVector s = ket("000", N);
    for (const char *expected : {"010", "100", "000"}) {
        apply_exact(s, prog);
        s.apply_global_phase(-prog.reference_phase());
        INFO("expected " << expected);
        CHECK(std::abs(inner_product(ket(expected, N), s) - cd(1)) < 1e-12);
    }
}

TEST_CASE("ideal U8 and U2n decrement the logical register", "[models][logical]") {
    for (const char *name : {"U8", "U2n(2)", "U2n(3)", "U2n(4)"}) {
        auto model = ModelSpec::parse(name);
        const std::size_t n = model.required_chains();
        const std::size_t N = 2;
        ChainLayout layout{n, N};
        auto prog = build_model(model, layout, ideal_params(model, layout));
        const std::size_t L = std::size_t{1} << n;
        for (std::size_t j = 0; j < L; j++) {
            std::uint64_t in = 0, out = 0;
            std::size_t next = (j + L - 1) % L;
            for (std::size_t c = 0; c < n; c++) {
                for (std::size_t k = 0; k < N; k++) {
                    in |= std::uint64_t((j >> c) & 1) << layout.qubit(c, k);
                    out |= std::uint64_t((next >> c) & 1) << layout.qubit(c, k);
                }
            }
            StateVector s = StateVector::basis_state(layout.num_qubits(), in);
            apply_exact(s, prog);
            s.apply_global_phase(-prog.reference_phase());
            INFO(name << " j=" << j);
            CHECK(std::abs(s[out] - cd(1)) < 1e-12);
        }
    }
}

TEST_CASE("U2n(2) is U4", "[models]") {
    ChainLayout layout{2, 3};
    std::mt19937_64 rng(8);
    auto u4 = ModelSpec::parse("U4");
    auto u2 = ModelSpec::parse("U2n(2)");
    auto p = ideal_params(u4, layout);
    for (auto &chain : p.coupling)
        for (auto &j : chain) j = 1 + uniform01(rng);
    p.field[1] *= 0.9;
    p.cnot[0].zx[2] *= 1.05;
    Mat a = program_unitary(build_model(u4, layout, p));
    Mat b = program_unitary(build_model(u2, layout, p));
    CHECK(oracle::max_abs(a - b) < 1e-13);
}

TEST_CASE("two-period model flips a single chain", "[models]") {
    auto model = ModelSpec::parse("TwoT");
    ChainLayout layout{1, 3};
    auto prog = build_model(model, layout, ideal_params(model, layout, 1.0));
    StateVector s(3);
    apply_exact(s, prog);
    CHECK(std::abs(s[7]) == Catch::Approx(1.0));
    apply_exact(s, prog);
    CHECK(std::abs(s[0]) == Catch::Approx(1.0));
}

TEST_CASE("program JSON matches the golden file", "[models][golden]") {
    auto model = ModelSpec::parse("U4");
    ChainLayout layout{2, 2};
    auto prog = build_model(model, layout, ideal_params(model, layout, 1.5));
    auto golden = nlohmann::json::parse(read_file(std::string(REPDTC_TEST_DATA) + "/u4_2x2.json"));
    auto got = to_json(prog);
    REQUIRE(got["layers"].size() == golden["layers"].size());
    for (std::size_t l = 0; l < golden["layers"].size(); l++) {
        const auto &gl = golden["layers"][l];
        const auto &ol = got["layers"][l];
        CHECK(ol["label"] == gl["label"]);
        CHECK(ol["identity_angle"].get<double>() == Catch::Approx(gl["identity_angle"].get<double>()).margin(1e-15));
        CHECK(ol["reference_phase"].get<double>() == Catch::Approx(gl["reference_phase"].get<double>()).margin(1e-15));
        REQUIRE(ol["rotations"].size() == gl["rotations"].size());
        for (std::size_t r = 0; r < gl["rotations"].size(); r++) {
            CHECK(ol["rotations"][r]["pauli"] == gl["rotations"][r]["pauli"]);
            CHECK(ol["rotations"][r]["angle"].get<double>() ==
                  Catch::Approx(gl["rotations"][r]["angle"].get<double>()).margin(1e-15));
        }
    }
}
