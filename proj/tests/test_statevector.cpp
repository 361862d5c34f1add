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
#include <sstream>

#include "catch_amalgamated.hpp"
#include "dense_oracle.hpp"
#include "repdtc/statevector.hpp"

using namespace repdtc;
using oracle::Mat;

namespace {

oracle::Mat random_unitary(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Mat m(dim, dim);
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            m(i, j) = oracle::cd(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<Mat> qr(m);
    return qr.householderQ();
}

std::string random_letters(std::size_t Q, std::mt19937_64 &rng) {
    std::string s;
    for (std::size_t q = 0; q < Q; q++) {
        s += "IXYZ"[rng() % 4];
    }
    return s;
}

PauliString from_letters(const std::string &s) {
    PauliString p(s.size());
    for (std::size_t q = 0; q < s.size(); q++) {
        p.set(q, s[q] == 'X' ? Pauli::X : s[q] == 'Y' ? Pauli::Y : s[q] == 'Z' ? Pauli::Z : Pauli::I);
    }
    return p;
}

Matrix2 to_m2(const Mat &m) {
    Matrix2 r;
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++) r[2 * i + j] = m(i, j);
    return r;
}

Matrix4 to_m4(const Mat &m) {
    Matrix4 r;
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++) r[4 * i + j] = m(i, j);
    return r;
}

}  // namespace

TEST_CASE("basis states follow the bit convention", "[statevector]") {
    auto s = StateVector::basis_state(2, 0);
    CHECK(s[0] == Amplitude(1));
    bool raw[2] = {true, false};
    auto t = StateVector::basis_state(std::span<const bool>(raw, 2));
    CHECK(t[1] == Amplitude(1));

    StateVector u(8);
    for (std::size_t q = 0; q < 8; q++) {
        u.apply(PauliRotation(M_PI / 2, PauliString::single(8, q, Pauli::X)));
    }
    CHECK(std::abs(u[255]) == Catch::Approx(1.0));
    CHECK_THROWS_AS(StateVector(25), CapacityError);
    CHECK_THROWS_AS(StateVector(0), DimensionError);
}

TEST_CASE("rotation examples", "[statevector]") {
    StateVector s(3);
    s.apply(PauliRotation(0.4, PauliString::parse("Y0 X2", 3)));
    auto before = std::vector<Amplitude>(s.amplitudes().begin(), s.amplitudes().end());
    s.apply(PauliRotation(0.0, PauliString::parse("X0 Y1 Z2", 3)));
    CHECK(std::equal(before.begin(), before.end(), s.amplitudes().begin()));

    StateVector one(1);
    one.apply(PauliRotation(M_PI / 2, PauliString::parse("X0", 1)));
    CHECK(std::abs(one[0]) < 1e-15);
    CHECK(std::abs(one[1] - Amplitude(0, -1)) < 1e-15);
    CHECK_THROWS_AS(one.apply(PauliRotation(0.1, PauliString::parse("X0", 2))), DimensionError);
}

TEST_CASE("every Pauli rotation on up to four qubits matches the dense exponential", "[statevector][property]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; trial++) {
        std::size_t Q = 1 + rng() % 4;
        std::string letters = random_letters(Q, rng);
        double theta = (uniform01(rng) - 0.5) * 8;
        Mat expected = oracle::rotation(theta, oracle::pauli_string(letters));
        Mat got = oracle::unitary_of(Q, [&](StateVector &s) { s.apply(PauliRotation(theta, from_letters(letters))); });
        INFO(letters << " theta=" << theta);
        CHECK(oracle::max_abs(got - expected) < 1e-12);
    }
}

TEST_CASE("random mixed circuits match a dense matrix chain", "[statevector][property]") {
    std::mt19937_64 rng(17);
    const std::size_t Q = 4;
    for (int trial = 0; trial < 20; trial++) {
        std::vector<Gate> gates;
        Mat expected = oracle::identity(Q);
        for (int k = 0; k < 20; k++) {
            switch (rng() % 4) {
                case 0: {
                    std::string letters = random_letters(Q, rng);
                    double theta = uniform01(rng) * 6;
                    gates.push_back(PauliRotation(theta, from_letters(letters)));
                    expected = oracle::rotation(theta, oracle::pauli_string(letters)) * expected;
                    break;
                }
                case 1: {
                    std::size_t q = rng() % Q;
                    Mat u = random_unitary(2, rng);
                    gates.push_back(SingleQubitUnitary{q, to_m2(u)});
                    expected = oracle::embed(u, {q}, Q) * expected;
                    break;
                }
                case 2: {
                    std::size_t a = rng() % Q, b = (a + 1 + rng() % (Q - 1)) % Q;
                    Mat u = random_unitary(4, rng);
                    gates.push_back(TwoQubitUnitary{a, b, to_m4(u)});
                    expected = oracle::embed(u, {a, b}, Q) * expected;
                    break;
                }
                default: {
                    std::size_t a = rng() % Q, b = (a + 1 + rng() % (Q - 1)) % Q;
                    bool inv = rng() % 2;
                    gates.push_back(ISwap{a, b, inv});
                    Mat u = oracle::iswap(inv ? -M_PI / 4 : M_PI / 4);
                    expected = oracle::embed(u, {a, b}, Q) * expected;
                    break;
                }
            }
        }
        Mat got = oracle::unitary_of(Q, [&](StateVector &s) {
            for (const auto &g : gates) s.apply(g);
        });
        CHECK(oracle::max_abs(got - expected) < 1e-12);
    }
}

TEST_CASE("iSWAP equals its explicit two-qubit matrix", "[statevector]") {
    for (bool inv : {false, true}) {
        ISwap g{0, 2, inv};
        Mat a = oracle::unitary_of(3, [&](StateVector &s) { s.apply(g); });
        Mat b = oracle::unitary_of(3, [&](StateVector &s) { s.apply(TwoQubitUnitary{0, 2, iswap_matrix(g)}); });
        CHECK(oracle::max_abs(a - b) < 1e-12);
    }
}

TEST_CASE("norm is preserved over long random programs", "[statevector][property]") {
    std::mt19937_64 rng(23);
    const std::size_t Q = 6;
    StateVector s(Q);
    for (int k = 0; k < 10000; k++) {
        if (rng() % 3 == 0) {
            std::size_t a = rng() % Q, b = (a + 1 + rng() % (Q - 1)) % Q;
            s.apply(ISwap{a, b, static_cast<bool>(rng() % 2), M_PI / 4 * (1 + 0.05 * (uniform01(rng) - 0.5))});
        } else {
            s.apply(PauliRotation(uniform01(rng) * 6, from_letters(random_letters(Q, rng))));
        }
    }
    CHECK(std::abs(s.norm() - 1) < 1e-10);
}

TEST_CASE("Z expectations", "[statevector]") {
    StateVector s(3);
    for (std::size_t q = 0; q < 3; q++) CHECK(s.expectation_z(q) == 1.0);
    for (std::size_t q = 0; q < 3; q++) s.apply(PauliRotation(M_PI / 2, PauliString::single(3, q, Pauli::X)));
    for (std::size_t q = 0; q < 3; q++) CHECK(s.expectation_z(q) == Catch::Approx(-1.0).margin(1e-15));

    StateVector r(1);
    r.apply(PauliRotation(M_PI / 8, PauliString::parse("X0", 1)));
    CHECK(r.expectation_z(0) == Catch::Approx(std::cos(M_PI / 4)).margin(1e-15));
    CHECK_THROWS_AS(r.expectation_z(1), DimensionError);

    StateVector m(4);
    m.apply(PauliRotation(0.3, PauliString::parse("X0 Y2", 4)));
    m.apply(PauliRotation(0.7, PauliString::parse("Y1", 4)));
    double mean = 0;
    for (auto z : m.expectations_z()) mean += z / 4;
    CHECK(m.mean_z() == Catch::Approx(mean).margin(1e-14));
}

TEST_CASE("shot sampling", "[statevector][statistics]") {
    StateVector zero(1);
    std::mt19937_64 rng(1);
    CHECK(sample_z(zero, 0, 480, rng) == 1.0);

    StateVector half(1);
    half.apply(PauliRotation(M_PI / 4, PauliString::parse("X0", 1)));
    const double sigma = 1.0 / std::sqrt(480.0);
    for (std::uint64_t seed = 0; seed < 50; seed++) {
        std::mt19937_64 r(seed);
        CHECK(std::abs(sample_z(half, 0, 480, r)) < 5 * sigma);
    }
    StateVector tilted(2);
    tilted.apply(PauliRotation(0.4, PauliString::parse("Y1", 2)));
    std::mt19937_64 r(99);
    CHECK(sample_z(tilted, 1, 100000, r) == Catch::Approx(tilted.expectation_z(1)).margin(0.02));
}

TEST_CASE("fidelity", "[statevector]") {
    StateVector a(2);
    a.apply(PauliRotation(0.3, PauliString::parse("X0 Y1", 2)));
    CHECK(fidelity(a, a) == Catch::Approx(1.0));
    CHECK(fidelity(StateVector::basis_state(1, 0), StateVector::basis_state(1, 1)) == 0.0);
    StateVector b = a;
    b.apply_global_phase(1.234);
    CHECK(fidelity(a, b) == Catch::Approx(1.0));
    CHECK_THROWS_AS(fidelity(a, StateVector(3)), DimensionError);
}

TEST_CASE("binary dump is little-endian amplitude pairs", "[statevector]") {
    StateVector s(2);
    std::ostringstream out;
    dump_binary(s, out);
    CHECK(out.str().size() == 4 * 2 * sizeof(double));
}
