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

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "repdtc/errors.hpp"
#include "repdtc/pauli.hpp"

namespace repdtc {

using Amplitude = std::complex<double>;

/// Largest register the engine will allocate (2^24 amplitudes, 256 MiB).
inline constexpr std::size_t kMaxQubits = 24;

/// Row-major 2x2 matrix.
using Matrix2 = std::array<Amplitude, 4>;
/// Row-major 4x4 matrix over the basis index b(q1) + 2*b(q2).
using Matrix4 = std::array<Amplitude, 16>;

struct SingleQubitUnitary {
    std::size_t qubit = 0;
    Matrix2 matrix{};
};

struct TwoQubitUnitary {
    std::size_t q1 = 0;
    std::size_t q2 = 0;
    Matrix4 matrix{};
};

/// exp(-i a (X1 X2 + Y1 Y2)) with a = pi/4 for the native iSWAP and a = -pi/4
/// for its inverse. `angle` carries the nominal magnitude so that miscalibrated
/// gates can be represented.
struct ISwap {
    std::size_t q1 = 0;
    std::size_t q2 = 1;
    bool inverse = false;
    double angle = std::numbers::pi / 4;

    double signed_angle() const { return inverse ? -angle : angle; }
};

using Gate = std::variant<PauliRotation, SingleQubitUnitary, TwoQubitUnitary, ISwap>;

/// 4x4 matrix of an ISwap gate in the TwoQubitUnitary basis convention.
inline Matrix4 iswap_matrix(const ISwap &g) {
    double a = 2 * g.signed_angle();
    Matrix4 m{};
    m[0] = 1;
    m[15] = 1;
    m[5] = std::cos(a);
    m[10] = std::cos(a);
    m[6] = Amplitude(0, -std::sin(a));
    m[9] = Amplitude(0, -std::sin(a));
    return m;
}

/// Dense 2^Q amplitude register. Bit q of an amplitude index is qubit q, and a
/// 0 bit is the +1 eigenstate of Z.
class StateVector {
   public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(std::size_t num_qubits) : num_qubits_(checked_size(num_qubits)) {
        amplitudes_.assign(std::size_t{1} << num_qubits_, Amplitude{});
        amplitudes_[0] = 1;
    }

    static StateVector basis_state(std::size_t num_qubits, std::uint64_t bits) {
        StateVector s(num_qubits);
        if (num_qubits < 64 && (bits >> num_qubits) != 0) {
            throw DimensionError("basis pattern has bits beyond qubit " + std::to_string(num_qubits - 1));
        }
        s.amplitudes_[0] = 0;
        s.amplitudes_[bits] = 1;
        return s;
    }

    static StateVector basis_state(std::span<const bool> bits) {
        std::uint64_t index = 0;
        for (std::size_t q = 0; q < bits.size(); q++) {
            index |= std::uint64_t{bits[q]} << q;
        }
        return basis_state(bits.size(), index);
    }

    /// Takes ownership of raw amplitudes; the length must be a power of two.
    static StateVector from_amplitudes(std::vector<Amplitude> amps) {
        if (amps.empty() || !std::has_single_bit(amps.size())) {
            throw DimensionError("amplitude count " + std::to_string(amps.size()) + " is not a power of two");
        }
        StateVector s(static_cast<std::size_t>(std::countr_zero(amps.size())));
        s.amplitudes_ = std::move(amps);
        return s;
    }

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    std::span<Amplitude> amplitudes() { return amplitudes_; }
    Amplitude operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm() const {
        double s = 0;
        for (const auto &a : amplitudes_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    /// Multiplies every amplitude by exp(-i angle).
    void apply_global_phase(double angle) {
        if (angle == 0) {
            return;
        }
        Amplitude f = std::polar(1.0, -angle);
        for (auto &a : amplitudes_) {
            a *= f;
        }
    }

    /// exp(-i theta P) applied via cos(theta) I - i sin(theta) P, one pass over
    /// amplitude pairs.
    void apply(const PauliRotation &r) {
        if (r.pauli.num_qubits() != num_qubits_) {
            throw DimensionError("rotation on " + std::to_string(r.pauli.num_qubits()) + " qubits applied to " +
                                 std::to_string(num_qubits_) + "-qubit state");
        }
        if (r.angle == 0) {
            return;
        }
        const std::uint64_t xm = r.pauli.x_mask();
        const std::uint64_t zm = r.pauli.z_mask();
        const double c = std::cos(r.angle);
        const double s = std::sin(r.angle);
        const std::size_t dim = amplitudes_.size();
        Amplitude *a = amplitudes_.data();

        if (xm == 0) {
            const Amplitude even(c, -s);
            const Amplitude odd(c, s);
            for (std::size_t i = 0; i < dim; i++) {
                a[i] *= (std::popcount(i & zm) & 1) ? odd : even;
            }
            return;
        }

        // k = -i * i^{ny} * sin(theta)
        static constexpr Amplitude ipow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const Amplitude k = Amplitude(0, -s) * ipow[r.pauli.y_count() & 3];
        const std::size_t high = std::bit_width(xm) - 1;
        const std::size_t low_mask = (std::size_t{1} << high) - 1;
        for (std::size_t i = 0; i < dim / 2; i++) {
            std::size_t lo = ((i & ~low_mask) << 1) | (i & low_mask);
            std::size_t hi = lo ^ xm;
            double sign_lo = (std::popcount(lo & zm) & 1) ? -1.0 : 1.0;
            double sign_hi = (std::popcount(hi & zm) & 1) ? -1.0 : 1.0;
            Amplitude a_lo = a[lo];
            Amplitude a_hi = a[hi];
            a[lo] = c * a_lo + k * (sign_hi * a_hi);
            a[hi] = c * a_hi + k * (sign_lo * a_lo);
        }
    }

    void apply(const SingleQubitUnitary &g) {
        check_qubit(g.qubit);
        const std::size_t bit = std::size_t{1} << g.qubit;
        const auto &m = g.matrix;
        for (std::size_t i = 0; i < amplitudes_.size(); i++) {
            if (i & bit) {
                continue;
            }
            Amplitude a0 = amplitudes_[i];
            Amplitude a1 = amplitudes_[i | bit];
            amplitudes_[i] = m[0] * a0 + m[1] * a1;
            amplitudes_[i | bit] = m[2] * a0 + m[3] * a1;
        }
    }

    void apply(const TwoQubitUnitary &g) {
        check_pair(g.q1, g.q2);
        const std::size_t b1 = std::size_t{1} << g.q1;
        const std::size_t b2 = std::size_t{1} << g.q2;
        const auto &m = g.matrix;
        for (std::size_t i = 0; i < amplitudes_.size(); i++) {
            if (i & (b1 | b2)) {
                continue;
            }
            const std::size_t idx[4] = {i, i | b1, i | b2, i | b1 | b2};
            Amplitude in[4];
            for (int r = 0; r < 4; r++) {
                in[r] = amplitudes_[idx[r]];
            }
            for (int r = 0; r < 4; r++) {
                amplitudes_[idx[r]] = m[4 * r] * in[0] + m[4 * r + 1] * in[1] + m[4 * r + 2] * in[2] + m[4 * r + 3] * in[3];
            }
        }
    }

    /// Only the {|01>, |10>} block of an XY rotation is nontrivial.
    void apply(const ISwap &g) {
        check_pair(g.q1, g.q2);
        const std::size_t b1 = std::size_t{1} << g.q1;
        const std::size_t b2 = std::size_t{1} << g.q2;
        const double a = 2 * g.signed_angle();
        const double c = std::cos(a);
        const Amplitude k(0, -std::sin(a));
        for (std::size_t i = 0; i < amplitudes_.size(); i++) {
            if (i & (b1 | b2)) {
                continue;
            }
            Amplitude x = amplitudes_[i | b1];
            Amplitude y = amplitudes_[i | b2];
            amplitudes_[i | b1] = c * x + k * y;
            amplitudes_[i | b2] = k * x + c * y;
        }
    }

    void apply(const Gate &g) {
        std::visit([this](const auto &concrete) { apply(concrete); }, g);
    }

    /// Multiplies amplitude i by phases[i].
    void apply_diagonal(std::span<const Amplitude> phases) {
        if (phases.size() != amplitudes_.size()) {
            throw DimensionError("diagonal of size " + std::to_string(phases.size()) + " on a " +
                                 std::to_string(amplitudes_.size()) + "-dimensional state");
        }
        for (std::size_t i = 0; i < amplitudes_.size(); i++) {
            amplitudes_[i] *= phases[i];
        }
    }

    /// (1/Q) sum_q <Z_q>.
    double mean_z() const {
        double s = 0;
        for (std::size_t i = 0; i < amplitudes_.size(); i++) {
            s += std::norm(amplitudes_[i]) * static_cast<double>(static_cast<int>(num_qubits_) - 2 * std::popcount(i));
        }
        return s / static_cast<double>(num_qubits_);
    }

    /// <Z_q> = P(bit q = 0) - P(bit q = 1).
    double expectation_z(std::size_t q) const {
        check_qubit(q);
        const std::size_t bit = std::size_t{1} << q;
        double s = 0;
        for (std::size_t i = 0; i < amplitudes_.size(); i++) {
            double p = std::norm(amplitudes_[i]);
            s += (i & bit) ? -p : p;
        }
        return s;
    }

    /// <Z_q> for every qubit, in one pass.
    std::vector<double> expectations_z() const {
        std::vector<double> out(num_qubits_, 0.0);
        for (std::size_t i = 0; i < amplitudes_.size(); i++) {
            double p = std::norm(amplitudes_[i]);
            for (std::size_t q = 0; q < num_qubits_; q++) {
                out[q] += ((i >> q) & 1) ? -p : p;
            }
        }
        return out;
    }

    /// Probability that measuring qubit q in the Z basis yields 0.
    double probability_zero(std::size_t q) const {
        check_qubit(q);
        const std::size_t bit = std::size_t{1} << q;
        double p0 = 0;
        for (std::size_t i = 0; i < amplitudes_.size(); i++) {
            if (!(i & bit)) {
                p0 += std::norm(amplitudes_[i]);
            }
        }
        return p0;
    }

   private:
    static std::size_t checked_size(std::size_t n) {
        if (n == 0) {
            throw DimensionError("a state needs at least one qubit");
        }
        if (n > kMaxQubits) {
            throw CapacityError(std::to_string(n) + " qubits exceeds the engine limit of " +
                                std::to_string(kMaxQubits));
        }
        return n;
    }

    void check_qubit(std::size_t q) const {
        if (q >= num_qubits_) {
            throw DimensionError("qubit " + std::to_string(q) + " out of range for " + std::to_string(num_qubits_) +
                                 "-qubit state");
        }
    }

    void check_pair(std::size_t q1, std::size_t q2) const {
        check_qubit(q1);
        check_qubit(q2);
        if (q1 == q2) {
            throw DimensionError("two-qubit gate needs distinct qubits, got " + std::to_string(q1) + " twice");
        }
    }

    std::size_t num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

/// <a|b>.
inline Amplitude inner_product(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError("inner product of " + std::to_string(a.num_qubits()) + "- and " +
                             std::to_string(b.num_qubits()) + "-qubit states");
    }
    Amplitude s{};
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); i++) {
        s += std::conj(x[i]) * y[i];
    }
    return s;
}

/// |<a|b>|^2, blind to global phase.
inline double fidelity(const StateVector &a, const StateVector &b) { return std::norm(inner_product(a, b)); }

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Empirical <Z_q> from `shots` independent Z-basis measurements of qubit q.
/// The state is not collapsed.
inline double sample_z(const StateVector &state, std::size_t q, std::size_t shots, std::mt19937_64 &rng) {
    if (shots == 0) {
        throw std::invalid_argument("sample_z needs at least one shot");
    }
    const double p0 = state.probability_zero(q);
    long long balance = 0;
    for (std::size_t k = 0; k < shots; k++) {
        balance += uniform01(rng) < p0 ? 1 : -1;
    }
    return static_cast<double>(balance) / static_cast<double>(shots);
}

/// Raw little-endian (re, im) doubles in index order. Debug aid only.
inline void dump_binary(const StateVector &state, std::ostream &out) {
    static_assert(std::endian::native == std::endian::little, "dump_binary assumes a little-endian host");
    for (const auto &a : state.amplitudes()) {
        double pair[2] = {a.real(), a.imag()};
        out.write(reinterpret_cast<const char *>(pair), sizeof(pair));
    }
}

}  // namespace repdtc
