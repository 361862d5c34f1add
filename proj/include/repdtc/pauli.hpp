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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "repdtc/errors.hpp"

namespace repdtc {

/// Single-qubit Pauli letter. Bit 0 is the X component and bit 1 the Z
/// component, so Y = X|Z and the letter of a product is the XOR.
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline constexpr bool has_x(Pauli p) { return (static_cast<std::uint8_t>(p) & 1u) != 0; }
inline constexpr bool has_z(Pauli p) { return (static_cast<std::uint8_t>(p) & 2u) != 0; }

inline constexpr char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::X:
            return 'X';
        case Pauli::Y:
            return 'Y';
        case Pauli::Z:
            return 'Z';
        default:
            return 'I';
    }
}

namespace detail {

// Exponent k (phase i^k) picked up by the single-site product a*b.
inline constexpr std::uint8_t letter_product_phase(Pauli a, Pauli b) {
    if (a == Pauli::I || b == Pauli::I || a == b) {
        return 0;
    }
    // XY = iZ, YZ = iX, ZX = iY; the reversed orders give -i.
    auto cyc = [](Pauli p) -> int { return p == Pauli::X ? 0 : (p == Pauli::Y ? 1 : 2); };
    return ((cyc(b) - cyc(a) + 3) % 3 == 1) ? 1 : 3;
}

}  // namespace detail

/// A Pauli operator phase * P_0 (x) P_1 (x) ... with phase in {+1, +i, -1, -i}.
///
/// The phase is stored as an exponent of i so that products stay exact.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::size_t num_qubits) : letters_(num_qubits, Pauli::I) {}

    /// Sparse constructor: `{{0, Pauli::Z}, {1, Pauli::X}}`.
    PauliString(std::size_t num_qubits, std::initializer_list<std::pair<std::size_t, Pauli>> terms,
                std::uint8_t phase_exponent = 0)
        : phase_(phase_exponent & 3u), letters_(num_qubits, Pauli::I) {
        for (const auto &[q, p] : terms) {
            set(q, p);
        }
    }

    static PauliString single(std::size_t num_qubits, std::size_t q, Pauli p) {
        PauliString s(num_qubits);
        s.set(q, p);
        return s;
    }

    /// Parses the canonical text form, e.g. "+i Z0 Z1 X2" or "-Y3". An "I"
    /// token (or no letters at all) denotes the identity.
    static PauliString parse(std::string_view text, std::size_t num_qubits);

    std::size_t num_qubits() const { return letters_.size(); }
    std::uint8_t phase_exponent() const { return phase_; }
    std::complex<double> phase() const {
        constexpr std::complex<double> table[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return table[phase_];
    }
    bool is_hermitian() const { return (phase_ & 1u) == 0; }

    Pauli operator[](std::size_t q) const { return letters_[q]; }
    void set(std::size_t q, Pauli p) {
        if (q >= letters_.size()) {
            throw DimensionError("Pauli index " + std::to_string(q) + " out of range for " +
                                 std::to_string(letters_.size()) + " qubits");
        }
        letters_[q] = p;
    }
    void set_phase_exponent(std::uint8_t k) { phase_ = k & 3u; }

    std::size_t weight() const {
        std::size_t w = 0;
        for (auto p : letters_) {
            w += p != Pauli::I;
        }
        return w;
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> out;
        for (std::size_t q = 0; q < letters_.size(); q++) {
            if (letters_[q] != Pauli::I) {
                out.push_back(q);
            }
        }
        return out;
    }

    bool is_diagonal() const {
        for (auto p : letters_) {
            if (has_x(p)) {
                return false;
            }
        }
        return true;
    }

    /// Bit masks of the X and Z components (qubit q <-> bit q). Only valid for
    /// strings on at most 64 qubits.
    std::uint64_t x_mask() const {
        std::uint64_t m = 0;
        for (std::size_t q = 0; q < letters_.size(); q++) {
            m |= std::uint64_t{has_x(letters_[q])} << q;
        }
        return m;
    }
    std::uint64_t z_mask() const {
        std::uint64_t m = 0;
        for (std::size_t q = 0; q < letters_.size(); q++) {
            m |= std::uint64_t{has_z(letters_[q])} << q;
        }
        return m;
    }
    std::size_t y_count() const {
        std::size_t n = 0;
        for (auto p : letters_) {
            n += p == Pauli::Y;
        }
        return n;
    }

    PauliString without_phase() const {
        PauliString r = *this;
        r.phase_ = 0;
        return r;
    }
    PauliString operator-() const {
        PauliString r = *this;
        r.phase_ = (r.phase_ + 2) & 3u;
        return r;
    }

    bool operator==(const PauliString &other) const = default;

    /// Canonical text form: phase prefix ("+", "-", "+i", "-i") followed by
    /// letter-index tokens, e.g. "+i Z0 Z1 X2". The identity prints as "+ I".
    std::string str() const {
        static constexpr const char *prefixes[] = {"+", "+i", "-", "-i"};
        std::string out = prefixes[phase_];
        bool any = false;
        for (std::size_t q = 0; q < letters_.size(); q++) {
            if (letters_[q] != Pauli::I) {
                out += ' ';
                out += pauli_char(letters_[q]);
                out += std::to_string(q);
                any = true;
            }
        }
        if (!any) {
            out += " I";
        }
        return out;
    }

   private:
    std::uint8_t phase_ = 0;
    std::vector<Pauli> letters_;
};

inline std::ostream &operator<<(std::ostream &out, const PauliString &p) { return out << p.str(); }

inline PauliString PauliString::parse(std::string_view text, std::size_t num_qubits) {
    PauliString result(num_qubits);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) {
            pos++;
        }
    };
    auto fail = [&](const std::string &why) {
        throw std::invalid_argument("bad Pauli string '" + std::string(text) + "': " + why);
    };
    skip_ws();
    std::uint8_t phase = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        phase = text[pos] == '-' ? 2 : 0;
        pos++;
        if (pos < text.size() && text[pos] == 'i') {
            phase = (phase + 1) & 3u;
            pos++;
        }
    }
    for (;;) {
        skip_ws();
        if (pos >= text.size()) {
            break;
        }
        char c = text[pos++];
        Pauli p = Pauli::I;
        switch (c) {
            case 'I':
                p = Pauli::I;
                break;
            case 'X':
                p = Pauli::X;
                break;
            case 'Y':
                p = Pauli::Y;
                break;
            case 'Z':
                p = Pauli::Z;
                break;
            default:
                fail(std::string("unexpected character '") + c + "'");
        }
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            pos++;
        }
        if (start == pos) {
            if (p == Pauli::I) {
                continue;
            }
            fail("missing qubit index");
        }
        std::size_t q = std::stoul(std::string(text.substr(start, pos - start)));
        if (q >= num_qubits) {
            throw DimensionError("qubit " + std::to_string(q) + " out of range in '" + std::string(text) + "'");
        }
        if (result[q] != Pauli::I) {
            fail("qubit " + std::to_string(q) + " appears twice");
        }
        result.set(q, p);
    }
    result.set_phase_exponent(phase);
    return result;
}

inline void require_same_size(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError("Pauli strings on " + std::to_string(a.num_qubits()) + " and " +
                             std::to_string(b.num_qubits()) + " qubits");
    }
}

/// Exact operator product a*b including the accumulated phase.
inline PauliString multiply(const PauliString &a, const PauliString &b) {
    require_same_size(a, b);
    PauliString out(a.num_qubits());
    unsigned phase = a.phase_exponent() + b.phase_exponent();
    for (std::size_t q = 0; q < a.num_qubits(); q++) {
        phase += detail::letter_product_phase(a[q], b[q]);
        out.set(q, static_cast<Pauli>(static_cast<std::uint8_t>(a[q]) ^ static_cast<std::uint8_t>(b[q])));
    }
    out.set_phase_exponent(static_cast<std::uint8_t>(phase & 3u));
    return out;
}

inline PauliString operator*(const PauliString &a, const PauliString &b) { return multiply(a, b); }

/// True iff ab = -ba, i.e. the number of sites holding two different
/// non-identity letters is odd.
inline bool anticommutes(const PauliString &a, const PauliString &b) {
    require_same_size(a, b);
    bool odd = false;
    for (std::size_t q = 0; q < a.num_qubits(); q++) {
        odd ^= a[q] != Pauli::I && b[q] != Pauli::I && a[q] != b[q];
    }
    return odd;
}

inline bool commutes(const PauliString &a, const PauliString &b) { return !anticommutes(a, b); }

struct Conjugation {
    PauliString value;
    /// Set when generator and target commute, in which case value == target.
    bool trivial = false;
};

/// exp(+i s pi/4 G) T exp(-i s pi/4 G) for s = sign (+1 or -1).
///
/// For anticommuting G, T this is (i s) G T; commuting inputs come back unchanged
/// with the `trivial` flag set.
inline Conjugation clifford_conjugate(const PauliString &generator, int sign, const PauliString &target) {
    require_same_size(generator, target);
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("conjugation sign must be +1 or -1");
    }
    if (!anticommutes(generator, target)) {
        return {target, true};
    }
    PauliString is(generator.num_qubits());
    is.set_phase_exponent(sign > 0 ? 1 : 3);
    return {multiply(multiply(is, generator), target), false};
}

/// exp(-i angle P) with P a phase-free Pauli string.
struct PauliRotation {
    double angle = 0.0;
    PauliString pauli;

    PauliRotation() = default;

    /// Folds a -1 phase of `p` into the sign of the angle. Imaginary phases
    /// would make the generator anti-Hermitian and are rejected.
    PauliRotation(double theta, PauliString p) : angle(theta), pauli(std::move(p)) {
        if (!pauli.is_hermitian()) {
            throw std::invalid_argument("rotation generator " + pauli.str() + " is not Hermitian");
        }
        if (pauli.phase_exponent() == 2) {
            angle = -angle;
        }
        pauli.set_phase_exponent(0);
    }

    std::size_t num_qubits() const { return pauli.num_qubits(); }
    std::size_t weight() const { return pauli.weight(); }

    PauliRotation inverse() const { return PauliRotation(-angle, pauli); }

    bool operator==(const PauliRotation &) const = default;
};

inline std::ostream &operator<<(std::ostream &out, const PauliRotation &r) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "exp(-i*" << r.angle << "*[" << r.pauli.str() << "])";
    return out << ss.str();
}

}  // namespace repdtc
