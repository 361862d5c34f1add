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

// Dense-matrix reference used by the tests. Everything here is built from
// explicit Kronecker products and textbook gate definitions, independent of
// the library's kernels; the library only appears as the black box whose
// columns are extracted by unitary_of().

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "repdtc/statevector.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(char c) {
    Mat m(2, 2);
    switch (c) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, cd(0, -1), cd(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw std::invalid_argument("bad Pauli letter");
    }
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// `letters[q]` acts on qubit q; qubit 0 is the least significant index bit,
/// so it is the rightmost Kronecker factor.
inline Mat pauli_string(const std::string &letters) {
    Mat m = Mat::Identity(1, 1);
    for (char c : letters) {
        m = kron(pauli(c), m);
    }
    return m;
}

/// Letters on a Q-qubit register from (qubit, letter) pairs.
inline std::string letters(std::size_t Q, std::initializer_list<std::pair<std::size_t, char>> terms) {
    std::string s(Q, 'I');
    for (auto [q, c] : terms) {
        s[q] = c;
    }
    return s;
}

inline Mat identity(std::size_t Q) { return Mat::Identity(1 << Q, 1 << Q); }

/// exp(-i theta P) for an involutory P.
inline Mat rotation(double theta, const Mat &P) {
    return std::cos(theta) * Mat::Identity(P.rows(), P.cols()) - cd(0, 1) * std::sin(theta) * P;
}

/// Lifts a 2^k x 2^k matrix whose local bit i belongs to qubits[i].
inline Mat embed(const Mat &local, const std::vector<std::size_t> &qubits, std::size_t Q) {
    const std::size_t dim = std::size_t{1} << Q;
    std::uint64_t mask = 0;
    for (auto q : qubits) {
        mask |= std::uint64_t{1} << q;
    }
    auto local_index = [&](std::size_t full) {
        std::size_t l = 0;
        for (std::size_t i = 0; i < qubits.size(); i++) {
            l |= ((full >> qubits[i]) & 1) << i;
        }
        return l;
    };
    Mat out = Mat::Zero(dim, dim);
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t c = 0; c < dim; c++) {
            if ((r & ~mask) == (c & ~mask)) {
                out(r, c) = local(local_index(r), local_index(c));
            }
        }
    }
    return out;
}

/// Permutation: flip `target` when every control bit is 1.
inline Mat multi_controlled_x(const std::vector<std::size_t> &controls, std::size_t target, std::size_t Q) {
    const std::size_t dim = std::size_t{1} << Q;
    Mat m = Mat::Zero(dim, dim);
    for (std::size_t c = 0; c < dim; c++) {
        bool fire = true;
        for (auto q : controls) {
            fire = fire && ((c >> q) & 1);
        }
        std::size_t r = fire ? c ^ (std::size_t{1} << target) : c;
        m(r, c) = 1;
    }
    return m;
}

/// iSWAP = exp(-i pi/4 (XX + YY)); XX and YY commute, so the exponential splits.
inline Mat iswap(double angle = M_PI / 4) { return rotation(angle, pauli_string("XX")) * rotation(angle, pauli_string("YY")); }

/// min over phi of max |A - e^{i phi} B|, with phi from the trace overlap.
inline double phase_distance(const Mat &a, const Mat &b) {
    cd overlap = (b.adjoint() * a).trace();
    cd phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cd(1);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

inline double max_abs(const Mat &a) { return a.cwiseAbs().maxCoeff(); }

/// Columns of the unitary implemented by `apply` on Q qubits.
inline Mat unitary_of(std::size_t Q, const std::function<void(repdtc::StateVector &)> &apply) {
    const std::size_t dim = std::size_t{1} << Q;
    Mat u(dim, dim);
    for (std::size_t c = 0; c < dim; c++) {
        auto s = repdtc::StateVector::basis_state(Q, c);
        apply(s);
        for (std::size_t r = 0; r < dim; r++) {
            u(r, c) = s[r];
        }
    }
    return u;
}

inline Vec to_vec(const repdtc::StateVector &s) {
    Vec v(s.dimension());
    for (std::size_t i = 0; i < s.dimension(); i++) {
        v(i) = s[i];
    }
    return v;
}

/// Basis index of a logical ket written chain-1-first, e.g. "010" on N sites.
inline std::size_t logical_ket(const std::string &labels, std::size_t sites) {
    std::size_t idx = 0;
    for (std::size_t s = 0; s < labels.size(); s++) {
        if (labels[s] == '1') {
            for (std::size_t j = 0; j < sites; j++) {
                idx |= std::size_t{1} << (s * sites + j);
            }
        }
    }
    return idx;
}

}  // namespace oracle
