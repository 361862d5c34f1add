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

#include <bit>
#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

#include "repdtc/pauli.hpp"
#include "repdtc/statevector.hpp"

namespace repdtc {

/// A gate list prepared for repeated application: every maximal run of
/// diagonal (Z-type) rotations is folded into one precomputed phase vector.
/// The result equals applying the original gates in order.
class CompiledCircuit {
   public:
    CompiledCircuit() = default;

    CompiledCircuit(const std::vector<Gate> &gates, std::size_t num_qubits) : num_qubits_(num_qubits) {
        const std::size_t dim = std::size_t{1} << num_qubits;
        std::vector<Amplitude> run;
        auto flush = [&] {
            if (!run.empty()) {
                ops_.emplace_back(Diagonal{std::move(run)});
                run.clear();
            }
        };
        for (const auto &g : gates) {
            const auto *rot = std::get_if<PauliRotation>(&g);
            if (rot && rot->pauli.is_diagonal()) {
                if (rot->pauli.num_qubits() != num_qubits) {
                    throw DimensionError("rotation size does not match the circuit");
                }
                if (run.empty()) {
                    run.assign(dim, Amplitude(1.0));
                }
                const std::uint64_t zmask = rot->pauli.z_mask();
                const Amplitude plus = std::polar(1.0, -rot->angle);
                const Amplitude minus = std::conj(plus);
                for (std::size_t i = 0; i < dim; i++) {
                    run[i] *= (std::popcount(i & zmask) & 1) ? minus : plus;
                }
                continue;
            }
            flush();
            ops_.emplace_back(g);
        }
        flush();
    }

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t num_ops() const { return ops_.size(); }

    void apply(StateVector &state) const {
        for (const auto &op : ops_) {
            if (const auto *d = std::get_if<Diagonal>(&op)) {
                state.apply_diagonal(d->phases);
            } else {
                state.apply(std::get<Gate>(op));
            }
        }
    }

   private:
    struct Diagonal {
        std::vector<Amplitude> phases;
    };
    std::size_t num_qubits_ = 0;
    std::vector<std::variant<Gate, Diagonal>> ops_;
};

}  // namespace repdtc
