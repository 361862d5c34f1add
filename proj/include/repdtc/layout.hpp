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

#include <cstddef>
#include <string>

#include "repdtc/errors.hpp"
#include "repdtc/statevector.hpp"

namespace repdtc {

/// n parallel open spin chains of N sites each. Chains and sites are 0-based;
/// qubit (chain s, site j) is s * N + j.
struct ChainLayout {
    std::size_t chains = 1;
    std::size_t sites = 2;

    std::size_t num_qubits() const { return chains * sites; }
    std::size_t qubit(std::size_t chain, std::size_t site) const { return chain * sites + site; }
    std::size_t chain_of(std::size_t q) const { return q / sites; }
    std::size_t site_of(std::size_t q) const { return q % sites; }

    /// Nearest neighbours: the same chain at adjacent sites, or the same site
    /// on adjacent chains.
    bool adjacent(std::size_t qa, std::size_t qb) const {
        std::size_t ca = chain_of(qa), cb = chain_of(qb), sa = site_of(qa), sb = site_of(qb);
        if (ca == cb) {
            return sa + 1 == sb || sb + 1 == sa;
        }
        return sa == sb && (ca + 1 == cb || cb + 1 == ca);
    }

    /// Models need `min_sites` = 2; single-site layouts are allowed for
    /// building and checking individual per-site gates.
    void validate(std::size_t min_sites = 1) const {
        if (chains < 1) {
            throw ConfigError("layout needs at least one chain");
        }
        if (sites < min_sites) {
            throw ConfigError("chains need at least " + std::to_string(min_sites) + " sites, got " +
                              std::to_string(sites));
        }
        if (num_qubits() > kMaxQubits) {
            throw CapacityError("layout " + std::to_string(chains) + "x" + std::to_string(sites) + " needs " +
                                std::to_string(num_qubits()) + " qubits; the engine supports " +
                                std::to_string(kMaxQubits));
        }
    }

    bool operator==(const ChainLayout &) const = default;
};

}  // namespace repdtc
