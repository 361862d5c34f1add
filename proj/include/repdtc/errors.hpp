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

#include <stdexcept>
#include <string>

namespace repdtc {

/// Operand shapes disagree (qubit counts, parameter array lengths, indices).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds what the engine is willing to allocate.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

/// Model/layout/experiment configuration is inconsistent.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A rotation cannot be lowered to the requested gate family.
struct CompilationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace repdtc
