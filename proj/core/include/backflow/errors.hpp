// Copyright 2026 The Backflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace backflow {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operand shapes are incompatible.
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

/// A matrix failed a structural validity check (hermiticity, trace, positivity).
struct InvalidOperator : Error {
    explicit InvalidOperator(const std::string& what) : Error(what) {}
};

/// A map is numerically non-bijective (smallest singular value at machine scale).
struct SingularMap : Error {
    explicit SingularMap(const std::string& what) : Error(what) {}
};

/// A map is invertible but its condition number exceeds the configured limit.
struct IllConditioned : Error {
    explicit IllConditioned(const std::string& what) : Error(what) {}
};

/// The generator integration failed (step rejection, non-finite rates, TP drift).
struct IntegrationFailure : Error {
    explicit IntegrationFailure(const std::string& what) : Error(what) {}
};

/// The witness mixing weight collapsed below the usable resolution.
struct DegenerateWeight : Error {
    explicit DegenerateWeight(const std::string& what) : Error(what) {}
};

/// Separability certification could not retain a usable mixing weight.
struct CertificationFailed : Error {
    explicit CertificationFailed(const std::string& what) : Error(what) {}
};

/// No kernel element gains trace norm at the later time; no divisibility obstruction.
struct NoObstruction : Error {
    explicit NoObstruction(const std::string& what) : Error(what) {}
};

/// Scenario configuration is malformed or inconsistent.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace backflow
