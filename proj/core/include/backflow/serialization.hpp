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

#include <string>

#include <json.hpp>

#include "backflow/distinguishability.hpp"
#include "backflow/divisibility.hpp"
#include "backflow/dynamics.hpp"
#include "backflow/tolerances.hpp"
#include "backflow/witness.hpp"

namespace backflow {

using Json = nlohmann::json;

// Matrices serialize as {"rows", "cols", "entries": [[re, im], ...]} row-major.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// Channels serialize as {"dim", "superop": [[re, im], ...]} row-major; these
// field names are part of the CLI contract.
Json to_json(const QuantumChannel& c);
QuantumChannel channel_from_json(const Json& j);

Json to_json(const TimeGrid& grid);
TimeGrid grid_from_json(const Json& j);

Json to_json(const Tolerances& tol);
/// Partial override: fields present in j replace defaults in base.
Tolerances tolerances_from_json(const Json& j, const Tolerances& base = default_tolerances());

const char* to_string(StepStatus status);
const char* to_string(PositivityMethod method);
const char* to_string(CertificationMethod method);

Json to_json(const DivisibilityReport& report);
Json to_json(const WitnessPair& pair);
Json to_json(const WitnessCertificate& cert);
Json to_json(const KernelWitnessPair& pair);
Json to_json(const Trajectory& traj);

/// Evaluated (time -> channel) table of a family.
Json family_table_json(const DynamicalFamily& family);

/// Flat scan export: t, min_choi_eig, cp, rank, g.
std::string report_csv(const DivisibilityReport& report);
std::string trajectory_csv(const Trajectory& traj);

/// Parse with line/column diagnostics folded into the ConfigError message.
Json parse_json_text(const std::string& text, const std::string& origin);
Json load_json_file(const std::string& path);

}  // namespace backflow
