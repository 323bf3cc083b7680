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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "backflow/serialization.hpp"

namespace backflow {

struct PipelineFlags {
    bool scan = true;
    bool witness = true;
    bool separable = false;
    bool rhp = true;   // include the instantaneous non-CP indicator per step
    bool blp = false;  // witness-pair trajectory and backflow integral
    bool rank = true;  // rank profile and divisibility obstruction
    std::size_t random_trajectories = 0;  // system-only monotonicity probes
};

/// One batch scenario: model, grid, tolerances, pipeline stages, seed.
struct ScenarioConfig {
    std::string model_id;
    Json model_params = Json::object();
    TimeGrid grid{0.0, 1.0, 2};
    Tolerances tol{};
    PipelineFlags flags{};
    double witness_eta = 0.9;
    std::optional<double> witness_s;
    std::optional<double> witness_t;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
};

ScenarioConfig config_from_json(const Json& j);
Json to_json(const ScenarioConfig& config);

struct ModelParamSpec {
    std::string name;
    std::string description;
    double default_value = 0.0;
};

struct ModelInfo {
    std::string id;
    std::string description;
    std::vector<ModelParamSpec> params;
};

/// The model zoo visible to configurations and the CLI.
const std::vector<ModelInfo>& model_registry();

DynamicalFamily build_model(const std::string& id, const Json& params);

/// Witness pair, its certificate, and the optional separable variant.
struct WitnessRecord {
    WitnessPair pair;
    WitnessCertificate certificate;
    std::optional<WitnessPair> separable_pair;
    std::optional<WitnessCertificate> separable_certificate;
};

struct TrajectorySummary {
    std::size_t random_pairs = 0;
    bool all_monotone = true;
    double max_step_increase = 0.0;  // most positive per-step increment seen
    std::optional<Trajectory> witness_trajectory;
    std::optional<double> blp;
};

struct RunReport {
    std::string tool_version;
    Json config_echo;
    std::optional<DivisibilityReport> divisibility;
    std::vector<WitnessRecord> witnesses;
    std::vector<KernelWitnessPair> kernel_witnesses;
    std::optional<TrajectorySummary> trajectories;
    std::vector<std::string> warnings;
    bool backflow_detected = false;
    std::string verdict;
};

/// Execute the configured stages. Deterministic for a fixed config and seed.
RunReport run_pipeline(const ScenarioConfig& config);

Json to_json(const RunReport& report);

/// Write report.json plus CSV side files into config.output_dir.
void write_outputs(const RunReport& report, const ScenarioConfig& config);

/// 0 = completed, CP-divisible on the grid; 3 = completed, backflow witnessed.
int exit_code_for(const RunReport& report);

}  // namespace backflow
