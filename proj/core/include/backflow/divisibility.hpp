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
#include <utility>
#include <vector>

#include "backflow/dynamics.hpp"
#include "backflow/tolerances.hpp"

namespace backflow {

/// Step map V(t, s) = map_t o map_s^-1 between two times of a family.
struct IntermediateMap {
    double s = 0.0;
    double t = 0.0;
    QuantumChannel channel = QuantumChannel::identity(1);
    double inversion_condition_number = 0.0;
};

IntermediateMap intermediate_map(const DynamicalFamily& family, double s, double t,
                                 double cond_limit);

enum class StepStatus : std::uint8_t { ok, near_singular, singular };
enum class PositivityMethod : std::uint8_t { exact, sampled, skipped };

/// Classification of one scan step (s, t).
struct StepClassification {
    double s = 0.0;
    double t = 0.0;
    StepStatus status = StepStatus::ok;
    double min_choi_eig = 0.0;  // NaN when the step could not be classified
    bool cp = false;
    PositivityMethod positivity_method = PositivityMethod::skipped;
    bool positive = false;
    std::size_t rank_at_s = 0;
    double rhp_g = 0.0;             // (||Choi||_1 - 1) / (t - s); NaN when unavailable
    double condition_number = 0.0;  // NaN when unavailable
};

struct DivisibilityReport {
    TimeGrid grid{0.0, 1.0, 2};
    double cp_tol = 0.0;
    double cond_limit = 0.0;
    double rank_rel_tol = 0.0;
    std::vector<StepClassification> steps;
    std::vector<std::size_t> ranks;  // numerical rank at every grid point
    std::vector<std::pair<double, double>> non_cp_intervals;
    std::optional<std::pair<double, double>> divisibility_obstruction;
};

struct ScanOptions {
    Tolerances tol{};
    std::uint64_t seed = 0;   // stream for sampled positivity checks
    bool check_positivity = true;
    bool with_rank = true;    // rank profile + obstruction detection
    bool with_rhp = true;     // per-step instantaneous indicator g
    bool all_pairs = false;   // diagnostic mode: every (s_i, t_j), i < j
};

/// Classify consecutive-step intermediate maps over the grid, attach the rank
/// profile, collect maximal non-CP runs and flag a rank increase between
/// consecutive points as a divisibility obstruction. Per-step failures are
/// recorded in the report, never thrown.
DivisibilityReport scan_cp_divisibility(const DynamicalFamily& family, const TimeGrid& grid,
                                        const ScanOptions& options = {});

/// Instantaneous non-CP indicator g(t) = (||Choi(V(t+eps, t))||_1 - 1) / eps
/// on the normalized Choi matrix. Zero (within tolerance) iff the step is CP.
double rhp_indicator(const DynamicalFamily& family, double t, double eps,
                     double cond_limit = default_tolerances().cond_limit);

/// Hermitian, traceless, Frobenius-normalized basis of the superoperator
/// kernel at time s. Empty when the map is bijective.
std::vector<HermitianOperator> kernel_basis(const DynamicalFamily& family, double s, double tol);

}  // namespace backflow
