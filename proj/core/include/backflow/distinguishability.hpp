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

#include <vector>

#include "backflow/dynamics.hpp"
#include "backflow/operator_core.hpp"

namespace backflow {

/// Two states with prior weights p and 1-p; the Helstrom matrix
/// p rho1 - (1-p) rho2 governs minimum-error discrimination.
struct HelstromSplit {
    DensityOperator rho1 = DensityOperator::maximally_mixed(1);
    DensityOperator rho2 = DensityOperator::maximally_mixed(1);
    double p = 0.5;

    HermitianOperator helstrom_matrix() const;
};

/// D(rho1, rho2) = ||rho1 - rho2||_1 / 2, in [0, 1].
double trace_distance(const DensityOperator& rho1, const DensityOperator& rho2);

/// ||p rho1 - (1-p) rho2||_1 >= |2p - 1|.
double helstrom_norm(const HelstromSplit& split);

/// Trace-norm trajectory of an evolved state difference.
struct Trajectory {
    TimeGrid grid{0.0, 1.0, 2};
    std::vector<double> values;
};

/// values[k] = ||(I_ancilla (x) map_{t_k})(rho1 - rho2)||_1. ancilla_dim = 0
/// evolves on the system alone; otherwise the initial states live on
/// C^(ancilla_dim) (x) C^d.
Trajectory trajectory(const DynamicalFamily& family, const DensityOperator& rho1,
                      const DensityOperator& rho2, const TimeGrid& grid,
                      std::size_t ancilla_dim = 0);

/// d/dt by central differences (one-sided at the endpoints).
Trajectory flow_rate(const Trajectory& traj);

/// Trapezoid integral of the positive part of the flow rate; zero for
/// monotone non-increasing trajectories.
double blp_integral(const Trajectory& traj);

}  // namespace backflow
