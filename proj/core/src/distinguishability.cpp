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

#include "backflow/distinguishability.hpp"

#include <algorithm>
#include <cmath>

#include "backflow/errors.hpp"

namespace backflow {

HermitianOperator HelstromSplit::helstrom_matrix() const {
    if (rho1.dim() != rho2.dim()) throw DimensionMismatch("HelstromSplit: dimension mismatch");
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("HelstromSplit: p must lie in (0, 1)");
    return rho1.hermitian().scaled(p) - rho2.hermitian().scaled(1.0 - p);
}

double trace_distance(const DensityOperator& rho1, const DensityOperator& rho2) {
    if (rho1.dim() != rho2.dim()) throw DimensionMismatch("trace_distance: dimension mismatch");
    return 0.5 * trace_norm(HermitianOperator::from_exact(rho1.matrix() - rho2.matrix()));
}

double helstrom_norm(const HelstromSplit& split) { return trace_norm(split.helstrom_matrix()); }

Trajectory trajectory(const DynamicalFamily& family, const DensityOperator& rho1,
                      const DensityOperator& rho2, const TimeGrid& grid,
                      std::size_t ancilla_dim) {
    if (rho1.dim() != rho2.dim()) throw DimensionMismatch("trajectory: dimension mismatch");
    const std::size_t expected =
        ancilla_dim == 0 ? family.dim() : ancilla_dim * family.dim();
    if (rho1.dim() != expected) {
        throw DimensionMismatch("trajectory: states have dimension " + std::to_string(rho1.dim()) +
                                ", expected " + std::to_string(expected));
    }
    const HermitianOperator delta = HermitianOperator::from_exact(rho1.matrix() - rho2.matrix());

    Trajectory out;
    out.grid = grid;
    out.values.reserve(grid.n_points());
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
        QuantumChannel ch = family.evaluate(grid.at(i));
        if (ancilla_dim != 0) ch = extend_with_identity(ch, ancilla_dim);
        out.values.push_back(trace_norm(ch.apply(delta)));
    }
    return out;
}

Trajectory flow_rate(const Trajectory& traj) {
    const std::size_t n = traj.values.size();
    if (n < 3) throw ConfigError("flow_rate: need at least three samples");
    const double h = traj.grid.step();
    Trajectory out;
    out.grid = traj.grid;
    out.values.resize(n);
    out.values.front() = (traj.values[1] - traj.values[0]) / h;
    out.values.back() = (traj.values[n - 1] - traj.values[n - 2]) / h;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out.values[i] = (traj.values[i + 1] - traj.values[i - 1]) / (2.0 * h);
    }
    return out;
}

double blp_integral(const Trajectory& traj) {
    const Trajectory rate = flow_rate(traj);
    const double h = traj.grid.step();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < rate.values.size(); ++i) {
        const double a = std::max(rate.values[i], 0.0);
        const double b = std::max(rate.values[i + 1], 0.0);
        acc += 0.5 * (a + b) * h;
    }
    return acc;
}

}  // namespace backflow
