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

#include <cstddef>

namespace backflow {

/// Central numerical-tolerance record. Every threshold used by the library
/// lives here so a scenario can override them in one place and every verdict
/// can be reported next to the tolerance that produced it.
struct Tolerances {
    // Structural invariants of operators.
    double hermiticity = 1e-12;         // max-abs deviation from the adjoint
    double hermitize_accept = 1e-9;     // symmetrize at construction when within this
    double trace_accept = 1e-6;         // renormalize unit trace when within this
    double density_psd = 1e-10;         // min eigenvalue >= -density_psd for states

    // Spectral kernels.
    double eig_residual = 1e-10;        // ||Hv - lambda v|| <= eig_residual * ||H||

    // Channel predicates.
    double cp = 1e-9;                   // min Choi eigenvalue >= -cp  => CP
    double tp = 1e-9;                   // Choi partial trace vs I/d, max-abs
    double positivity_sample = 1e-10;   // min output eigenvalue in sampled P-check
    std::size_t positivity_samples = 2000;

    // Inversion and rank.
    double cond_limit = 1e8;            // sigma_max/sigma_min above => IllConditioned
    double singular_rel = 1e-14;        // sigma_min/sigma_max below => SingularMap
    double rank_rel = 1e-8;             // singular values > rank_rel * sigma_max count

    // Dynamics.
    double family_tp = 1e-8;            // TP drift allowed on evaluated channels
    double integrator_tp_drift = 1e-6;  // integration aborts beyond this drift

    // Witness construction.
    double weight_resolution = 1e-6;    // bisection resolution for mixing weights
    double degenerate_weight = 1e-6;    // p below this => DegenerateWeight
    double kernel_image_norm = 1e-8;    // ||map(K)||_1 <= this counts as annihilated
    double separability_psd = 1e-12;    // PPT certification min-eigenvalue slack

    // Verdict thresholds for pipelines.
    double backflow_gain = 1e-6;        // certificate gain above this counts as backflow
};

/// Library-wide defaults (the values quoted above).
const Tolerances& default_tolerances();

}  // namespace backflow
