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

#include "backflow/divisibility.hpp"
#include "backflow/dynamics.hpp"
#include "backflow/operator_core.hpp"

namespace backflow {

/// The two orthogonal reference states on the ancilla (x) system space
/// C^(ancilla_dim) (x) C^d: the normalized maximally entangled state between
/// the d-dimensional ancilla block and the system, and the flag state
/// |ancilla_dim-1><ancilla_dim-1| (x) I/d living on the orthogonal ancilla ray.
struct ReferenceStates {
    std::size_t d = 0;
    std::size_t ancilla_dim = 0;
    DensityOperator phi_plus = DensityOperator::maximally_mixed(1);
    DensityOperator flag_state = DensityOperator::maximally_mixed(1);
};

/// ancilla_dim defaults to d + 1, the smallest ancilla the construction needs;
/// larger ancillas embed the same states.
ReferenceStates reference_states(std::size_t d, std::size_t ancilla_dim = 0);

/// Largest p in [0, 1] (bisection to resolution) such that
/// (1-p) anchor + p x is positive semidefinite. The anchor must be strictly
/// positive definite, which guarantees p > 0.
double max_mixing_weight(const HermitianOperator& x, const DensityOperator& anchor,
                         double resolution = default_tolerances().weight_resolution);

enum class CertificationMethod : std::uint8_t { none, ppt_exact, frobenius_ball };

/// A constructed pair of initial states on the ancilla (x) system space whose
/// trace-distance gain between two times witnesses a non-CP step.
struct WitnessPair {
    double s = 0.0;
    double p = 0.0;
    std::size_t system_dim = 0;
    std::size_t ancilla_dim = 0;
    DensityOperator sigma = DensityOperator::maximally_mixed(1);  // anchor image at time s
    DensityOperator rho1_initial = DensityOperator::maximally_mixed(1);
    DensityOperator rho2_initial = DensityOperator::maximally_mixed(1);
    bool separable_certified = false;
    CertificationMethod method = CertificationMethod::none;
};

struct WitnessCertificate {
    double s = 0.0;
    double t = 0.0;
    double norm_at_s = 0.0;  // 2p by construction
    double norm_at_t = 0.0;
    double gain = 0.0;       // norm_at_t - norm_at_s
    std::optional<double> choi_excess;  // ||Choi(V)||_1 - 1 when V exists
};

/// Build the initial pair at anchor time s: pull the reference states back
/// through (I (x) map_s)^-1, mix with the maximally mixed preimage using
/// weight p = eta * (largest safe weight). Throws SingularMap when map_s is
/// not bijective (use kernel_witness instead) and DegenerateWeight when p
/// collapses below resolution.
WitnessPair construct_witness(const DynamicalFamily& family, double s, double eta = 0.9,
                              const Tolerances& tol = default_tolerances());

/// Evolve the stored initial states directly with I (x) map at s and t (no
/// inversion involved) and measure the trace-norm gain.
WitnessCertificate verify_witness(const DynamicalFamily& family, const WitnessPair& pair,
                                  double t, const Tolerances& tol = default_tolerances());

/// Shrink the pair towards the maximally mixed state with the largest weight q
/// that certifies both states separable: exact PPT for 2x3 (d = 2), the
/// Frobenius separability ball otherwise. Mixing commutes with the evolution,
/// so the gain of the new pair is exactly q times the old gain. The caller is
/// expected to hold a verified gain > 0 for the input pair.
WitnessPair separable_witness(const WitnessPair& pair,
                              const Tolerances& tol = default_tolerances());

struct HelstromRescaling {
    double y = 0.0;
    DensityOperator rho1 = DensityOperator::maximally_mixed(1);
    DensityOperator rho2 = DensityOperator::maximally_mixed(1);
};

/// Rewrite the Helstrom matrix p rho1 - (1-p) rho2 as a positive multiple of a
/// Helstrom matrix for states pulled toward an interior anchor sigma:
///   y rho1' - (1-y) rho2' = r/(2p + r - 2rp) * (p rho1 - (1-p) rho2)
/// with rho1' = (1-r) sigma + r rho1, rho2' = (1-x) sigma + x rho2,
/// x = r(1-p)/(p + r - 2rp), y = p/(2p + r - 2rp).
HelstromRescaling helstrom_rescale(const DensityOperator& rho1, const DensityOperator& rho2,
                                   double p, const DensityOperator& sigma, double r);

/// System-space pair for non-bijective anchors: rho_i = I/d +- eps K for a
/// kernel element K of map_s that map_t does not annihilate. Identical images
/// at s, distinguishable at t. Throws NoObstruction when no such K exists.
struct KernelWitnessPair {
    double s = 0.0;
    double t = 0.0;
    double epsilon = 0.0;
    HermitianOperator kernel_element = HermitianOperator::zero(1);
    DensityOperator rho1 = DensityOperator::maximally_mixed(1);
    DensityOperator rho2 = DensityOperator::maximally_mixed(1);
    double norm_at_s = 0.0;
    double norm_at_t = 0.0;
};

KernelWitnessPair kernel_witness(const DynamicalFamily& family, double s, double t,
                                 double eps_safety = 0.9,
                                 const Tolerances& tol = default_tolerances());

/// True when the bipartite state passes the positive-partial-transpose test
/// (exact separability criterion for 2x3 systems).
bool ppt_positive(const DensityOperator& rho, std::size_t dim_a, std::size_t dim_b, double tol);

/// Sufficient separability condition: ||rho - I/D||_F <= 1/sqrt(D(D-1)).
bool inside_frobenius_separable_ball(const DensityOperator& rho);

}  // namespace backflow
