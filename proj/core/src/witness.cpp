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

#include "backflow/witness.hpp"

#include <cmath>
#include <string>

#include "backflow/errors.hpp"

namespace backflow {

ReferenceStates reference_states(std::size_t d, std::size_t ancilla_dim) {
    if (d < 2) throw ConfigError("reference_states: system dimension must be >= 2");
    if (ancilla_dim == 0) ancilla_dim = d + 1;
    if (ancilla_dim < d + 1) {
        throw ConfigError("reference_states: ancilla must have dimension >= d + 1");
    }
    const std::size_t n = ancilla_dim * d;

    ComplexMatrix phi(n, n);
    const double inv_d = 1.0 / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) phi(i * d + i, j * d + j) = inv_d;

    ComplexMatrix flag(n, n);
    const std::size_t a = ancilla_dim - 1;  // the ancilla ray orthogonal to the entangled block
    for (std::size_t i = 0; i < d; ++i) flag(a * d + i, a * d + i) = inv_d;

    ReferenceStates out;
    out.d = d;
    out.ancilla_dim = ancilla_dim;
    out.phi_plus = DensityOperator::from_matrix(phi);
    out.flag_state = DensityOperator::from_matrix(flag);
    return out;
}

double max_mixing_weight(const HermitianOperator& x, const DensityOperator& anchor,
                         double resolution) {
    if (x.dim() != anchor.dim()) throw DimensionMismatch("max_mixing_weight: dimension mismatch");
    const double anchor_floor = min_eigenvalue(anchor.hermitian());
    if (anchor_floor <= 0.0) {
        throw InvalidOperator("max_mixing_weight: anchor must be strictly positive definite");
    }
    const auto min_eig_at = [&](double p) {
        const HermitianOperator mix = anchor.hermitian().scaled(1.0 - p) + x.scaled(p);
        return min_eigenvalue(mix);
    };
    if (min_eig_at(1.0) >= 0.0) return 1.0;
    double lo = 0.0;  // feasible (anchor interior)
    double hi = 1.0;  // infeasible
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        if (min_eig_at(mid) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

namespace {

HermitianOperator difference(const DensityOperator& a, const DensityOperator& b) {
    return HermitianOperator::from_exact(a.matrix() - b.matrix());
}

}  // namespace

WitnessPair construct_witness(const DynamicalFamily& family, double s, double eta,
                              const Tolerances& tol) {
    if (!(eta > 0.0 && eta < 1.0)) {
        throw ConfigError("construct_witness: eta must lie in (0, 1)");
    }
    const std::size_t d = family.dim();
    const ReferenceStates refs = reference_states(d);
    const std::size_t k = refs.ancilla_dim;

    // Invert at the system level; the extension of the inverse is the inverse
    // of the extension, with the same condition number.
    const QuantumChannel inv_s = inverse(family.evaluate(s), tol.cond_limit);
    const QuantumChannel ext_inv = extend_with_identity(inv_s, k);
    const QuantumChannel ext = extend_with_identity(family.evaluate(s), k);

    const HermitianOperator y1 = ext_inv.apply(refs.phi_plus.hermitian());
    const HermitianOperator y2 = ext_inv.apply(refs.flag_state.hermitian());

    const DensityOperator omega = DensityOperator::maximally_mixed(k * d);
    const double w1 = max_mixing_weight(y1, omega, tol.weight_resolution);
    const double w2 = max_mixing_weight(y2, omega, tol.weight_resolution);
    const double p = eta * std::min(w1, w2);
    if (p < tol.degenerate_weight) {
        throw DegenerateWeight("construct_witness: mixing weight " + std::to_string(p) +
                               " below resolution; map at s = " + std::to_string(s) +
                               " is too contractive");
    }

    WitnessPair pair;
    pair.s = s;
    pair.p = p;
    pair.system_dim = d;
    pair.ancilla_dim = k;
    pair.sigma = DensityOperator::from_matrix(ext.apply(omega.hermitian()).matrix(), tol);
    pair.rho1_initial = DensityOperator::from_matrix(
        (omega.hermitian().scaled(1.0 - p) + y1.scaled(p)).matrix(), tol);
    pair.rho2_initial = DensityOperator::from_matrix(
        (omega.hermitian().scaled(1.0 - p) + y2.scaled(p)).matrix(), tol);
    return pair;
}

WitnessCertificate verify_witness(const DynamicalFamily& family, const WitnessPair& pair,
                                  double t, const Tolerances& tol) {
    if (t < pair.s) throw ConfigError("verify_witness: requires t >= s");
    const HermitianOperator delta = difference(pair.rho1_initial, pair.rho2_initial);
    const QuantumChannel ext_s = extend_with_identity(family.evaluate(pair.s), pair.ancilla_dim);
    const QuantumChannel ext_t = extend_with_identity(family.evaluate(t), pair.ancilla_dim);

    WitnessCertificate cert;
    cert.s = pair.s;
    cert.t = t;
    cert.norm_at_s = trace_norm(ext_s.apply(delta));
    cert.norm_at_t = trace_norm(ext_t.apply(delta));
    cert.gain = cert.norm_at_t - cert.norm_at_s;
    try {
        const IntermediateMap vmap = intermediate_map(family, pair.s, t, tol.cond_limit);
        cert.choi_excess = trace_norm(to_choi(vmap.channel).matrix) - 1.0;
    } catch (const SingularMap&) {
    } catch (const IllConditioned&) {
    }
    return cert;
}

bool ppt_positive(const DensityOperator& rho, std::size_t dim_a, std::size_t dim_b, double tol) {
    const ComplexMatrix pt = partial_transpose(rho.matrix(), dim_a, dim_b, Subsystem::A);
    return min_eigenvalue(HermitianOperator::from_exact(pt)) >= -tol;
}

bool inside_frobenius_separable_ball(const DensityOperator& rho) {
    const std::size_t n = rho.dim();
    const ComplexMatrix delta =
        rho.matrix() - DensityOperator::maximally_mixed(n).matrix();
    const double radius = 1.0 / std::sqrt(static_cast<double>(n) * static_cast<double>(n - 1));
    return delta.frobenius_norm() <= radius;
}

WitnessPair separable_witness(const WitnessPair& pair, const Tolerances& tol) {
    // Mixing both initial states toward the maximally mixed state commutes
    // with the evolution, so the gain of the new pair is exactly q times the
    // old gain; no family evaluation is needed here.
    const std::size_t n = pair.ancilla_dim * pair.system_dim;
    const DensityOperator omega = DensityOperator::maximally_mixed(n);
    // PPT decides separability exactly only up to product dimension 6
    // (2x2 and 2x3 layouts); beyond that the Frobenius ball is the sufficient
    // certificate.
    const bool use_ppt = (n <= 6);

    const auto certified = [&](const DensityOperator& rho) {
        if (use_ppt) return ppt_positive(rho, pair.ancilla_dim, pair.system_dim,
                                         tol.separability_psd);
        return inside_frobenius_separable_ball(rho);
    };
    const auto shrink = [&](const DensityOperator& rho, double q) {
        return DensityOperator::from_matrix(
            (omega.hermitian().scaled(1.0 - q) + rho.hermitian().scaled(q)).matrix(), tol);
    };
    const auto both_certified = [&](double q) {
        return certified(shrink(pair.rho1_initial, q)) && certified(shrink(pair.rho2_initial, q));
    };

    double q = 1.0;
    if (!both_certified(1.0)) {
        double lo = 0.0, hi = 1.0;
        // q = 0 is the maximally mixed state itself, always certified.
        while (hi - lo > tol.weight_resolution) {
            const double mid = 0.5 * (lo + hi);
            if (both_certified(mid))
                lo = mid;
            else
                hi = mid;
        }
        q = lo;
    }
    if (q < tol.degenerate_weight) {
        throw CertificationFailed("separable_witness: certified weight " + std::to_string(q) +
                                  " below resolution");
    }

    WitnessPair out = pair;
    out.p = q * pair.p;
    out.rho1_initial = shrink(pair.rho1_initial, q);
    out.rho2_initial = shrink(pair.rho2_initial, q);
    out.separable_certified = true;
    out.method = use_ppt ? CertificationMethod::ppt_exact : CertificationMethod::frobenius_ball;
    return out;
}

HelstromRescaling helstrom_rescale(const DensityOperator& rho1, const DensityOperator& rho2,
                                   double p, const DensityOperator& sigma, double r) {
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("helstrom_rescale: p must lie in (0, 1)");
    if (!(r > 0.0 && r <= 1.0)) throw ConfigError("helstrom_rescale: r must lie in (0, 1]");
    if (rho1.dim() != rho2.dim() || rho1.dim() != sigma.dim()) {
        throw DimensionMismatch("helstrom_rescale: dimension mismatch");
    }
    if (min_eigenvalue(sigma.hermitian()) <= 0.0) {
        throw InvalidOperator("helstrom_rescale: sigma must be strictly positive definite");
    }
    const double x = r * (1.0 - p) / (p + r - 2.0 * r * p);
    const double y = p / (2.0 * p + r - 2.0 * r * p);

    HelstromRescaling out;
    out.y = y;
    out.rho1 = DensityOperator::from_matrix(
        (sigma.hermitian().scaled(1.0 - r) + rho1.hermitian().scaled(r)).matrix());
    out.rho2 = DensityOperator::from_matrix(
        (sigma.hermitian().scaled(1.0 - x) + rho2.hermitian().scaled(x)).matrix());
    return out;
}

KernelWitnessPair kernel_witness(const DynamicalFamily& family, double s, double t,
                                 double eps_safety, const Tolerances& tol) {
    if (!(eps_safety > 0.0 && eps_safety <= 1.0)) {
        throw ConfigError("kernel_witness: eps_safety must lie in (0, 1]");
    }
    const std::vector<HermitianOperator> kernel =
        kernel_basis(family, s, tol.kernel_image_norm);
    if (kernel.empty()) {
        throw NoObstruction("kernel_witness: map at s = " + std::to_string(s) + " is bijective");
    }
    const QuantumChannel at_t = family.evaluate(t);
    const HermitianOperator* best = nullptr;
    double best_norm = tol.kernel_image_norm;
    for (const auto& k : kernel) {
        const double norm_t = trace_norm(at_t.apply(k));
        if (norm_t > best_norm) {
            best_norm = norm_t;
            best = &k;
        }
    }
    if (best == nullptr) {
        throw NoObstruction("kernel_witness: no kernel direction regains trace norm at t = " +
                            std::to_string(t));
    }

    const std::size_t d = family.dim();
    const double floor = min_eigenvalue(*best);
    if (!(floor < 0.0)) {
        throw InvalidOperator("kernel_witness: kernel element is not traceless");
    }
    const double eps = eps_safety / (static_cast<double>(d) * std::abs(floor));

    const DensityOperator omega = DensityOperator::maximally_mixed(d);
    KernelWitnessPair out;
    out.s = s;
    out.t = t;
    out.epsilon = eps;
    out.kernel_element = *best;
    out.rho1 = DensityOperator::from_matrix(
        (omega.hermitian() + best->scaled(eps)).matrix(), tol);
    out.rho2 = DensityOperator::from_matrix(
        (omega.hermitian() + best->scaled(-eps)).matrix(), tol);
    const QuantumChannel at_s = family.evaluate(s);
    out.norm_at_s = trace_norm(at_s.apply(difference(out.rho1, out.rho2)));
    out.norm_at_t = trace_norm(at_t.apply(difference(out.rho1, out.rho2)));
    return out;
}

}  // namespace backflow
