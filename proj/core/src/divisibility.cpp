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

#include "backflow/divisibility.hpp"

#include <cmath>
#include <limits>

#include "backflow/errors.hpp"
#include "backflow/random.hpp"
#include "backflow/threading.hpp"

namespace backflow {

IntermediateMap intermediate_map(const DynamicalFamily& family, double s, double t,
                                 double cond_limit) {
    if (s > t) throw ConfigError("intermediate_map: requires s <= t");
    const QuantumChannel at_s = family.evaluate(s);
    const QuantumChannel at_t = family.evaluate(t);
    const std::vector<double> sigma = singular_values(at_s.superoperator());
    const QuantumChannel inv = inverse(at_s, cond_limit);  // throws on singular / ill-conditioned
    IntermediateMap out;
    out.s = s;
    out.t = t;
    out.channel = compose(at_t, inv);
    out.inversion_condition_number = condition_number(sigma);
    return out;
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void classify_step(const DynamicalFamily& family, double s, double t, const ScanOptions& options,
                   std::uint64_t step_tag, StepClassification& step) {
    step.s = s;
    step.t = t;
    step.min_choi_eig = kNan;
    step.cp = false;
    step.positivity_method = PositivityMethod::skipped;
    step.positive = false;
    step.rhp_g = kNan;
    step.condition_number = kNan;

    IntermediateMap vmap;
    try {
        vmap = intermediate_map(family, s, t, options.tol.cond_limit);
    } catch (const SingularMap&) {
        step.status = StepStatus::singular;
        return;
    } catch (const IllConditioned&) {
        step.status = StepStatus::near_singular;
        return;
    }
    step.status = StepStatus::ok;
    step.condition_number = vmap.inversion_condition_number;

    const ChoiMatrix choi = to_choi(vmap.channel);
    double abs_sum = 0.0;
    double lo = 0.0;
    bool first = true;
    for (double ev : hermitian_eigenvalues(choi.matrix)) {
        abs_sum += std::abs(ev);
        if (first || ev < lo) lo = ev;
        first = false;
    }
    step.min_choi_eig = lo;
    step.cp = lo >= -options.tol.cp;
    if (options.with_rhp && t > s) step.rhp_g = (abs_sum - 1.0) / (t - s);

    if (!options.check_positivity) return;
    if (const auto lambda = vmap.channel.pauli_eigenvalues()) {
        step.positivity_method = PositivityMethod::exact;
        step.positive = pauli_positivity((*lambda)[0], (*lambda)[1], (*lambda)[2]);
    } else {
        step.positivity_method = PositivityMethod::sampled;
        step.positive =
            is_positive_sampled(vmap.channel, options.tol.positivity_samples,
                                options.tol.positivity_sample, Rng::mix(options.seed, step_tag));
    }
}

}  // namespace

DivisibilityReport scan_cp_divisibility(const DynamicalFamily& family, const TimeGrid& grid,
                                        const ScanOptions& options) {
    DivisibilityReport report;
    report.grid = grid;
    report.cp_tol = options.tol.cp;
    report.cond_limit = options.tol.cond_limit;
    report.rank_rel_tol = options.tol.rank_rel;

    const std::size_t n = grid.n_points();

    // Fill the family cache sequentially; the classification phase then only
    // reads it.
    for (std::size_t i = 0; i < n; ++i) (void)family.evaluate(grid.at(i));
    if (options.with_rank) report.ranks = rank_profile(family, grid, options.tol.rank_rel);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (options.all_pairs) {
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    } else {
        for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
    }

    report.steps.resize(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        classify_step(family, grid.at(i), grid.at(j), options, static_cast<std::uint64_t>(k),
                      report.steps[k]);
        report.steps[k].rank_at_s = options.with_rank ? report.ranks[i] : 0;
    });

    // Maximal runs of consecutive-step non-CP verdicts. In all-pairs mode only
    // the (i, i+1) subset contributes.
    for (const auto& step : report.steps) {
        if (step.t - step.s > grid.step() * 1.5) continue;  // skip non-consecutive pairs
        if (step.status != StepStatus::ok || step.cp) continue;
        if (!report.non_cp_intervals.empty() &&
            report.non_cp_intervals.back().second == step.s) {
            report.non_cp_intervals.back().second = step.t;
        } else {
            report.non_cp_intervals.emplace_back(step.s, step.t);
        }
    }

    if (options.with_rank) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (report.ranks[i + 1] > report.ranks[i]) {
                report.divisibility_obstruction = std::make_pair(grid.at(i), grid.at(i + 1));
                break;
            }
        }
    }
    return report;
}

double rhp_indicator(const DynamicalFamily& family, double t, double eps, double cond_limit) {
    if (!(eps > 0.0)) throw ConfigError("rhp_indicator: eps must be > 0");
    const IntermediateMap vmap = intermediate_map(family, t, t + eps, cond_limit);
    const ChoiMatrix choi = to_choi(vmap.channel);
    double abs_sum = 0.0;
    for (double ev : hermitian_eigenvalues(choi.matrix)) abs_sum += std::abs(ev);
    return (abs_sum - 1.0) / eps;
}

std::vector<HermitianOperator> kernel_basis(const DynamicalFamily& family, double s, double tol) {
    const QuantumChannel ch = family.evaluate(s);
    const std::size_t d = ch.dim();
    const ComplexMatrix& superop = ch.superoperator();

    // Null space of S from the hermitian eigenproblem of S^dagger S. The map
    // preserves hermiticity, so the kernel is closed under adjoints and its
    // hermitian part spans it over the reals.
    const HermitianOperator gram = HermitianOperator::from_exact(superop.adjoint() * superop);
    const EigenSystem eig = hermitian_eig(gram);
    const double top = eig.values.empty() ? 0.0 : eig.values.back();
    // ||S vec K||_2 = sqrt(eigenvalue) lower-bounds the image trace norm, so
    // sqrt(eig) <= tol is necessary for the final filter; the floor absorbs
    // eigensolver round-off on exact zeros.
    const double cut = std::max(tol * tol, std::max(top, 1.0) * 1e-14);

    std::vector<HermitianOperator> candidates;
    for (std::size_t j = 0; j < eig.values.size(); ++j) {
        if (eig.values[j] > cut) continue;
        ComplexMatrix col(d * d, 1);
        for (std::size_t i = 0; i < d * d; ++i) col(i, 0) = eig.vectors(i, j);
        const ComplexMatrix m = devectorize(col, d, d);
        const ComplexMatrix herm = Complex{0.5, 0.0} * (m + m.adjoint());
        ComplexMatrix anti = Complex{0.0, -0.5} * (m - m.adjoint());
        if (herm.frobenius_norm() > 1e-12) candidates.push_back(HermitianOperator::from_exact(herm));
        if (anti.frobenius_norm() > 1e-12) candidates.push_back(HermitianOperator::from_exact(anti));
    }

    std::vector<HermitianOperator> basis = orthonormalize_hermitian(candidates);
    // Keep only directions truly annihilated by the map.
    std::vector<HermitianOperator> out;
    for (const auto& k : basis) {
        if (trace_norm(ch.apply(k)) <= tol) out.push_back(k);
    }
    return out;
}

}  // namespace backflow
