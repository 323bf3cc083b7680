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

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "backflow/channel.hpp"
#include "backflow/complex_matrix.hpp"

namespace backflow {

/// Uniform time grid, t_start >= 0, at least two points.
class TimeGrid {
  public:
    TimeGrid(double t_start, double t_end, std::size_t n_points);

    double t_start() const { return t_start_; }
    double t_end() const { return t_end_; }
    std::size_t n_points() const { return n_points_; }
    double step() const { return (t_end_ - t_start_) / static_cast<double>(n_points_ - 1); }
    double at(std::size_t i) const { return t_start_ + static_cast<double>(i) * step(); }

  private:
    double t_start_;
    double t_end_;
    std::size_t n_points_;
};

using RateFunction = std::function<double(double)>;

struct JumpOperator {
    ComplexMatrix op;
    RateFunction rate;  // gamma_k(t), units of inverse time
};

/// Time-local generator dX/dt = -i[H(t), X] + sum_k gamma_k(t) (L_k X L_k^dag
/// - 1/2 {L_k^dag L_k, X}).
struct GeneratorSpec {
    std::size_t dim = 0;
    std::function<ComplexMatrix(double)> hamiltonian;  // null means H = 0
    std::vector<JumpOperator> jumps;
};

struct IntegratorOptions {
    double step = 1e-3;          // fixed RK4 step
    double tp_drift_tol = 1e-6;  // abort when trace preservation drifts past this
};

/// Superoperator of the generator at time t (column-stacking convention).
ComplexMatrix gksl_superoperator(const GeneratorSpec& spec, double t);

/// Time-parametrized family {map_t} with map_0 = identity. Evaluation is
/// memoized under a quantized time key; reads may be concurrent, writes are
/// serialized internally.
class DynamicalFamily {
  public:
    using Producer = std::function<QuantumChannel(double)>;

    /// Family defined by a closed-form channel producer.
    static DynamicalFamily analytic(std::size_t dim, std::string label, Producer producer);

    QuantumChannel evaluate(double t) const;
    std::size_t dim() const;
    const std::string& label() const;
    /// Cache quantization step; evaluation times round to multiples of it.
    double time_quantum() const;

    /// Sorted (time, channel) snapshot of everything evaluated so far.
    std::vector<std::pair<double, QuantumChannel>> cached_snapshot() const;

  private:
    friend DynamicalFamily integrate_generator(const GeneratorSpec&, const TimeGrid&,
                                               const IntegratorOptions&);
    struct Impl;
    explicit DynamicalFamily(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

/// Solve d map_t/dt = L_t o map_t as a matrix ODE on the superoperator with
/// classic fixed-step fourth-order integration, covering [0, grid.t_end()].
/// Evaluation times quantize to multiples of the integration step.
DynamicalFamily integrate_generator(const GeneratorSpec& spec, const TimeGrid& grid,
                                    const IntegratorOptions& opts = {});

// ---------------------------------------------------------------------------
// Model zoo. All models are exact closed forms validated against the
// generator-integrated route in the test suite.
// ---------------------------------------------------------------------------

/// Qubit Pauli channel family with closed-form eigenvalues from the integrated
/// rates: lambda_i(t) = exp(-2 (Gamma_j + Gamma_k)), (i,j,k) cyclic. Rates are
/// integrated numerically (composite Simpson).
DynamicalFamily model_pauli(RateFunction g1, RateFunction g2, RateFunction g3);

/// Same with caller-supplied cumulative integrals Gamma_i(t) (exact presets).
DynamicalFamily model_pauli_integrated_rates(RateFunction big_g1, RateFunction big_g2,
                                             RateFunction big_g3, std::string label);

/// Rates (1, 1, -tanh t): P-divisible for all times, CP-divisible for none.
DynamicalFamily model_pauli_eternal();
/// Rates (0, 0, gamma): coherence decay exp(-2 gamma t).
DynamicalFamily model_pauli_dephasing(double gamma);
/// Rates (gamma, gamma, gamma): CP-divisible semigroup.
DynamicalFamily model_pauli_depolarizing(double gamma);

/// Exact resonant amplitude damping with Lorentzian reservoir spectrum,
/// spectral width lambda and coupling gamma0. Weak coupling (2 gamma0 <
/// lambda) decays monotonically; strong coupling oscillates with isolated
/// zeros and revivals.
DynamicalFamily model_amplitude_damping_lorentzian(double lambda, double gamma0);

/// Constant-rate amplitude damping semigroup (G(t) = exp(-gamma t / 2)).
DynamicalFamily model_amplitude_damping_semigroup(double gamma);

/// Excited-state amplitude G(t) of the Lorentzian model. Both coupling
/// branches and the degenerate point 2 gamma0 = lambda are handled through one
/// analytic series.
double lorentzian_amplitude(double lambda, double gamma0, double t);

/// First zero of G(t) in the strong coupling regime (2 gamma0 > lambda).
double lorentzian_first_zero(double lambda, double gamma0);

/// Generator specs matching the model zoo, for two-route validation.
GeneratorSpec pauli_generator(RateFunction g1, RateFunction g2, RateFunction g3);
GeneratorSpec dephasing_generator(RateFunction gamma);
GeneratorSpec amplitude_damping_generator(double gamma);

/// Numerical rank of the superoperator at each grid time (singular values
/// above rel_tol * sigma_max).
std::vector<std::size_t> rank_profile(const DynamicalFamily& family, const TimeGrid& grid,
                                      double rel_tol);

}  // namespace backflow
