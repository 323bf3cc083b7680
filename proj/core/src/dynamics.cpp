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

#include "backflow/dynamics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "backflow/errors.hpp"

namespace backflow {

TimeGrid::TimeGrid(double t_start, double t_end, std::size_t n_points)
    : t_start_(t_start), t_end_(t_end), n_points_(n_points) {
    if (n_points < 2) throw ConfigError("TimeGrid: need at least two points");
    if (t_start < 0.0) throw ConfigError("TimeGrid: t_start must be >= 0");
    if (!(t_end > t_start)) throw ConfigError("TimeGrid: t_end must exceed t_start");
}

// ---------------------------------------------------------------------------
// Generator superoperator
// ---------------------------------------------------------------------------

namespace {

ComplexMatrix dissipator_superop(const ComplexMatrix& jump) {
    const std::size_t d = jump.rows();
    const ComplexMatrix id = ComplexMatrix::identity(d);
    const ComplexMatrix ldl = jump.adjoint() * jump;
    ComplexMatrix out = tensor(jump.conjugate(), jump);
    out -= Complex{0.5, 0.0} * tensor(id, ldl);
    out -= Complex{0.5, 0.0} * tensor(ldl.transpose(), id);
    return out;
}

ComplexMatrix hamiltonian_superop(const ComplexMatrix& h) {
    const std::size_t d = h.rows();
    const ComplexMatrix id = ComplexMatrix::identity(d);
    ComplexMatrix out = tensor(id, h);
    out -= tensor(h.transpose(), id);
    out *= Complex{0.0, -1.0};
    return out;
}

// Max deviation of the column functional enforcing trace preservation:
// sum over diagonal vec positions of each column vs vec(I).
double tp_defect(const ComplexMatrix& superop, std::size_t dim) {
    double worst = 0.0;
    for (std::size_t c = 0; c < superop.cols(); ++c) {
        Complex s{0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) s += superop(i * dim + i, c);
        const double target = (c % (dim + 1) == 0) ? 1.0 : 0.0;  // c = i*dim+i positions
        worst = std::max(worst, std::abs(s - Complex{target, 0.0}));
    }
    return worst;
}

}  // namespace

ComplexMatrix gksl_superoperator(const GeneratorSpec& spec, double t) {
    const std::size_t d2 = spec.dim * spec.dim;
    ComplexMatrix out(d2, d2);
    if (spec.hamiltonian) {
        const ComplexMatrix h = spec.hamiltonian(t);
        if (HermitianOperator::from_matrix(h).dim() != spec.dim) {
            throw DimensionMismatch("gksl_superoperator: Hamiltonian dimension mismatch");
        }
        out += hamiltonian_superop(h);
    }
    for (const auto& jump : spec.jumps) {
        const double rate = jump.rate ? jump.rate(t) : 0.0;
        if (!std::isfinite(rate)) {
            throw IntegrationFailure("gksl_superoperator: rate is not finite at t = " +
                                     std::to_string(t));
        }
        if (rate == 0.0) continue;
        ComplexMatrix term = dissipator_superop(jump.op);
        term *= Complex{rate, 0.0};
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// DynamicalFamily
// ---------------------------------------------------------------------------

struct DynamicalFamily::Impl {
    std::size_t dim = 0;
    std::string label;
    double qstep = 1e-12;
    Producer producer;  // analytic route; empty for integrated families

    // Integrated route.
    bool integrated = false;
    GeneratorSpec spec;
    IntegratorOptions opts;
    std::vector<ComplexMatrix> jump_static;  // rate-independent dissipators
    std::vector<ComplexMatrix> table;        // superoperator at k * opts.step

    mutable std::map<std::int64_t, QuantumChannel> cache;
    mutable std::shared_mutex mutex;

    ComplexMatrix generator_at(double t) const {
        const std::size_t d2 = dim * dim;
        ComplexMatrix gen(d2, d2);
        if (spec.hamiltonian) gen += hamiltonian_superop(spec.hamiltonian(t));
        for (std::size_t i = 0; i < spec.jumps.size(); ++i) {
            const double rate = spec.jumps[i].rate ? spec.jumps[i].rate(t) : 0.0;
            if (!std::isfinite(rate)) {
                throw IntegrationFailure("integrate_generator: rate not finite at t = " +
                                         std::to_string(t));
            }
            if (rate == 0.0) continue;
            ComplexMatrix term = jump_static[i];
            term *= Complex{rate, 0.0};
            gen += term;
        }
        return gen;
    }

    // Extend the integrated table up to index k (caller holds the write lock).
    void extend_table(std::int64_t k) {
        const double h = opts.step;
        while (static_cast<std::int64_t>(table.size()) <= k) {
            const std::size_t n = table.size();
            const double t = static_cast<double>(n - 1) * h;
            const ComplexMatrix& s = table.back();

            const ComplexMatrix l0 = generator_at(t);
            const ComplexMatrix lh = generator_at(t + 0.5 * h);
            const ComplexMatrix l1 = generator_at(t + h);

            const ComplexMatrix k1 = l0 * s;
            const ComplexMatrix k2 = lh * (s + Complex{0.5 * h, 0.0} * k1);
            const ComplexMatrix k3 = lh * (s + Complex{0.5 * h, 0.0} * k2);
            const ComplexMatrix k4 = l1 * (s + Complex{h, 0.0} * k3);

            ComplexMatrix next = s;
            next += Complex{h / 6.0, 0.0} * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

            const double drift = tp_defect(next, dim);
            if (drift > opts.tp_drift_tol) {
                throw IntegrationFailure("integrate_generator: trace-preservation drift " +
                                         std::to_string(drift) + " at t = " +
                                         std::to_string(t + h) + "; reduce the step size");
            }
            // Blow-up in the traceless sector leaves the trace functional
            // intact; catch it by the superoperator norm, which stays O(d)
            // for any physical map.
            const double norm = next.frobenius_norm();
            if (!std::isfinite(norm) || norm > 1e6) {
                throw IntegrationFailure("integrate_generator: superoperator norm " +
                                         std::to_string(norm) + " at t = " +
                                         std::to_string(t + h) +
                                         "; the step size is outside the stability region");
            }
            table.push_back(std::move(next));
        }
    }
};

DynamicalFamily DynamicalFamily::analytic(std::size_t dim, std::string label, Producer producer) {
    auto impl = std::make_shared<Impl>();
    impl->dim = dim;
    impl->label = std::move(label);
    impl->producer = std::move(producer);
    impl->qstep = 1e-12;
    return DynamicalFamily(std::move(impl));
}

std::size_t DynamicalFamily::dim() const { return impl_->dim; }
const std::string& DynamicalFamily::label() const { return impl_->label; }
double DynamicalFamily::time_quantum() const { return impl_->qstep; }

QuantumChannel DynamicalFamily::evaluate(double t) const {
    if (t < 0.0) throw ConfigError("DynamicalFamily::evaluate: t must be >= 0");
    Impl& impl = *impl_;
    const std::int64_t key = std::llround(t / impl.qstep);
    {
        std::shared_lock lock(impl.mutex);
        auto it = impl.cache.find(key);
        if (it != impl.cache.end()) return it->second;
    }

    if (key == 0) {
        QuantumChannel id = QuantumChannel::identity(impl.dim);
        std::unique_lock lock(impl.mutex);
        impl.cache.emplace(key, id);
        return id;
    }

    if (impl.integrated) {
        std::unique_lock lock(impl.mutex);
        auto it = impl.cache.find(key);
        if (it != impl.cache.end()) return it->second;
        impl.extend_table(key);
        QuantumChannel ch = QuantumChannel::from_superoperator(
            impl.dim, impl.table[static_cast<std::size_t>(key)]);
        impl.cache.emplace(key, ch);
        return ch;
    }

    // Analytic route: compute at the quantized time outside the lock.
    const double tq = static_cast<double>(key) * impl.qstep;
    QuantumChannel ch = impl.producer(tq);
    if (ch.dim() != impl.dim) {
        throw DimensionMismatch("DynamicalFamily: producer returned wrong dimension");
    }
    if (tp_defect(ch.superoperator(), impl.dim) > default_tolerances().family_tp) {
        throw InvalidOperator("DynamicalFamily: channel at t = " + std::to_string(tq) +
                              " is not trace preserving within tolerance");
    }
    std::unique_lock lock(impl.mutex);
    return impl.cache.emplace(key, ch).first->second;
}

std::vector<std::pair<double, QuantumChannel>> DynamicalFamily::cached_snapshot() const {
    std::shared_lock lock(impl_->mutex);
    std::vector<std::pair<double, QuantumChannel>> out;
    out.reserve(impl_->cache.size());
    for (const auto& [key, ch] : impl_->cache) {
        out.emplace_back(static_cast<double>(key) * impl_->qstep, ch);
    }
    return out;
}

DynamicalFamily integrate_generator(const GeneratorSpec& spec, const TimeGrid& grid,
                                    const IntegratorOptions& opts) {
    if (spec.dim == 0) throw ConfigError("integrate_generator: dimension must be positive");
    auto impl = std::make_shared<DynamicalFamily::Impl>();
    impl->dim = spec.dim;
    impl->label = "integrated";
    impl->integrated = true;
    impl->spec = spec;
    impl->opts = opts;
    impl->qstep = opts.step;
    impl->jump_static.reserve(spec.jumps.size());
    for (const auto& jump : spec.jumps) {
        if (jump.op.rows() != spec.dim || jump.op.cols() != spec.dim) {
            throw DimensionMismatch("integrate_generator: jump operator dimension mismatch");
        }
        impl->jump_static.push_back(dissipator_superop(jump.op));
    }
    if (spec.hamiltonian) {
        // Validate hermiticity once up front.
        (void)HermitianOperator::from_matrix(spec.hamiltonian(grid.t_start()));
    }
    impl->table.push_back(ComplexMatrix::identity(spec.dim * spec.dim));
    return DynamicalFamily(std::move(impl));
}

// ---------------------------------------------------------------------------
// Model zoo
// ---------------------------------------------------------------------------

namespace {

QuantumChannel pauli_channel_from_integrals(double big_g1, double big_g2, double big_g3) {
    const double l1 = std::exp(-2.0 * (big_g2 + big_g3));
    const double l2 = std::exp(-2.0 * (big_g1 + big_g3));
    const double l3 = std::exp(-2.0 * (big_g1 + big_g2));
    return QuantumChannel::pauli_diagonal(l1, l2, l3);
}

double simpson_integral(const RateFunction& f, double t) {
    if (t == 0.0) return 0.0;
    const std::size_t half = static_cast<std::size_t>(std::ceil(t / 5e-4));
    const std::size_t n = 2 * std::max<std::size_t>(half, 1);
    const double h = t / static_cast<double>(n);
    double acc = f(0.0) + f(t);
    for (std::size_t i = 1; i < n; ++i) acc += f(static_cast<double>(i) * h) * ((i % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

QuantumChannel amplitude_damping_channel(double g) {
    ComplexMatrix k0(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = g;
    ComplexMatrix k1(2, 2);
    k1(0, 1) = std::sqrt(std::max(0.0, 1.0 - g * g));
    return QuantumChannel::from_kraus({k0, k1});
}

// cosh(sqrt(z)) and sinh(sqrt(z))/sqrt(z), analytic in z (cos/sinc for z < 0).
double cosh_sqrt(double z) {
    if (std::abs(z) < 0.25) {
        double term = 1.0, acc = 1.0;
        for (int n = 1; n < 12; ++n) {
            term *= z / static_cast<double>((2 * n - 1) * (2 * n));
            acc += term;
            if (std::abs(term) < 1e-18) break;
        }
        return acc;
    }
    return z > 0.0 ? std::cosh(std::sqrt(z)) : std::cos(std::sqrt(-z));
}

double sinhc_sqrt(double z) {
    if (std::abs(z) < 0.25) {
        double term = 1.0, acc = 1.0;
        for (int n = 1; n < 12; ++n) {
            term *= z / static_cast<double>((2 * n) * (2 * n + 1));
            acc += term;
            if (std::abs(term) < 1e-18) break;
        }
        return acc;
    }
    const double x = std::sqrt(std::abs(z));
    return z > 0.0 ? std::sinh(x) / x : std::sin(x) / x;
}

}  // namespace

double lorentzian_amplitude(double lambda, double gamma0, double t) {
    if (t == 0.0) return 1.0;
    const double mu = lambda * (lambda - 2.0 * gamma0);
    const double z = 0.25 * mu * t * t;
    return std::exp(-0.5 * lambda * t) * (cosh_sqrt(z) + 0.5 * lambda * t * sinhc_sqrt(z));
}

double lorentzian_first_zero(double lambda, double gamma0) {
    if (!(2.0 * gamma0 > lambda)) {
        throw ConfigError("lorentzian_first_zero: requires strong coupling 2*gamma0 > lambda");
    }
    const double d = std::sqrt(2.0 * gamma0 * lambda - lambda * lambda);
    return 2.0 * (M_PI - std::atan(d / lambda)) / d;
}

DynamicalFamily model_pauli(RateFunction g1, RateFunction g2, RateFunction g3) {
    return DynamicalFamily::analytic(2, "pauli", [g1, g2, g3](double t) {
        return pauli_channel_from_integrals(simpson_integral(g1, t), simpson_integral(g2, t),
                                            simpson_integral(g3, t));
    });
}

DynamicalFamily model_pauli_integrated_rates(RateFunction big_g1, RateFunction big_g2,
                                             RateFunction big_g3, std::string label) {
    return DynamicalFamily::analytic(2, std::move(label),
                                     [big_g1, big_g2, big_g3](double t) {
                                         return pauli_channel_from_integrals(big_g1(t), big_g2(t),
                                                                             big_g3(t));
                                     });
}

DynamicalFamily model_pauli_eternal() {
    auto linear = [](double t) { return t; };
    // integral of -tanh is -log cosh; written via log1p for large-t stability.
    auto log_cosh_neg = [](double t) {
        return -(t + std::log1p(std::exp(-2.0 * t)) - M_LN2);
    };
    return model_pauli_integrated_rates(linear, linear, log_cosh_neg, "pauli_eternal");
}

DynamicalFamily model_pauli_dephasing(double gamma) {
    auto zero = [](double) { return 0.0; };
    auto lin = [gamma](double t) { return gamma * t; };
    return model_pauli_integrated_rates(zero, zero, lin, "pauli_dephasing");
}

DynamicalFamily model_pauli_depolarizing(double gamma) {
    auto lin = [gamma](double t) { return gamma * t; };
    return model_pauli_integrated_rates(lin, lin, lin, "pauli_depolarizing");
}

DynamicalFamily model_amplitude_damping_lorentzian(double lambda, double gamma0) {
    if (!(lambda > 0.0) || !(gamma0 > 0.0)) {
        throw ConfigError("model_amplitude_damping_lorentzian: lambda, gamma0 must be > 0");
    }
    return DynamicalFamily::analytic(2, "amplitude_damping_lorentzian", [lambda, gamma0](double t) {
        return amplitude_damping_channel(lorentzian_amplitude(lambda, gamma0, t));
    });
}

DynamicalFamily model_amplitude_damping_semigroup(double gamma) {
    if (!(gamma > 0.0)) {
        throw ConfigError("model_amplitude_damping_semigroup: gamma must be > 0");
    }
    return DynamicalFamily::analytic(2, "amplitude_damping_semigroup", [gamma](double t) {
        return amplitude_damping_channel(std::exp(-0.5 * gamma * t));
    });
}

namespace {

ComplexMatrix pauli_matrix(int i) {
    ComplexMatrix m(2, 2);
    if (i == 1) {
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
    } else if (i == 2) {
        m(0, 1) = Complex{0.0, -1.0};
        m(1, 0) = Complex{0.0, 1.0};
    } else {
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
    }
    return m;
}

}  // namespace

GeneratorSpec pauli_generator(RateFunction g1, RateFunction g2, RateFunction g3) {
    GeneratorSpec spec;
    spec.dim = 2;
    spec.jumps = {{pauli_matrix(1), std::move(g1)},
                  {pauli_matrix(2), std::move(g2)},
                  {pauli_matrix(3), std::move(g3)}};
    return spec;
}

GeneratorSpec dephasing_generator(RateFunction gamma) {
    GeneratorSpec spec;
    spec.dim = 2;
    spec.jumps = {{pauli_matrix(3), std::move(gamma)}};
    return spec;
}

GeneratorSpec amplitude_damping_generator(double gamma) {
    GeneratorSpec spec;
    spec.dim = 2;
    ComplexMatrix lower(2, 2);
    lower(0, 1) = 1.0;  // |0><1|
    spec.jumps = {{lower, [gamma](double) { return gamma; }}};
    return spec;
}

std::vector<std::size_t> rank_profile(const DynamicalFamily& family, const TimeGrid& grid,
                                      double rel_tol) {
    std::vector<std::size_t> ranks;
    ranks.reserve(grid.n_points());
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
        const QuantumChannel ch = family.evaluate(grid.at(i));
        ranks.push_back(numerical_rank(singular_values(ch.superoperator()), rel_tol));
    }
    return ranks;
}

}  // namespace backflow
