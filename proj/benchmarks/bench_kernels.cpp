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

// Microbenchmarks for the scan kernels: the eigensolver, Choi classification,
// intermediate-map inversion, and witness construction dominate scan time.

#include <benchmark/benchmark.h>

#include "backflow/divisibility.hpp"
#include "backflow/dynamics.hpp"
#include "backflow/random.hpp"
#include "backflow/witness.hpp"

using namespace backflow;

namespace {

void BM_HermitianEig(benchmark::State& state) {
    Rng rng(1);
    const HermitianOperator h = rng.random_hermitian(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto es = hermitian_eig(h);
        benchmark::DoNotOptimize(es.values.data());
    }
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(6)->Arg(16)->Arg(36);

void BM_TraceNorm(benchmark::State& state) {
    Rng rng(2);
    const HermitianOperator h = rng.random_hermitian(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace_norm(h));
    }
}
BENCHMARK(BM_TraceNorm)->Arg(6)->Arg(36);

void BM_SingularValues(benchmark::State& state) {
    Rng rng(3);
    const ComplexMatrix m = rng.ginibre(static_cast<std::size_t>(state.range(0)),
                                        static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto sigma = singular_values(m);
        benchmark::DoNotOptimize(sigma.data());
    }
}
BENCHMARK(BM_SingularValues)->Arg(4)->Arg(16);

void BM_ChoiClassification(benchmark::State& state) {
    Rng rng(4);
    const QuantumChannel c = rng.random_cptp(2, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_cp(c, 1e-9).min_choi_eig);
    }
}
BENCHMARK(BM_ChoiClassification);

void BM_IntermediateMap(benchmark::State& state) {
    const DynamicalFamily family = model_pauli_eternal();
    (void)family.evaluate(0.5);
    (void)family.evaluate(0.51);
    for (auto _ : state) {
        const IntermediateMap v = intermediate_map(family, 0.5, 0.51, 1e8);
        benchmark::DoNotOptimize(v.channel.superoperator().data().data());
    }
}
BENCHMARK(BM_IntermediateMap);

void BM_ScanStep(benchmark::State& state) {
    const DynamicalFamily family = model_pauli_eternal();
    const TimeGrid grid(0.1, 0.2, 2);
    ScanOptions options;
    options.check_positivity = false;
    for (auto _ : state) {
        const DivisibilityReport report = scan_cp_divisibility(family, grid, options);
        benchmark::DoNotOptimize(report.steps.data());
    }
}
BENCHMARK(BM_ScanStep);

void BM_ConstructWitness(benchmark::State& state) {
    const DynamicalFamily family = model_pauli_eternal();
    (void)family.evaluate(0.5);
    for (auto _ : state) {
        const WitnessPair pair = construct_witness(family, 0.5, 0.9);
        benchmark::DoNotOptimize(pair.p);
    }
}
BENCHMARK(BM_ConstructWitness);

void BM_VerifyWitness(benchmark::State& state) {
    const DynamicalFamily family = model_pauli_eternal();
    const WitnessPair pair = construct_witness(family, 0.5, 0.9);
    (void)family.evaluate(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_witness(family, pair, 1.0).gain);
    }
}
BENCHMARK(BM_VerifyWitness);

void BM_Rk4StepsPerUnitTime(benchmark::State& state) {
    const GeneratorSpec spec = pauli_generator(
        [](double) { return 1.0; }, [](double) { return 1.0; },
        [](double t) { return -std::tanh(t); });
    for (auto _ : state) {
        const DynamicalFamily f = integrate_generator(spec, TimeGrid(0.0, 1.0, 3));
        benchmark::DoNotOptimize(f.evaluate(1.0).superoperator().data().data());
    }
    state.SetItemsProcessed(state.iterations() * 1000);  // steps at the default 1e-3
}
BENCHMARK(BM_Rk4StepsPerUnitTime);

}  // namespace

BENCHMARK_MAIN();
