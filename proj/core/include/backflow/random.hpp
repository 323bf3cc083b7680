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
#include <random>
#include <vector>

#include "backflow/complex_matrix.hpp"
#include "backflow/operator_core.hpp"

namespace backflow {

class QuantumChannel;

/// Deterministic sampler for test fixtures and sampled predicates. Gaussian
/// variates come from an explicit Box-Muller transform on mt19937_64 output,
/// so identical seeds give identical streams on every platform (std::
/// distributions are implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on (0, 1].
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    double gaussian();
    Complex complex_gaussian();

    /// Matrix with i.i.d. standard complex Gaussian entries.
    ComplexMatrix ginibre(std::size_t rows, std::size_t cols);

    /// Haar-random pure state as an n x 1 column.
    ComplexMatrix random_ket(std::size_t dim);

    /// Full-rank state from the Hilbert-Schmidt construction G G^dagger / tr.
    DensityOperator random_density(std::size_t dim);

    /// Random hermitian operator with Gaussian entries, Frobenius-normalized.
    HermitianOperator random_hermitian(std::size_t dim);

    /// Haar-distributed unitary via Gram-Schmidt of a Ginibre matrix.
    ComplexMatrix random_unitary(std::size_t dim);

    /// Random CPTP channel from a random isometry with kraus_count Kraus
    /// operators.
    QuantumChannel random_cptp(std::size_t dim, std::size_t kraus_count);

    /// Derive an independent stream deterministically from this seed and a tag.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t tag);

  private:
    std::mt19937_64 engine_;
};

}  // namespace backflow
