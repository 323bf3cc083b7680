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

#include "backflow/random.hpp"

#include <cmath>

#include "backflow/channel.hpp"
#include "backflow/errors.hpp"

namespace backflow {

double Rng::uniform() {
    // 53-bit mantissa in (0, 1]; never returns 0 so log() is safe.
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Complex Rng::complex_gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-std::log(u1));
    return Complex{radius * std::cos(2.0 * M_PI * u2), radius * std::sin(2.0 * M_PI * u2)};
}

ComplexMatrix Rng::ginibre(std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_gaussian();
    return m;
}

ComplexMatrix Rng::random_ket(std::size_t dim) {
    ComplexMatrix v = ginibre(dim, 1);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) norm2 += std::norm(v(i, 0));
    v *= Complex{1.0 / std::sqrt(norm2), 0.0};
    return v;
}

DensityOperator Rng::random_density(std::size_t dim) {
    const ComplexMatrix g = ginibre(dim, dim);
    ComplexMatrix m = g * g.adjoint();
    m *= Complex{1.0 / m.trace().real(), 0.0};
    return DensityOperator::from_matrix(m);
}

HermitianOperator Rng::random_hermitian(std::size_t dim) {
    const ComplexMatrix g = ginibre(dim, dim);
    ComplexMatrix m = Complex{0.5, 0.0} * (g + g.adjoint());
    const double norm = m.frobenius_norm();
    if (norm > 0.0) m *= Complex{1.0 / norm, 0.0};
    return HermitianOperator::from_exact(m);
}

namespace {

// Orthonormalize the columns of m in place (two Gram-Schmidt passes).
void orthonormalize_columns(ComplexMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    for (std::size_t j = 0; j < cols; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex overlap{0.0, 0.0};
                for (std::size_t r = 0; r < rows; ++r) overlap += std::conj(m(r, k)) * m(r, j);
                for (std::size_t r = 0; r < rows; ++r) m(r, j) -= overlap * m(r, k);
            }
        }
        double norm2 = 0.0;
        for (std::size_t r = 0; r < rows; ++r) norm2 += std::norm(m(r, j));
        if (norm2 <= 0.0) throw InvalidOperator("orthonormalize_columns: rank deficient sample");
        const Complex inv{1.0 / std::sqrt(norm2), 0.0};
        for (std::size_t r = 0; r < rows; ++r) m(r, j) *= inv;
    }
}

}  // namespace

ComplexMatrix Rng::random_unitary(std::size_t dim) {
    ComplexMatrix m = ginibre(dim, dim);
    orthonormalize_columns(m);
    return m;
}

QuantumChannel Rng::random_cptp(std::size_t dim, std::size_t kraus_count) {
    // Random isometry V: C^d -> C^(k d); its d x d blocks are Kraus operators
    // with sum K^dagger K = V^dagger V = I.
    ComplexMatrix v = ginibre(dim * kraus_count, dim);
    orthonormalize_columns(v);
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(kraus_count);
    for (std::size_t i = 0; i < kraus_count; ++i) {
        ComplexMatrix k(dim, dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) k(r, c) = v(i * dim + r, c);
        kraus.push_back(std::move(k));
    }
    return QuantumChannel::from_kraus(kraus);
}

std::uint64_t Rng::mix(std::uint64_t seed, std::uint64_t tag) {
    // splitmix64 finalizer over the combined words.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace backflow
