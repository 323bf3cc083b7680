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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "backflow/errors.hpp"
#include "backflow/operator_core.hpp"
#include "backflow/random.hpp"
#include "test_helpers.hpp"

using namespace backflow;
using namespace backflow::testing;

TEST_SUITE_BEGIN("operator_core");

TEST_CASE("tensor: identity and diagonal cases") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK(tensor(i2, i2).max_abs_diff(ComplexMatrix::identity(4)) == 0.0);

    const ComplexMatrix lhs = diag({1.0, 0.0});
    const ComplexMatrix rhs = diag({0.0, 1.0});
    CHECK(tensor(lhs, rhs).max_abs_diff(diag({0.0, 1.0, 0.0, 0.0})) == 0.0);
}

TEST_CASE("tensor: random pair matches the four-nested-loop product") {
    Rng rng(11);
    const ComplexMatrix a = rng.ginibre(2, 2);
    const ComplexMatrix b = rng.ginibre(2, 2);
    const ComplexMatrix k = tensor(a, b);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t p = 0; p < 2; ++p)
                for (std::size_t q = 0; q < 2; ++q)
                    CHECK(std::abs(k(i * 2 + p, j * 2 + q) - a(i, j) * b(p, q)) == 0.0);
}

TEST_CASE("tensor: bilinear in both arguments") {
    Rng rng(12);
    const ComplexMatrix a = rng.ginibre(2, 3), b = rng.ginibre(2, 3);
    const ComplexMatrix c = rng.ginibre(3, 2);
    const Complex alpha{0.7, -0.3};
    ComplexMatrix lhs = tensor(alpha * a + b, c);
    ComplexMatrix rhs = alpha * tensor(a, c) + tensor(b, c);
    CHECK(lhs.max_abs_diff(rhs) < 1e-14);
    lhs = tensor(c, alpha * a + b);
    rhs = alpha * tensor(c, a) + tensor(c, b);
    CHECK(lhs.max_abs_diff(rhs) < 1e-14);
}

TEST_CASE("partial_trace: product state reduces to marginal") {
    Rng rng(13);
    const ComplexMatrix rho = rng.random_density(2).matrix();
    const ComplexMatrix tau = rng.random_density(3).matrix();
    const ComplexMatrix keep_a = partial_trace(tensor(rho, tau), 2, 3, Subsystem::A);
    CHECK(keep_a.max_abs_diff(rho) < 1e-14);
    const ComplexMatrix keep_b = partial_trace(tensor(rho, tau), 2, 3, Subsystem::B);
    CHECK(keep_b.max_abs_diff(tau) < 1e-14);
}

TEST_CASE("partial_trace: maximally entangled state reduces to I/2") {
    // Normalized phi+ on C^2 (x) C^2.
    ComplexMatrix phi(4, 4);
    phi(0, 0) = phi(0, 3) = phi(3, 0) = phi(3, 3) = 0.5;
    ComplexMatrix half = ComplexMatrix::identity(2);
    half *= Complex{0.5, 0.0};
    CHECK(partial_trace(phi, 2, 2, Subsystem::A).max_abs_diff(half) == 0.0);
    CHECK(partial_trace(phi, 2, 2, Subsystem::B).max_abs_diff(half) == 0.0);
}

TEST_CASE("partial_trace: random 6x6 PSD matches the index-contraction oracle") {
    Rng rng(14);
    const ComplexMatrix g = rng.ginibre(6, 6);
    const ComplexMatrix m = g * g.adjoint();
    const ComplexMatrix got = partial_trace(m, 2, 3, Subsystem::A);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Complex expect{0.0, 0.0};
            for (std::size_t b = 0; b < 3; ++b) expect += m(i * 3 + b, j * 3 + b);
            CHECK(std::abs(got(i, j) - expect) < 1e-12);
        }
    // Trace preservation.
    CHECK(std::abs(got.trace() - m.trace()) < 1e-12);
    CHECK(std::abs(partial_trace(m, 2, 3, Subsystem::B).trace() - m.trace()) < 1e-12);
}

TEST_CASE("hermitian_eig: known spectra") {
    const auto d = hermitian_eig(HermitianOperator::from_exact(diag({3.0, 1.0, 2.0})));
    REQUIRE(d.values.size() == 3);
    CHECK(d.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.values[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(d.values[2] == doctest::Approx(3.0).epsilon(1e-14));

    const auto x = hermitian_eig(HermitianOperator::from_exact(pauli_x()));
    CHECK(x.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(x.values[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig: residual and orthonormality on random 6x6") {
    Rng rng(15);
    for (int rep = 0; rep < 5; ++rep) {
        const HermitianOperator h = rng.random_hermitian(6);
        const EigenSystem es = hermitian_eig(h);
        const double scale = h.matrix().frobenius_norm();
        for (std::size_t j = 0; j < 6; ++j) {
            ComplexMatrix v(6, 1);
            for (std::size_t i = 0; i < 6; ++i) v(i, 0) = es.vectors(i, j);
            ComplexMatrix residual = h.matrix() * v;
            residual -= Complex{es.values[j], 0.0} * v;
            CHECK(residual.frobenius_norm() < 1e-10 * std::max(scale, 1.0));
        }
        const ComplexMatrix gram = es.vectors.adjoint() * es.vectors;
        CHECK(gram.max_abs_diff(ComplexMatrix::identity(6)) < 1e-10);
        CHECK(std::is_sorted(es.values.begin(), es.values.end()));
    }
}

TEST_CASE("trace_norm: diag(1,-1) and the orthogonal reference pair") {
    CHECK(trace_norm(HermitianOperator::from_exact(diag({1.0, -1.0}))) ==
          doctest::Approx(2.0).epsilon(1e-14));

    // phi+ embedded in the 2-dimensional ancilla block of C^3 (x) C^2 minus
    // the flag state |3><3| (x) I/2: orthogonal supports, trace norm 2.
    ComplexMatrix delta = embedded_phi_plus(3, 2);
    delta(4, 4) -= 0.5;
    delta(5, 5) -= 0.5;
    CHECK(trace_norm(HermitianOperator::from_exact(delta)) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("trace_norm: equals the nuclear norm from the singular-value route") {
    Rng rng(16);
    for (int rep = 0; rep < 5; ++rep) {
        const HermitianOperator h = rng.random_hermitian(5);
        double nuclear = 0.0;
        for (double s : singular_values(h.matrix())) nuclear += s;
        CHECK(trace_norm(h) == doctest::Approx(nuclear).epsilon(1e-10));
    }
}

TEST_CASE("trace_norm: unitary invariance and triangle inequality") {
    Rng rng(17);
    const HermitianOperator h1 = rng.random_hermitian(4);
    const HermitianOperator h2 = rng.random_hermitian(4);
    const ComplexMatrix u = rng.random_unitary(4);
    const HermitianOperator rotated =
        HermitianOperator::from_exact(u * h1.matrix() * u.adjoint());
    CHECK(trace_norm(rotated) == doctest::Approx(trace_norm(h1)).epsilon(1e-10));
    CHECK(trace_norm(h1 + h2) <= trace_norm(h1) + trace_norm(h2) + 1e-12);
}

TEST_CASE("trace_norm: additive on orthogonally supported PSD operators") {
    Rng rng(18);
    ComplexMatrix a(5, 5), b(5, 5);
    const ComplexMatrix ga = rng.ginibre(2, 2), gb = rng.ginibre(3, 3);
    const ComplexMatrix pa = ga * ga.adjoint(), pb = gb * gb.adjoint();
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) a(i, j) = pa(i, j);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) b(2 + i, 2 + j) = pb(i, j);
    const double expect = pa.trace().real() + pb.trace().real();
    CHECK(trace_norm(HermitianOperator::from_exact(a - b)) ==
          doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("singular_values: known and random cases") {
    const auto ones = singular_values(ComplexMatrix::identity(4));
    for (double s : ones) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));

    ComplexMatrix proj(3, 3);
    proj(0, 0) = 1.0;
    const auto rank1 = singular_values(proj);
    CHECK(rank1[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rank1[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rank1[2] == doctest::Approx(0.0).epsilon(1e-12));

    Rng rng(19);
    const ComplexMatrix m = rng.ginibre(4, 4);
    const auto sigma = singular_values(m);
    // Oracle: squares are the eigenvalues of m^dagger m.
    const auto gram_eigs =
        hermitian_eigenvalues(HermitianOperator::from_exact(m.adjoint() * m));
    REQUIRE(sigma.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(sigma[i] * sigma[i] ==
              doctest::Approx(gram_eigs[3 - i]).epsilon(1e-10));
    }
    CHECK(std::is_sorted(sigma.rbegin(), sigma.rend()));

    // Rectangular input: min(rows, cols) values, same oracle.
    const ComplexMatrix rect = rng.ginibre(2, 3);
    const auto rect_sigma = singular_values(rect);
    REQUIRE(rect_sigma.size() == 2);
    const auto rect_gram =
        hermitian_eigenvalues(HermitianOperator::from_exact(rect.adjoint() * rect));
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(rect_sigma[i] * rect_sigma[i] ==
              doctest::Approx(rect_gram[2 - i]).epsilon(1e-10));
    }
}

TEST_CASE("vectorize: column-stacking convention and round trip") {
    const Complex a{1.0, 2.0}, b{3.0, -1.0}, c{0.5, 0.0}, d{-2.0, 0.25};
    const ComplexMatrix m = make_matrix(2, 2, {a, b, c, d});
    const ComplexMatrix v = vectorize(m);
    CHECK(v(0, 0) == a);
    CHECK(v(1, 0) == c);
    CHECK(v(2, 0) == b);
    CHECK(v(3, 0) == d);

    Rng rng(20);
    const ComplexMatrix r = rng.ginibre(3, 3);
    CHECK(devectorize(vectorize(r), 3, 3).max_abs_diff(r) == 0.0);
}

TEST_CASE("vectorize: vec(AXB) = (B^T (x) A) vec(X)") {
    Rng rng(21);
    for (int rep = 0; rep < 3; ++rep) {
        const ComplexMatrix a = rng.ginibre(3, 3), x = rng.ginibre(3, 3), b = rng.ginibre(3, 3);
        const ComplexMatrix lhs = vectorize(a * x * b);
        const ComplexMatrix rhs = tensor(b.transpose(), a) * vectorize(x);
        CHECK(lhs.max_abs_diff(rhs) < 1e-12);
    }
}

TEST_CASE("min_eigenvalue and is_psd") {
    ComplexMatrix omega = ComplexMatrix::identity(6);
    omega *= Complex{1.0 / 6.0, 0.0};
    CHECK(min_eigenvalue(HermitianOperator::from_exact(omega)) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-14));

    const HermitianOperator neg = HermitianOperator::from_exact(diag({1.0, -0.5}));
    CHECK(min_eigenvalue(neg) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(!is_psd(neg, 1e-9));
    CHECK(is_psd(HermitianOperator::from_exact(omega), 0.0));

    // Normalized Choi matrix of the transpose map is SWAP/2: eigenvalues
    // +1/2 (x3), -1/2.
    ComplexMatrix swap_half(4, 4);
    swap_half(0, 0) = swap_half(3, 3) = 0.5;
    swap_half(1, 2) = swap_half(2, 1) = 0.5;
    const auto eigs = hermitian_eigenvalues(HermitianOperator::from_exact(swap_half));
    CHECK(eigs.front() == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(eigs.back() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("HermitianOperator: symmetrization policy") {
    Rng rng(22);
    ComplexMatrix m = rng.random_hermitian(3).matrix();
    m(0, 1) += Complex{0.0, 1e-11};  // small defect, absorbed
    const HermitianOperator h = HermitianOperator::from_matrix(m);
    CHECK(h.matrix().max_abs_diff(h.matrix().adjoint()) == 0.0);

    m(0, 1) += Complex{1e-5, 0.0};  // too large, rejected
    CHECK_THROWS_AS((void)HermitianOperator::from_matrix(m), InvalidOperator);
}

TEST_CASE("DensityOperator: construction invariants") {
    // Trace renormalization within the acceptance window.
    ComplexMatrix m = diag({0.5, 0.5});
    m *= Complex{1.0 + 5e-7, 0.0};
    const DensityOperator rho = DensityOperator::from_matrix(m);
    CHECK(rho.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS((void)DensityOperator::from_matrix(diag({0.6, 0.6})), InvalidOperator);
    CHECK_THROWS_AS((void)DensityOperator::from_matrix(diag({1.001, -0.001})), InvalidOperator);

    const DensityOperator pure = DensityOperator::pure(make_matrix(2, 1, {1.0, 1.0}));
    CHECK(pure.matrix()(0, 1).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pure.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("dimension mismatches are rejected") {
    const ComplexMatrix m23(2, 3);
    CHECK_THROWS_AS((void)partial_trace(ComplexMatrix(5, 5), 2, 3, Subsystem::A),
                    DimensionMismatch);
    CHECK_THROWS_AS((void)devectorize(vectorize(m23), 3, 3), DimensionMismatch);
    CHECK_THROWS_AS((void)(ComplexMatrix(2, 2) * ComplexMatrix(3, 3)), DimensionMismatch);
}

TEST_SUITE_END();
