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

#include "backflow/channel.hpp"

#include <cmath>
#include <string>

#include "backflow/errors.hpp"
#include "backflow/random.hpp"

namespace backflow {

namespace {

ComplexMatrix pauli(int i) {
    ComplexMatrix m(2, 2);
    switch (i) {
        case 0:
            m(0, 0) = 1.0;
            m(1, 1) = 1.0;
            break;
        case 1:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case 2:
            m(0, 1) = Complex{0.0, -1.0};
            m(1, 0) = Complex{0.0, 1.0};
            break;
        default:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
    }
    return m;
}

}  // namespace

QuantumChannel QuantumChannel::from_superoperator(std::size_t dim, ComplexMatrix superop) {
    const std::size_t d2 = dim * dim;
    if (superop.rows() != d2 || superop.cols() != d2) {
        throw DimensionMismatch("QuantumChannel: superoperator is not " + std::to_string(d2) +
                                "x" + std::to_string(d2));
    }
    return QuantumChannel(dim, std::move(superop));
}

QuantumChannel QuantumChannel::identity(std::size_t dim) {
    return QuantumChannel(dim, ComplexMatrix::identity(dim * dim));
}

QuantumChannel QuantumChannel::from_kraus(const std::vector<ComplexMatrix>& kraus) {
    if (kraus.empty()) throw DimensionMismatch("from_kraus: empty Kraus list");
    const std::size_t d = kraus.front().rows();
    ComplexMatrix superop(d * d, d * d);
    for (const auto& k : kraus) {
        if (k.rows() != d || k.cols() != d) {
            throw DimensionMismatch("from_kraus: Kraus operators must share one square shape");
        }
        // Column stacking: X -> K X K^dagger has superoperator conj(K) (x) K.
        superop += tensor(k.conjugate(), k);
    }
    return QuantumChannel(d, std::move(superop));
}

QuantumChannel QuantumChannel::unitary(const ComplexMatrix& u) {
    if (!u.is_square()) throw DimensionMismatch("unitary: matrix is not square");
    return from_kraus({u});
}

QuantumChannel QuantumChannel::completely_depolarizing(std::size_t dim) {
    // superop = vec(I/d) vec(I)^dagger.
    const ComplexMatrix vi = vectorize(ComplexMatrix::identity(dim));
    ComplexMatrix superop(dim * dim, dim * dim);
    const double inv_d = 1.0 / static_cast<double>(dim);
    for (std::size_t r = 0; r < superop.rows(); ++r)
        for (std::size_t c = 0; c < superop.cols(); ++c)
            superop(r, c) = inv_d * vi(r, 0) * std::conj(vi(c, 0));
    return QuantumChannel(dim, std::move(superop));
}

QuantumChannel QuantumChannel::transpose_map(std::size_t dim) {
    ComplexMatrix superop(dim * dim, dim * dim);
    // vec(X^T)[c*d + r] = X(c, r) = vec(X)[r*d + c].
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) superop(c * dim + r, r * dim + c) = 1.0;
    return QuantumChannel(dim, std::move(superop));
}

QuantumChannel QuantumChannel::pauli_diagonal(double l1, double l2, double l3) {
    const double lambda[4] = {1.0, l1, l2, l3};
    ComplexMatrix superop(4, 4);
    for (int mu = 0; mu < 4; ++mu) {
        const ComplexMatrix v = vectorize(pauli(mu));
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                superop(r, c) += Complex{0.5 * lambda[mu], 0.0} * v(r, 0) * std::conj(v(c, 0));
    }
    return QuantumChannel(2, std::move(superop));
}

ComplexMatrix QuantumChannel::apply_matrix(const ComplexMatrix& m) const {
    if (m.rows() != dim_ || m.cols() != dim_) {
        throw DimensionMismatch("apply: operator dimension " + std::to_string(m.rows()) +
                                " does not match channel dimension " + std::to_string(dim_));
    }
    return devectorize(superop_ * vectorize(m), dim_, dim_);
}

HermitianOperator QuantumChannel::apply(const HermitianOperator& h) const {
    return HermitianOperator::from_exact(apply_matrix(h.matrix()));
}

DensityOperator QuantumChannel::apply(const DensityOperator& rho, const Tolerances& tol) const {
    return DensityOperator::from_matrix(apply_matrix(rho.matrix()), tol);
}

std::optional<std::array<double, 3>> QuantumChannel::pauli_eigenvalues(double tol) const {
    if (dim_ != 2) return std::nullopt;
    std::array<double, 3> lambda{};
    for (int i = 1; i <= 3; ++i) {
        const ComplexMatrix sigma = pauli(i);
        const ComplexMatrix image = apply_matrix(sigma);
        // Diagonal coefficient in the (orthogonal) Pauli basis.
        const Complex coeff = (sigma.adjoint() * image).trace() * Complex{0.5, 0.0};
        ComplexMatrix residual = image - coeff * sigma;
        if (residual.max_abs() > tol || std::abs(coeff.imag()) > tol) return std::nullopt;
        lambda[static_cast<std::size_t>(i - 1)] = coeff.real();
    }
    // Must also fix the identity component: unital and trace preserving.
    const ComplexMatrix id_image = apply_matrix(ComplexMatrix::identity(2));
    if (id_image.max_abs_diff(ComplexMatrix::identity(2)) > tol) return std::nullopt;
    return lambda;
}

ChoiMatrix to_choi(const QuantumChannel& c) {
    const std::size_t d = c.dim();
    const ComplexMatrix& s = c.superoperator();
    ComplexMatrix choi(d * d, d * d);
    const double inv_d = 1.0 / static_cast<double>(d);
    // choi[(i d + r), (j d + s')] = (1/d) * S[(s' d + r), (j d + i)]
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t sp = 0; sp < d; ++sp)
                    choi(i * d + r, j * d + sp) = inv_d * s(sp * d + r, j * d + i);
    ChoiMatrix out;
    out.dim_in = d;
    out.dim_out = d;
    out.matrix = HermitianOperator::from_exact(choi);
    return out;
}

QuantumChannel from_choi(const ChoiMatrix& ch) {
    const std::size_t d = ch.dim_in;
    if (ch.dim_out != d) throw DimensionMismatch("from_choi: only square channels supported");
    const ComplexMatrix& choi = ch.matrix.matrix();
    ComplexMatrix s(d * d, d * d);
    const double scale = static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t sp = 0; sp < d; ++sp)
                    s(sp * d + r, j * d + i) = scale * choi(i * d + r, j * d + sp);
    return QuantumChannel::from_superoperator(d, std::move(s));
}

QuantumChannel compose(const QuantumChannel& a, const QuantumChannel& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("compose: channel dimensions differ");
    return QuantumChannel::from_superoperator(a.dim(), a.superoperator() * b.superoperator());
}

QuantumChannel inverse(const QuantumChannel& c, double cond_limit) {
    const std::vector<double> sigma = singular_values(c.superoperator());
    if (sigma.empty() || sigma.back() <= sigma.front() * default_tolerances().singular_rel) {
        throw SingularMap("inverse: superoperator is numerically singular (sigma_min/sigma_max <= " +
                          std::to_string(default_tolerances().singular_rel) + ")");
    }
    const double cond = sigma.front() / sigma.back();
    if (cond > cond_limit) {
        throw IllConditioned("inverse: condition number " + std::to_string(cond) +
                             " exceeds limit " + std::to_string(cond_limit));
    }
    return QuantumChannel::from_superoperator(c.dim(), gauss_inverse(c.superoperator()));
}

QuantumChannel extend_with_identity(const QuantumChannel& c, std::size_t ancilla_dim) {
    const std::size_t d = c.dim();
    const std::size_t k = ancilla_dim;
    const std::size_t n = k * d;
    const ComplexMatrix& s = c.superoperator();
    ComplexMatrix out(n * n, n * n);
    // (I_k (x) map) acts blockwise: row/column index pairs (a, r), (b, s') on
    // the enlarged space, ancilla indices untouched.
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t sp = 0; sp < d; ++sp)
                    for (std::size_t r2 = 0; r2 < d; ++r2)
                        for (std::size_t s2 = 0; s2 < d; ++s2) {
                            const Complex val = s(sp * d + r, s2 * d + r2);
                            if (val == Complex{0.0, 0.0}) continue;
                            const std::size_t row = (b * d + sp) * n + (a * d + r);
                            const std::size_t col = (b * d + s2) * n + (a * d + r2);
                            out(row, col) = val;
                        }
    return QuantumChannel::from_superoperator(n, std::move(out));
}

CpVerdict is_cp(const QuantumChannel& c, double tol) {
    const double lo = min_eigenvalue(to_choi(c).matrix);
    return CpVerdict{lo >= -tol, lo};
}

bool is_tp(const QuantumChannel& c, double tol) {
    const ChoiMatrix choi = to_choi(c);
    const ComplexMatrix reduced =
        partial_trace(choi.matrix.matrix(), c.dim(), c.dim(), Subsystem::A);
    ComplexMatrix target = ComplexMatrix::identity(c.dim());
    target *= Complex{1.0 / static_cast<double>(c.dim()), 0.0};
    return reduced.max_abs_diff(target) <= tol;
}

bool is_positive_sampled(const QuantumChannel& c, std::size_t n_samples, double tol,
                         std::uint64_t seed) {
    Rng rng(seed);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const DensityOperator rho = DensityOperator::pure(rng.random_ket(c.dim()));
        const HermitianOperator image = c.apply(rho.hermitian());
        if (min_eigenvalue(image) < -tol) return false;
    }
    return true;
}

bool pauli_positivity(double l1, double l2, double l3) {
    return std::abs(l1) <= 1.0 && std::abs(l2) <= 1.0 && std::abs(l3) <= 1.0;
}

}  // namespace backflow
