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

#include "backflow/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "backflow/errors.hpp"

namespace backflow {

const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

namespace {

ComplexMatrix symmetrize(const ComplexMatrix& m) {
    ComplexMatrix out = Complex{0.5, 0.0} * (m + m.adjoint());
    // Force exactly real diagonal; the average above leaves 0-imaginary only
    // up to rounding of conj().
    for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) = Complex{out(i, i).real(), 0.0};
    return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
    double defect = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = r; c < m.cols(); ++c)
            defect = std::max(defect, std::abs(m(r, c) - std::conj(m(c, r))));
    return defect;
}

}  // namespace

HermitianOperator HermitianOperator::from_matrix(const ComplexMatrix& m, const Tolerances& tol) {
    if (!m.is_square()) throw DimensionMismatch("HermitianOperator: matrix is not square");
    const double defect = hermiticity_defect(m);
    const double scale = std::max(1.0, m.max_abs());
    if (defect > tol.hermitize_accept * scale) {
        throw InvalidOperator("HermitianOperator: hermiticity defect " + std::to_string(defect) +
                              " exceeds acceptance threshold");
    }
    return HermitianOperator(symmetrize(m));
}

HermitianOperator HermitianOperator::from_exact(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("HermitianOperator: matrix is not square");
    return HermitianOperator(symmetrize(m));
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
    return HermitianOperator(ComplexMatrix(dim, dim));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
    return HermitianOperator(mat_ + other.mat_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
    return HermitianOperator(mat_ - other.mat_);
}

HermitianOperator HermitianOperator::scaled(double factor) const {
    ComplexMatrix m = mat_;
    m *= Complex{factor, 0.0};
    return HermitianOperator(std::move(m));
}

double HermitianOperator::trace_real() const { return mat_.trace().real(); }

DensityOperator DensityOperator::from_matrix(const ComplexMatrix& m, const Tolerances& tol) {
    HermitianOperator h = HermitianOperator::from_matrix(m, tol);
    ComplexMatrix mat = h.matrix();
    const double tr = mat.trace().real();
    if (std::abs(tr - 1.0) > tol.trace_accept) {
        throw InvalidOperator("DensityOperator: trace " + std::to_string(tr) +
                              " too far from 1 to renormalize");
    }
    if (tr != 1.0) mat *= Complex{1.0 / tr, 0.0};
    const double lo = min_eigenvalue(HermitianOperator::from_exact(mat));
    if (lo < -tol.density_psd) {
        throw InvalidOperator("DensityOperator: minimum eigenvalue " + std::to_string(lo) +
                              " below PSD tolerance");
    }
    return DensityOperator(std::move(mat));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
    ComplexMatrix m = ComplexMatrix::identity(dim);
    m *= Complex{1.0 / static_cast<double>(dim), 0.0};
    return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::pure(const ComplexMatrix& ket) {
    if (ket.cols() != 1 || ket.rows() == 0) {
        throw DimensionMismatch("DensityOperator::pure: expected a nonempty column vector");
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < ket.rows(); ++i) norm2 += std::norm(ket(i, 0));
    if (norm2 <= 0.0) throw InvalidOperator("DensityOperator::pure: zero vector");
    ComplexMatrix m(ket.rows(), ket.rows());
    for (std::size_t r = 0; r < ket.rows(); ++r)
        for (std::size_t c = 0; c < ket.rows(); ++c)
            m(r, c) = ket(r, 0) * std::conj(ket(c, 0)) / norm2;
    return DensityOperator(std::move(m));
}

namespace {

// One cyclic Jacobi pass infrastructure: annihilate the (p,q) entry of the
// hermitian matrix a with the unitary rotation
//   R = I except R(p,p)=c, R(p,q)=s, R(q,p)=-conj(s), R(q,q)=c,
// updating a <- R^dagger a R and accumulating v <- v R.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double abs_apq = std::abs(apq);
    if (abs_apq == 0.0) return;

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const Complex phase = apq / abs_apq;

    const double tau = (aqq - app) / (2.0 * abs_apq);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const Complex s = phase * (t * c);

    const std::size_t n = a.rows();
    // Columns p and q of a*R.
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp - std::conj(s) * akq;
        a(k, q) = s * akp + c * akq;
    }
    // Rows p and q of R^dagger * (a R).
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = std::conj(s) * apk + c * aqk;
    }
    a(p, q) = Complex{0.0, 0.0};
    a(q, p) = Complex{0.0, 0.0};
    a(p, p) = Complex{a(p, p).real(), 0.0};
    a(q, q) = Complex{a(q, q).real(), 0.0};

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - std::conj(s) * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = r + 1; c < a.cols(); ++c) s += 2.0 * std::norm(a(r, c));
    return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eig(const HermitianOperator& h) {
    const std::size_t n = h.dim();
    ComplexMatrix a = h.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
    const double target = 1e-15 * scale;
    constexpr int kMaxSweeps = 60;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > target / static_cast<double>(n)) jacobi_rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const HermitianOperator& h) {
    return hermitian_eig(h).values;
}

double min_eigenvalue(const HermitianOperator& h) {
    if (h.dim() == 0) throw DimensionMismatch("min_eigenvalue: empty operator");
    return hermitian_eigenvalues(h).front();
}

bool is_psd(const HermitianOperator& h, double tol) { return min_eigenvalue(h) >= -tol; }

double trace_norm(const HermitianOperator& h) {
    double s = 0.0;
    for (double lambda : hermitian_eigenvalues(h)) s += std::abs(lambda);
    return s;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    const std::size_t k = std::min(r, c);
    if (k == 0) return {};
    ComplexMatrix b(r + c, r + c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            b(i, r + j) = m(i, j);
            b(r + j, i) = std::conj(m(i, j));
        }
    std::vector<double> ev = hermitian_eigenvalues(HermitianOperator::from_exact(b));
    // Spectrum is {+sigma_i, -sigma_i, 0...}; the top k entries are the
    // singular values in ascending order.
    std::vector<double> sigma(ev.end() - static_cast<std::ptrdiff_t>(k), ev.end());
    std::reverse(sigma.begin(), sigma.end());
    for (double& s : sigma) s = std::max(s, 0.0);
    return sigma;
}

double condition_number(const std::vector<double>& sigma) {
    if (sigma.empty()) return std::numeric_limits<double>::infinity();
    const double lo = sigma.back();
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return sigma.front() / lo;
}

std::size_t numerical_rank(const std::vector<double>& sigma, double rel_tol) {
    if (sigma.empty()) return 0;
    const double cut = sigma.front() * rel_tol;
    std::size_t rank = 0;
    for (double s : sigma)
        if (s > cut) ++rank;
    return rank;
}

std::vector<HermitianOperator> orthonormalize_hermitian(const std::vector<HermitianOperator>& ops,
                                                        double drop_tol) {
    std::vector<HermitianOperator> basis;
    for (const auto& op : ops) {
        ComplexMatrix m = op.matrix();
        // Two passes of classical Gram-Schmidt for numerical stability.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& e : basis) {
                // <e, m> is real because both are hermitian.
                Complex overlap{0.0, 0.0};
                const auto& em = e.matrix();
                for (std::size_t r = 0; r < m.rows(); ++r)
                    for (std::size_t c = 0; c < m.cols(); ++c)
                        overlap += std::conj(em(r, c)) * m(r, c);
                m -= Complex{overlap.real(), 0.0} * e.matrix();
            }
        }
        const double norm = m.frobenius_norm();
        if (norm > drop_tol) {
            m *= Complex{1.0 / norm, 0.0};
            basis.push_back(HermitianOperator::from_exact(m));
        }
    }
    return basis;
}

}  // namespace backflow
