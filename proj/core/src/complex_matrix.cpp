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

#include "backflow/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "backflow/errors.hpp"

namespace backflow {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()) + " differ");
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (auto& x : data_) x *= scalar;
    return *this;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
    ComplexMatrix out = *this;
    out += other;
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
    ComplexMatrix out = *this;
    out -= other;
    return out;
}

ComplexMatrix ComplexMatrix::operator-() const {
    ComplexMatrix out = *this;
    for (auto& x : out.data_) x = -x;
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
    if (cols_ != other.rows_) {
        throw DimensionMismatch("operator*: inner dimensions " + std::to_string(cols_) + " and " +
                                std::to_string(other.rows_) + " differ");
    }
    ComplexMatrix out(rows_, other.cols_);
    // i-k-j loop order keeps both operands streaming row-major.
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            const Complex* brow = &other.data_[k * other.cols_];
            Complex* orow = &out.data_[i * other.cols_];
            for (std::size_t j = 0; j < other.cols_; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out = *this;
    for (auto& x : out.data_) x = std::conj(x);
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) throw DimensionMismatch("trace: matrix is not square");
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : data_) s += std::norm(x);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, std::abs(x));
    return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    require_same_shape(*this, other, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - other.data_[i]));
    return m;
}

ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m) {
    ComplexMatrix out = m;
    out *= scalar;
    return out;
}

ComplexMatrix operator*(double scalar, const ComplexMatrix& m) {
    return Complex{scalar, 0.0} * m;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Subsystem keep) {
    const std::size_t n = dim_a * dim_b;
    if (m.rows() != n || m.cols() != n) {
        throw DimensionMismatch("partial_trace: operator is not " + std::to_string(n) + "x" +
                                std::to_string(n));
    }
    if (keep == Subsystem::A) {
        ComplexMatrix out(dim_a, dim_a);
        for (std::size_t i = 0; i < dim_a; ++i)
            for (std::size_t j = 0; j < dim_a; ++j) {
                Complex s{0.0, 0.0};
                for (std::size_t b = 0; b < dim_b; ++b) s += m(i * dim_b + b, j * dim_b + b);
                out(i, j) = s;
            }
        return out;
    }
    ComplexMatrix out(dim_b, dim_b);
    for (std::size_t k = 0; k < dim_b; ++k)
        for (std::size_t l = 0; l < dim_b; ++l) {
            Complex s{0.0, 0.0};
            for (std::size_t a = 0; a < dim_a; ++a) s += m(a * dim_b + k, a * dim_b + l);
            out(k, l) = s;
        }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                Subsystem which) {
    const std::size_t n = dim_a * dim_b;
    if (m.rows() != n || m.cols() != n) {
        throw DimensionMismatch("partial_transpose: operator is not " + std::to_string(n) + "x" +
                                std::to_string(n));
    }
    ComplexMatrix out(n, n);
    for (std::size_t a = 0; a < dim_a; ++a)
        for (std::size_t b = 0; b < dim_a; ++b)
            for (std::size_t k = 0; k < dim_b; ++k)
                for (std::size_t l = 0; l < dim_b; ++l) {
                    if (which == Subsystem::A)
                        out(b * dim_b + k, a * dim_b + l) = m(a * dim_b + k, b * dim_b + l);
                    else
                        out(a * dim_b + l, b * dim_b + k) = m(a * dim_b + k, b * dim_b + l);
                }
    return out;
}

ComplexMatrix vectorize(const ComplexMatrix& m) {
    ComplexMatrix v(m.rows() * m.cols(), 1);
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r) v(c * m.rows() + r, 0) = m(r, c);
    return v;
}

ComplexMatrix devectorize(const ComplexMatrix& v, std::size_t rows, std::size_t cols) {
    if (v.cols() != 1 || v.rows() != rows * cols) {
        throw DimensionMismatch("devectorize: expected a " + std::to_string(rows * cols) +
                                "-entry column vector");
    }
    ComplexMatrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = v(c * rows + r, 0);
    return m;
}

ComplexMatrix gauss_inverse(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("gauss_inverse: matrix is not square");
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    const double scale = std::max(m.max_abs(), 1e-300);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best <= scale * 1e-15 * static_cast<double>(n)) {
            throw SingularMap("gauss_inverse: pivot collapsed at column " + std::to_string(col));
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(pivot, c), a(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        const Complex d = a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) /= d;
            inv(col, c) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Complex f = a(r, col);
            if (f == Complex{0.0, 0.0}) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

}  // namespace backflow
