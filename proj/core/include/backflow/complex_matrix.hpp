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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace backflow {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage. The workhorse value type of the
/// linear-algebra kernel; sizes stay small (<= ~100x100) so everything is
/// plain contiguous storage with O(n^3) kernels.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Complex> data() { return data_; }
    std::span<const Complex> data() const { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    ComplexMatrix operator+(const ComplexMatrix& other) const;
    ComplexMatrix operator-(const ComplexMatrix& other) const;
    ComplexMatrix operator-() const;
    ComplexMatrix operator*(const ComplexMatrix& other) const;

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    /// Largest |entry| of (this - other); the max-abs distance used by
    /// structural invariant checks.
    double max_abs_diff(const ComplexMatrix& other) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m);
ComplexMatrix operator*(double scalar, const ComplexMatrix& m);

/// Kronecker product with a's indices outermost: (a (x) b)[(i*rb+k),(j*cb+l)] = a(i,j) b(k,l).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { A, B };

/// Partial trace of an operator on a bipartite space of dimension dim_a * dim_b
/// (factor A outermost). keep selects the surviving factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Subsystem keep);

/// Partial transpose over the selected factor of a bipartite operator.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                Subsystem which);

/// Column-stacking vectorization: entry (r,c) lands at index c*rows + r.
/// With this convention the superoperator of X -> A X B is B^T (x) A.
ComplexMatrix vectorize(const ComplexMatrix& m);
ComplexMatrix devectorize(const ComplexMatrix& v, std::size_t rows, std::size_t cols);

/// Dense inverse by Gauss-Jordan elimination with partial pivoting.
/// Throws SingularMap when a pivot collapses to machine scale.
ComplexMatrix gauss_inverse(const ComplexMatrix& m);

}  // namespace backflow
