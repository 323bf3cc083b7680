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

#include <cstddef>
#include <vector>

#include "backflow/complex_matrix.hpp"
#include "backflow/tolerances.hpp"

namespace backflow {

/// Square complex matrix equal to its conjugate transpose. Construction
/// symmetrizes (m + m^dagger)/2 when the deviation is within
/// Tolerances::hermitize_accept and rejects otherwise, so downstream code can
/// rely on exact hermiticity while integrator round-off is absorbed.
class HermitianOperator {
  public:
    static HermitianOperator from_matrix(const ComplexMatrix& m,
                                         const Tolerances& tol = default_tolerances());

    /// Wraps a matrix that is hermitian by construction; symmetrizes without a
    /// tolerance gate. For kernel-internal use where the algebra guarantees it.
    static HermitianOperator from_exact(const ComplexMatrix& m);

    static HermitianOperator zero(std::size_t dim);

    std::size_t dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }

    HermitianOperator operator+(const HermitianOperator& other) const;
    HermitianOperator operator-(const HermitianOperator& other) const;
    HermitianOperator scaled(double factor) const;

    double trace_real() const;

  private:
    explicit HermitianOperator(ComplexMatrix m) : mat_(std::move(m)) {}
    ComplexMatrix mat_;
};

/// Positive semidefinite, unit-trace hermitian operator. Construction
/// renormalizes the trace when within Tolerances::trace_accept and checks the
/// spectrum against Tolerances::density_psd.
class DensityOperator {
  public:
    static DensityOperator from_matrix(const ComplexMatrix& m,
                                       const Tolerances& tol = default_tolerances());
    static DensityOperator maximally_mixed(std::size_t dim);
    /// Projector onto the (normalized) vector given as an n x 1 column.
    static DensityOperator pure(const ComplexMatrix& ket);

    std::size_t dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }
    HermitianOperator hermitian() const { return HermitianOperator::from_exact(mat_); }

  private:
    explicit DensityOperator(ComplexMatrix m) : mat_(std::move(m)) {}
    ComplexMatrix mat_;
};

/// Full eigensystem of a hermitian operator: eigenvalues ascending,
/// eigenvectors the matching orthonormal columns.
struct EigenSystem {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Cyclic Jacobi eigensolver for complex hermitian matrices. Residuals
/// ||Hv - lambda v|| stay below ~1e-14 * ||H|| at the sizes used here (<= 72).
EigenSystem hermitian_eig(const HermitianOperator& h);

/// Eigenvalues only, ascending.
std::vector<double> hermitian_eigenvalues(const HermitianOperator& h);

double min_eigenvalue(const HermitianOperator& h);
bool is_psd(const HermitianOperator& h, double tol);

/// Trace norm (sum of |eigenvalues|) of a hermitian operator.
double trace_norm(const HermitianOperator& h);

/// Singular values of a general matrix, descending. Computed from the
/// hermitian eigenproblem of the bordered matrix [[0, m], [m^dagger, 0]], which
/// resolves small singular values down to machine scale (the m^dagger m route
/// squares the condition number and cannot).
std::vector<double> singular_values(const ComplexMatrix& m);

/// sigma_max / sigma_min from a singular value list; infinity when singular.
double condition_number(const std::vector<double>& sigma);

/// Count of singular values above rel_tol * sigma_max.
std::size_t numerical_rank(const std::vector<double>& sigma, double rel_tol);

/// Real-span Gram-Schmidt for hermitian operators under the Hilbert-Schmidt
/// inner product; drops directions whose residual norm falls below drop_tol.
std::vector<HermitianOperator> orthonormalize_hermitian(
    const std::vector<HermitianOperator>& ops, double drop_tol = 1e-10);

}  // namespace backflow
