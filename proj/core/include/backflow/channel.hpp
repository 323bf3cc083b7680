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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "backflow/complex_matrix.hpp"
#include "backflow/operator_core.hpp"
#include "backflow/tolerances.hpp"

namespace backflow {

class QuantumChannel;

/// State representation of a channel: (I (x) map) applied to the normalized
/// maximally entangled state, ancilla factor first. Trace 1 for TP channels;
/// PSD iff the channel is CP.
struct ChoiMatrix {
    std::size_t dim_in = 0;
    std::size_t dim_out = 0;
    HermitianOperator matrix = HermitianOperator::zero(0);
};

/// Linear map on operators of a d-dimensional system, stored as its d^2 x d^2
/// superoperator acting on column-stacked operators. Immutable value type.
class QuantumChannel {
  public:
    static QuantumChannel from_superoperator(std::size_t dim, ComplexMatrix superop);
    static QuantumChannel identity(std::size_t dim);
    static QuantumChannel from_kraus(const std::vector<ComplexMatrix>& kraus);
    /// Conjugation by a unitary: X -> U X U^dagger.
    static QuantumChannel unitary(const ComplexMatrix& u);
    /// X -> tr(X) I/d.
    static QuantumChannel completely_depolarizing(std::size_t dim);
    /// X -> X^T (positive but not CP; the standard non-CP probe).
    static QuantumChannel transpose_map(std::size_t dim);
    /// Qubit channel acting diagonally on the Pauli basis: I -> I,
    /// sigma_i -> lambda_i sigma_i.
    static QuantumChannel pauli_diagonal(double l1, double l2, double l3);

    std::size_t dim() const { return dim_; }
    const ComplexMatrix& superoperator() const { return superop_; }

    HermitianOperator apply(const HermitianOperator& h) const;
    DensityOperator apply(const DensityOperator& rho,
                          const Tolerances& tol = default_tolerances()) const;
    /// Raw action on an arbitrary operator (no hermiticity assumed).
    ComplexMatrix apply_matrix(const ComplexMatrix& m) const;

    /// Pauli-basis eigenvalues (lambda_1, lambda_2, lambda_3) when this qubit
    /// channel is diagonal in the Pauli basis within tol, else nullopt.
    std::optional<std::array<double, 3>> pauli_eigenvalues(double tol = 1e-10) const;

  private:
    QuantumChannel(std::size_t dim, ComplexMatrix superop)
        : dim_(dim), superop_(std::move(superop)) {}
    std::size_t dim_;
    ComplexMatrix superop_;
};

ChoiMatrix to_choi(const QuantumChannel& c);
QuantumChannel from_choi(const ChoiMatrix& ch);

/// a after b (apply b first).
QuantumChannel compose(const QuantumChannel& a, const QuantumChannel& b);

/// Superoperator inverse. Throws SingularMap when sigma_min is at machine
/// scale relative to sigma_max, IllConditioned when the condition number
/// exceeds cond_limit.
QuantumChannel inverse(const QuantumChannel& c, double cond_limit);

/// I_k (x) c on the enlarged system (ancilla factor first).
QuantumChannel extend_with_identity(const QuantumChannel& c, std::size_t ancilla_dim);

struct CpVerdict {
    bool verdict;
    double min_choi_eig;
};

CpVerdict is_cp(const QuantumChannel& c, double tol);
bool is_tp(const QuantumChannel& c, double tol);

/// Heuristic necessary positivity check: false if any of n_samples random
/// pure-state projectors maps to an operator with an eigenvalue below -tol.
/// A true verdict is evidence, not proof.
bool is_positive_sampled(const QuantumChannel& c, std::size_t n_samples, double tol,
                         std::uint64_t seed);

/// Exact positivity criterion for unital qubit Pauli-diagonal maps:
/// positive iff |lambda_i| <= 1 for all i.
bool pauli_positivity(double l1, double l2, double l3);

}  // namespace backflow
