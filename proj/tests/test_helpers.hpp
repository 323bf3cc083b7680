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

#include <cmath>
#include <initializer_list>
#include <vector>

#include "backflow/complex_matrix.hpp"
#include "backflow/operator_core.hpp"

namespace backflow::testing {

inline ComplexMatrix make_matrix(std::size_t rows, std::size_t cols,
                                 std::initializer_list<Complex> entries) {
    ComplexMatrix m(rows, cols);
    std::size_t i = 0;
    for (const Complex& v : entries) {
        m(i / cols, i % cols) = v;
        ++i;
    }
    return m;
}

inline ComplexMatrix diag(std::initializer_list<double> entries) {
    ComplexMatrix m(entries.size(), entries.size());
    std::size_t i = 0;
    for (double v : entries) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

inline ComplexMatrix pauli_x() {
    return make_matrix(2, 2, {0.0, 1.0, 1.0, 0.0});
}

inline ComplexMatrix pauli_y() {
    return make_matrix(2, 2, {0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0});
}

inline ComplexMatrix pauli_z() {
    return diag({1.0, -1.0});
}

/// Normalized maximally entangled projector embedded in the first d ancilla
/// levels of C^(k) (x) C^d, built entry by entry (the test-side oracle for the
/// witness module's reference state).
inline ComplexMatrix embedded_phi_plus(std::size_t ancilla_dim, std::size_t d) {
    ComplexMatrix m(ancilla_dim * d, ancilla_dim * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m(i * d + i, j * d + j) = 1.0 / static_cast<double>(d);
    return m;
}

/// Hermitian matrix-unit basis of d x d operators (d^2 elements).
inline std::vector<ComplexMatrix> hermitian_basis(std::size_t d) {
    std::vector<ComplexMatrix> basis;
    for (std::size_t i = 0; i < d; ++i) {
        ComplexMatrix e(d, d);
        e(i, i) = 1.0;
        basis.push_back(e);
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            ComplexMatrix re(d, d), im(d, d);
            re(i, j) = re(j, i) = Complex{M_SQRT1_2, 0.0};
            im(i, j) = Complex{0.0, -M_SQRT1_2};
            im(j, i) = Complex{0.0, M_SQRT1_2};
            basis.push_back(re);
            basis.push_back(im);
        }
    return basis;
}

}  // namespace backflow::testing
