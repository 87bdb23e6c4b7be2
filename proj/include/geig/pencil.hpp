// Copyright 2026 The geig Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file pencil.hpp
 * The pencil (A, B) of a generalized eigenvalue problem A|psi> = lambda B|psi>.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "pauli.hpp"

namespace geig {

/// A and B as Pauli sums on the same register. Positive definiteness of B
/// is checked by the reference solver, not here.
struct Pencil {
    PauliSum a;
    PauliSum b;

    Pencil(PauliSum a_in, PauliSum b_in) : a(std::move(a_in)), b(std::move(b_in)) {
        if (a.num_qubits() != b.num_qubits()) {
            throw std::invalid_argument("Pencil: A acts on " +
                                        std::to_string(a.num_qubits()) +
                                        " qubits but B on " +
                                        std::to_string(b.num_qubits()));
        }
    }

    [[nodiscard]] std::size_t num_qubits() const { return a.num_qubits(); }
};

/// The two-qubit pencil used throughout the documentation and tests:
///   A = II + 0.4 ZI + 0.4 IZ + 0.2 XX,  B = II + 0.3 ZI + 0.4 IZ + 0.2 ZZ.
inline Pencil two_qubit_demo_pencil() {
    return {PauliSum::from_text({{1.0, "II"}, {0.4, "ZI"}, {0.4, "IZ"}, {0.2, "XX"}}),
            PauliSum::from_text({{1.0, "II"}, {0.3, "ZI"}, {0.4, "IZ"}, {0.2, "ZZ"}})};
}

} // namespace geig
