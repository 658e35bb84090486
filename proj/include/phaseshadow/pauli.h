// Copyright 2026 The phaseshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHASESHADOW_PAULI_H
#define PHASESHADOW_PAULI_H

#include <cstdint>
#include <string>
#include <string_view>

#include "phaseshadow/bitlin.h"

namespace phaseshadow {

/// Signed n-qubit Pauli operator in symplectic form.
///
/// The represented operator is
///
///     i^phase * prod_j X_j^{x_j} Z_j^{z_j}
///
/// with X written before Z on every site. Under this normal form a Y site is
/// stored as (x=1, z=1) with an extra factor of i absorbed into `phase`, since
/// Y = i X Z. Every routine in the library that touches signs uses this single
/// convention; the text form ("+XIZY", "-iZZ") shows the sign relative to the
/// Hermitian letters instead.
///
/// Qubit 0 is the leftmost character of the text form. In dense matrices
/// qubit j corresponds to bit j of the basis-state index.
struct PauliString {
    BitVec xs;
    BitVec zs;
    uint8_t phase = 0;

    PauliString() = default;
    explicit PauliString(size_t num_qubits) : xs(num_qubits), zs(num_qubits) {
    }
    PauliString(BitVec x, BitVec z, uint8_t phase);

    static PauliString identity(size_t num_qubits) {
        return PauliString(num_qubits);
    }
    static PauliString x_on(size_t num_qubits, size_t q);
    static PauliString z_on(size_t num_qubits, size_t q);
    /// Z^a, i.e. Z on every site where a is one.
    static PauliString z_type(const BitVec &a);
    /// Parses "+XIZY", "-iZZ", "XZ" (implicit '+'), "_" accepted for identity.
    static PauliString from_str(std::string_view text);

    size_t num_qubits() const {
        return xs.size();
    }
    /// Number of Y sites (x and z both set).
    size_t num_y() const;
    /// Hermitian operators have i-exponent, relative to the letters, of 0 or 2.
    bool is_hermitian() const;
    /// Power of i in front of the Hermitian-letter form, i.e. "+", "+i", "-", "-i" as 0..3.
    uint8_t letter_phase() const;

    /// Multiplies by i^k.
    PauliString times_phase(uint8_t k) const;

    bool equals_phaseless(const PauliString &other) const {
        return xs == other.xs && zs == other.zs;
    }
    bool operator==(const PauliString &other) const = default;

    std::string str() const;
};

/// Operator product p*q with exact phase.
PauliString multiply(const PauliString &p, const PauliString &q);
/// In-place left product: target <- target * rhs.
void multiply_into(PauliString &target, const PauliString &rhs);

bool commutes(const PauliString &p, const PauliString &q);

/// Site counts for P = I^{n1} (x) Z^{n2} (x) {X,Y}^{n3}, independent of site order.
struct PauliClass {
    size_t n1 = 0;
    size_t n2 = 0;
    size_t n3 = 0;

    size_t num_qubits() const {
        return n1 + n2 + n3;
    }
    bool operator==(const PauliClass &other) const = default;
};

PauliClass classify(const PauliString &p);

/// True iff p has no X or Y site (identity included).
bool is_ztype(const PauliString &p);

}  // namespace phaseshadow

#endif
