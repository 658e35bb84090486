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

#ifndef PHASESHADOW_TABLEAU_H
#define PHASESHADOW_TABLEAU_H

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phaseshadow/bitlin.h"
#include "phaseshadow/pauli.h"

namespace phaseshadow {

enum class GateKind : uint8_t { H, S, S_DAG, X, Z, CZ, CNOT };

struct GateOp {
    GateKind kind;
    size_t q0 = 0;
    /// Second target for CZ, or the CNOT target (q0 is the control).
    size_t q1 = 0;

    static GateOp h(size_t q) {
        return {GateKind::H, q, 0};
    }
    static GateOp s(size_t q) {
        return {GateKind::S, q, 0};
    }
    static GateOp s_dag(size_t q) {
        return {GateKind::S_DAG, q, 0};
    }
    static GateOp x(size_t q) {
        return {GateKind::X, q, 0};
    }
    static GateOp z(size_t q) {
        return {GateKind::Z, q, 0};
    }
    static GateOp cz(size_t a, size_t b) {
        return {GateKind::CZ, a, b};
    }
    static GateOp cnot(size_t control, size_t target) {
        return {GateKind::CNOT, control, target};
    }

    bool is_two_qubit() const {
        return kind == GateKind::CZ || kind == GateKind::CNOT;
    }
    bool operator==(const GateOp &other) const = default;
};

using Circuit = std::vector<GateOp>;

/// Throws std::invalid_argument for targets >= num_qubits or repeated two-qubit targets.
void validate_gate(const GateOp &g, size_t num_qubits);
void validate_circuit(std::span<const GateOp> gates, size_t num_qubits);

/// Parses one gate per line ("H 0", "CZ 0 3", "S 2", "S_DAG 1", "CNOT 0 1").
/// '#' starts a comment. CX and SDG are accepted as aliases.
Circuit parse_circuit(std::string_view text);
std::string format_circuit(std::span<const GateOp> gates);

/// p <- g p g^dagger, with exact phase.
void conjugate_by_gate(PauliString &p, const GateOp &g);

/// Clifford unitary U stored through its conjugation action P -> U P U^dagger.
///
/// `xs[i]` is U X_i U^dagger and `zs[i]` is U Z_i U^dagger. The adjoint action
/// P -> U^dagger P U is obtained from inverse().
class CliffordTableau {
   public:
    CliffordTableau() = default;
    explicit CliffordTableau(size_t num_qubits);

    static CliffordTableau identity(size_t num_qubits) {
        return CliffordTableau(num_qubits);
    }
    /// Tableau of the unitary that applies `gates` in order to a state.
    static CliffordTableau from_circuit(size_t num_qubits, std::span<const GateOp> gates);

    size_t num_qubits() const {
        return xs.size();
    }

    /// U <- g U.
    void apply(const GateOp &g);
    /// U P U^dagger.
    PauliString conjugate(const PauliString &p) const;
    /// Tableau of U^dagger.
    CliffordTableau inverse() const;
    /// Tableau of `after` * U, i.e. U is applied first.
    CliffordTableau then(const CliffordTableau &after) const;
    /// Generator images pairwise obey the canonical commutation relations.
    bool is_symplectic() const;

    bool operator==(const CliffordTableau &other) const = default;

    std::vector<PauliString> xs;
    std::vector<PauliString> zs;
};

CliffordTableau identity_tableau(size_t num_qubits);
CliffordTableau apply_gate(CliffordTableau t, const GateOp &g);
PauliString conjugate(const CliffordTableau &t, const PauliString &p);

/// Phaseless X part (C) and Z part (D) of U Z_i U^dagger, one row per i.
struct ZTableau {
    BitMatrix c;
    BitMatrix d;
};
ZTableau z_tableau_phaseless(const CliffordTableau &t);

/// Exact squared overlap of two stabilizer states: zero, or 2^(shared_rank - n).
struct OverlapSq {
    bool orthogonal = false;
    size_t shared_rank = 0;
    size_t num_qubits = 0;

    double value() const;
};

/// Pure stabilizer state in the Aaronson-Gottesman destabilizer form.
class StabState {
   public:
    StabState() = default;
    /// |0...0>.
    explicit StabState(size_t num_qubits);

    static StabState zero(size_t num_qubits) {
        return StabState(num_qubits);
    }
    /// Computational basis state |b>.
    static StabState basis(const BitVec &b);
    static StabState from_circuit(size_t num_qubits, std::span<const GateOp> gates);
    /// The state C|0...0> for the unitary C held by `t`.
    static StabState from_tableau(const CliffordTableau &t);

    size_t num_qubits() const {
        return stabilizers.size();
    }

    void apply(const GateOp &g);
    void apply_all(std::span<const GateOp> gates);

    /// Measures Z on qubit q and collapses the state.
    bool measure_z(size_t q, std::mt19937_64 &rng);
    /// Samples all qubits in ascending order from a scratch copy.
    BitVec measure_all(std::mt19937_64 &rng) const;

    /// <p> for Hermitian p: +1 or -1 when +-p stabilizes the state, else 0.
    int expectation(const PauliString &p) const;

    /// Generators commute, are independent, and pair with their destabilizers.
    bool is_valid() const;

    std::vector<PauliString> stabilizers;
    std::vector<PauliString> destabilizers;

   private:
    /// The group element +-P (phaseless match to p) as a product of generators; p must commute with all stabilizers.
    PauliString group_element_matching(const PauliString &p) const;
};

StabState zero_state(size_t num_qubits);
StabState apply_gate(StabState s, const GateOp &g);
BitVec measure_all(const StabState &s, std::mt19937_64 &rng);
int pauli_expectation(const StabState &s, const PauliString &p);
OverlapSq overlap_sq(const StabState &a, const StabState &b);

}  // namespace phaseshadow

#endif
