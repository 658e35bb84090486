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

#ifndef PHASESHADOW_ENSEMBLE_H
#define PHASESHADOW_ENSEMBLE_H

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "phaseshadow/bitlin.h"
#include "phaseshadow/noise.h"
#include "phaseshadow/tableau.h"

namespace phaseshadow {

/// Random phase circuit U = H^{(x)n} U_A, with U_A = prod CZ_{ij}^{A_ij} prod S_k^{A_kk}.
struct PhaseCircuit {
    size_t n = 0;
    /// Symmetric; A(i, j) for i != j places CZ_ij, A(k, k) places S_k.
    BitMatrix a;

    PhaseCircuit() = default;
    explicit PhaseCircuit(size_t n) : n(n), a(n, n) {
    }

    /// Builds A from its upper triangle listed row-major, diagonal included.
    static PhaseCircuit from_upper(size_t n, const BitVec &upper);
    BitVec upper_triangle() const;

    bool has_cz(size_t i, size_t j) const {
        return a.get(i, j);
    }
    bool has_s(size_t k) const {
        return a.get(k, k);
    }
    void set_cz(size_t i, size_t j, bool value);
    void set_s(size_t k, bool value);
    size_t num_cz() const;

    /// Gate list acting on a state: S layer, CZ layer (i < j, row-major), then H layer.
    Circuit gates() const;

    bool operator==(const PhaseCircuit &other) const = default;
};

/// Fills the n(n+1)/2 free entries with independent fair bits taken from successive rng() words.
template <typename Rng>
PhaseCircuit sample_phase_circuit(size_t n, Rng &rng) {
    if (n == 0) {
        throw std::invalid_argument("sample_phase_circuit: n must be positive");
    }
    PhaseCircuit c(n);
    uint64_t word = 0;
    int left = 0;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i; j < n; j++) {
            if (left == 0) {
                word = static_cast<uint64_t>(rng());
                left = 64;
            }
            bool bit = word & 1;
            word >>= 1;
            left--;
            if (bit) {
                c.set_cz(i, j, true);
            }
        }
    }
    return c;
}

/// Tableau of U, built gate by gate in state-application order.
CliffordTableau to_tableau(const PhaseCircuit &c);

enum class SnapshotKind { OFFDIAG, DIAG };

struct Snapshot {
    PhaseCircuit circuit;
    BitVec outcome;
    SnapshotKind kind = SnapshotKind::OFFDIAG;

    bool operator==(const Snapshot &other) const = default;
};

/// Prepares prep|0>, runs the noisy diagonal layer and the H layer, measures everything.
Snapshot simulate_shot(std::span<const GateOp> prep, const PhaseCircuit &c, const NoiseModel &nm,
                       std::mt19937_64 &rng);
/// Same, starting from an already prepared state.
Snapshot simulate_shot(const StabState &prepared, const PhaseCircuit &c, const NoiseModel &nm, std::mt19937_64 &rng);

/// Bare computational-basis measurement of prep|0>.
Snapshot sample_diag_shot(std::span<const GateOp> prep, size_t n, std::mt19937_64 &rng);
Snapshot sample_diag_shot(const StabState &prepared, std::mt19937_64 &rng);

/// Pauli error rate of a ZZ rotation whose angle is Gaussian with variance sigma_sq.
double angle_to_pe(double sigma_sq);

/// Independent generator for one shot of one grid point.
std::mt19937_64 shot_rng(uint64_t seed, uint64_t grid_index, uint64_t shot_index);
uint64_t splitmix64(uint64_t x);

/// Header of the line-oriented snapshot store.
struct SnapshotHeader {
    size_t n = 0;
    NoiseModel noise;
    uint64_t seed = 0;
    std::string prep;

    bool operator==(const SnapshotHeader &other) const = default;
};

std::string bits_to_hex(const BitVec &bits);
BitVec hex_to_bits(std::string_view hex, size_t num_bits);

void write_snapshots(std::ostream &out, const SnapshotHeader &header, std::span<const Snapshot> snapshots);
struct SnapshotFile {
    SnapshotHeader header;
    std::vector<Snapshot> snapshots;
};
SnapshotFile read_snapshots(std::istream &in);

}  // namespace phaseshadow

#endif
