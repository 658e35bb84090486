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

#ifndef PHASESHADOW_NOISE_H
#define PHASESHADOW_NOISE_H

#include <string>
#include <string_view>
#include <vector>

namespace phaseshadow {

enum class NoiseKind { NOISELESS, ZZ, EXTENDED, ZZ_HET };

/// Pauli noise attached to every applied CZ gate.
///
/// zz:       Z_i Z_j with probability p_e.
/// extended: Z_i, Z_j, Z_i Z_j each with probability p_e / 4.
/// zz_het:   Z_i Z_j with the per-pair probability rate(i, j).
struct NoiseModel {
    NoiseKind kind = NoiseKind::NOISELESS;
    double p_e = 0.0;
    /// Row-major symmetric n x n table, only used by zz_het.
    std::vector<double> pair_rates;
    size_t het_qubits = 0;

    static NoiseModel noiseless() {
        return NoiseModel{};
    }
    static NoiseModel zz(double p_e);
    static NoiseModel extended(double p_e);
    static NoiseModel zz_het(std::vector<std::vector<double>> rates);

    /// Error probability for the CZ on (i, j). Equals p_e except for zz_het.
    double pair_rate(size_t i, size_t j) const;
    bool is_noiseless() const;

    /// Throws std::invalid_argument on out-of-range probabilities or an asymmetric rate table.
    void validate() const;

    /// "noiseless", "zz", "extended" or "zz_het".
    std::string kind_name() const;
    bool operator==(const NoiseModel &other) const = default;
};

NoiseKind parse_noise_kind(std::string_view name);
NoiseModel make_noise(std::string_view kind, double p_e);

}  // namespace phaseshadow

#endif
