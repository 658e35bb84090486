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

#include "phaseshadow/noise.h"

#include <cmath>
#include <stdexcept>

namespace phaseshadow {

namespace {

void check_probability(double p, const char *what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": probability must lie in [0, 1]");
    }
}

}  // namespace

NoiseModel NoiseModel::zz(double p_e) {
    NoiseModel m;
    m.kind = NoiseKind::ZZ;
    m.p_e = p_e;
    m.validate();
    return m;
}

NoiseModel NoiseModel::extended(double p_e) {
    NoiseModel m;
    m.kind = NoiseKind::EXTENDED;
    m.p_e = p_e;
    m.validate();
    return m;
}

NoiseModel NoiseModel::zz_het(std::vector<std::vector<double>> rates) {
    NoiseModel m;
    m.kind = NoiseKind::ZZ_HET;
    m.het_qubits = rates.size();
    for (const auto &row : rates) {
        if (row.size() != rates.size()) {
            throw std::invalid_argument("zz_het: rate table must be square");
        }
        m.pair_rates.insert(m.pair_rates.end(), row.begin(), row.end());
    }
    double total = 0;
    size_t count = 0;
    for (size_t i = 0; i < m.het_qubits; i++) {
        for (size_t j = i + 1; j < m.het_qubits; j++) {
            total += m.pair_rate(i, j);
            count++;
        }
    }
    m.p_e = count ? total / count : 0.0;
    m.validate();
    return m;
}

double NoiseModel::pair_rate(size_t i, size_t j) const {
    switch (kind) {
        case NoiseKind::NOISELESS:
            return 0.0;
        case NoiseKind::ZZ:
        case NoiseKind::EXTENDED:
            return p_e;
        case NoiseKind::ZZ_HET:
            if (i >= het_qubits || j >= het_qubits) {
                throw std::out_of_range("zz_het: pair index outside the rate table");
            }
            return pair_rates[i * het_qubits + j];
    }
    throw std::logic_error("unknown noise kind");
}

bool NoiseModel::is_noiseless() const {
    if (kind == NoiseKind::NOISELESS) {
        return true;
    }
    if (kind == NoiseKind::ZZ_HET) {
        for (double r : pair_rates) {
            if (r != 0) {
                return false;
            }
        }
        return true;
    }
    return p_e == 0;
}

void NoiseModel::validate() const {
    check_probability(p_e, "p_e");
    if (kind == NoiseKind::ZZ_HET) {
        if (pair_rates.size() != het_qubits * het_qubits) {
            throw std::invalid_argument("zz_het: rate table has the wrong size");
        }
        for (size_t i = 0; i < het_qubits; i++) {
            for (size_t j = 0; j < het_qubits; j++) {
                double r = pair_rates[i * het_qubits + j];
                check_probability(r, "zz_het rate");
                if (r != pair_rates[j * het_qubits + i]) {
                    throw std::invalid_argument("zz_het: rate table is not symmetric");
                }
            }
        }
    }
}

std::string NoiseModel::kind_name() const {
    switch (kind) {
        case NoiseKind::NOISELESS:
            return "noiseless";
        case NoiseKind::ZZ:
            return "zz";
        case NoiseKind::EXTENDED:
            return "extended";
        case NoiseKind::ZZ_HET:
            return "zz_het";
    }
    throw std::logic_error("unknown noise kind");
}

NoiseKind parse_noise_kind(std::string_view name) {
    if (name == "noiseless" || name == "none") {
        return NoiseKind::NOISELESS;
    }
    if (name == "zz") {
        return NoiseKind::ZZ;
    }
    if (name == "extended") {
        return NoiseKind::EXTENDED;
    }
    if (name == "zz_het") {
        return NoiseKind::ZZ_HET;
    }
    throw std::invalid_argument("unknown noise model '" + std::string(name) + "'");
}

NoiseModel make_noise(std::string_view kind, double p_e) {
    switch (parse_noise_kind(kind)) {
        case NoiseKind::NOISELESS:
            return NoiseModel::noiseless();
        case NoiseKind::ZZ:
            return NoiseModel::zz(p_e);
        case NoiseKind::EXTENDED:
            return NoiseModel::extended(p_e);
        case NoiseKind::ZZ_HET:
            throw std::invalid_argument("zz_het needs a rate table");
    }
    throw std::logic_error("unknown noise kind");
}

}  // namespace phaseshadow
