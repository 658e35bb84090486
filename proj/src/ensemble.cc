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

#include "phaseshadow/ensemble.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace phaseshadow {

namespace {

double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void apply_diagonal_layer(StabState &s, const PhaseCircuit &c, const NoiseModel &nm, std::mt19937_64 &rng) {
    size_t n = c.n;
    for (size_t k = 0; k < n; k++) {
        if (c.has_s(k)) {
            s.apply(GateOp::s(k));
        }
    }
    bool noisy = nm.kind != NoiseKind::NOISELESS;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            if (!c.has_cz(i, j)) {
                continue;
            }
            s.apply(GateOp::cz(i, j));
            if (!noisy) {
                continue;
            }
            double p = nm.pair_rate(i, j);
            double r = uniform01(rng);
            if (nm.kind == NoiseKind::EXTENDED) {
                if (r < 0.25 * p) {
                    s.apply(GateOp::z(i));
                } else if (r < 0.5 * p) {
                    s.apply(GateOp::z(j));
                } else if (r < 0.75 * p) {
                    s.apply(GateOp::z(i));
                    s.apply(GateOp::z(j));
                }
            } else if (r < p) {
                s.apply(GateOp::z(i));
                s.apply(GateOp::z(j));
            }
        }
    }
}

nlohmann::json noise_to_json(const NoiseModel &nm) {
    nlohmann::json j;
    j["kind"] = nm.kind_name();
    j["p_e"] = nm.p_e;
    if (nm.kind == NoiseKind::ZZ_HET) {
        j["n"] = nm.het_qubits;
        j["rates"] = nm.pair_rates;
    }
    return j;
}

NoiseModel noise_from_json(const nlohmann::json &j) {
    auto kind = parse_noise_kind(j.at("kind").get<std::string>());
    if (kind == NoiseKind::ZZ_HET) {
        size_t n = j.at("n").get<size_t>();
        auto flat = j.at("rates").get<std::vector<double>>();
        if (flat.size() != n * n) {
            throw std::invalid_argument("snapshot header: zz_het rate table has the wrong size");
        }
        std::vector<std::vector<double>> rows(n);
        for (size_t i = 0; i < n; i++) {
            rows[i].assign(flat.begin() + i * n, flat.begin() + (i + 1) * n);
        }
        return NoiseModel::zz_het(std::move(rows));
    }
    return make_noise(j.at("kind").get<std::string>(), j.at("p_e").get<double>());
}

}  // namespace

PhaseCircuit PhaseCircuit::from_upper(size_t n, const BitVec &upper) {
    if (upper.size() != n * (n + 1) / 2) {
        throw std::invalid_argument("PhaseCircuit::from_upper: expected n(n+1)/2 bits");
    }
    PhaseCircuit c(n);
    size_t k = 0;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i; j < n; j++) {
            if (upper[k++]) {
                c.set_cz(i, j, true);
            }
        }
    }
    return c;
}

BitVec PhaseCircuit::upper_triangle() const {
    BitVec out(n * (n + 1) / 2);
    size_t k = 0;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i; j < n; j++) {
            if (a.get(i, j)) {
                out.flip(k);
            }
            k++;
        }
    }
    return out;
}

void PhaseCircuit::set_cz(size_t i, size_t j, bool value) {
    if (i >= n || j >= n) {
        throw std::out_of_range("PhaseCircuit: index out of range");
    }
    a.set(i, j, value);
    a.set(j, i, value);
}

void PhaseCircuit::set_s(size_t k, bool value) {
    set_cz(k, k, value);
}

size_t PhaseCircuit::num_cz() const {
    size_t total = 0;
    for (size_t i = 0; i < n; i++) {
        total += a.row(i).popcount() - (a.get(i, i) ? 1 : 0);
    }
    return total / 2;
}

Circuit PhaseCircuit::gates() const {
    Circuit out;
    for (size_t k = 0; k < n; k++) {
        if (has_s(k)) {
            out.push_back(GateOp::s(k));
        }
    }
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            if (has_cz(i, j)) {
                out.push_back(GateOp::cz(i, j));
            }
        }
    }
    for (size_t k = 0; k < n; k++) {
        out.push_back(GateOp::h(k));
    }
    return out;
}

CliffordTableau to_tableau(const PhaseCircuit &c) {
    CliffordTableau t(c.n);
    for (const auto &g : c.gates()) {
        t.apply(g);
    }
    return t;
}

Snapshot simulate_shot(std::span<const GateOp> prep, const PhaseCircuit &c, const NoiseModel &nm,
                       std::mt19937_64 &rng) {
    return simulate_shot(StabState::from_circuit(c.n, prep), c, nm, rng);
}

Snapshot simulate_shot(const StabState &prepared, const PhaseCircuit &c, const NoiseModel &nm, std::mt19937_64 &rng) {
    if (prepared.num_qubits() != c.n) {
        throw std::invalid_argument("simulate_shot: state and circuit sizes differ");
    }
    StabState s = prepared;
    apply_diagonal_layer(s, c, nm, rng);
    for (size_t k = 0; k < c.n; k++) {
        s.apply(GateOp::h(k));
    }
    Snapshot out;
    out.circuit = c;
    out.outcome = s.measure_all(rng);
    out.kind = SnapshotKind::OFFDIAG;
    return out;
}

Snapshot sample_diag_shot(std::span<const GateOp> prep, size_t n, std::mt19937_64 &rng) {
    return sample_diag_shot(StabState::from_circuit(n, prep), rng);
}

Snapshot sample_diag_shot(const StabState &prepared, std::mt19937_64 &rng) {
    Snapshot out;
    out.circuit = PhaseCircuit(prepared.num_qubits());
    out.outcome = prepared.measure_all(rng);
    out.kind = SnapshotKind::DIAG;
    return out;
}

double angle_to_pe(double sigma_sq) {
    if (!(sigma_sq >= 0)) {
        throw std::invalid_argument("angle_to_pe: variance must be non-negative");
    }
    return -0.5 * std::expm1(-0.5 * sigma_sq);
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 shot_rng(uint64_t seed, uint64_t grid_index, uint64_t shot_index) {
    uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ grid_index);
    h = splitmix64(h ^ shot_index);
    std::seed_seq seq{static_cast<uint32_t>(h), static_cast<uint32_t>(h >> 32), static_cast<uint32_t>(grid_index),
                      static_cast<uint32_t>(shot_index)};
    return std::mt19937_64(seq);
}

std::string bits_to_hex(const BitVec &bits) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out((bits.size() + 3) / 4, '0');
    for (size_t k = 0; k < bits.size(); k++) {
        if (bits[k]) {
            size_t nib = k / 4;
            int value = out[nib] <= '9' ? out[nib] - '0' : out[nib] - 'a' + 10;
            value |= 8 >> (k % 4);
            out[nib] = digits[value];
        }
    }
    return out;
}

BitVec hex_to_bits(std::string_view hex, size_t num_bits) {
    if (hex.size() != (num_bits + 3) / 4) {
        throw std::invalid_argument("hex_to_bits: wrong number of hex digits");
    }
    BitVec out(num_bits);
    for (size_t nib = 0; nib < hex.size(); nib++) {
        char ch = hex[nib];
        int value;
        if (ch >= '0' && ch <= '9') {
            value = ch - '0';
        } else if (ch >= 'a' && ch <= 'f') {
            value = ch - 'a' + 10;
        } else if (ch >= 'A' && ch <= 'F') {
            value = ch - 'A' + 10;
        } else {
            throw std::invalid_argument("hex_to_bits: bad hex digit");
        }
        for (size_t b = 0; b < 4; b++) {
            size_t k = nib * 4 + b;
            bool bit = (value >> (3 - b)) & 1;
            if (k >= num_bits) {
                if (bit) {
                    throw std::invalid_argument("hex_to_bits: nonzero padding");
                }
                continue;
            }
            if (bit) {
                out.flip(k);
            }
        }
    }
    return out;
}

void write_snapshots(std::ostream &out, const SnapshotHeader &header, std::span<const Snapshot> snapshots) {
    nlohmann::json h;
    h["format"] = "phaseshadow-snapshots";
    h["version"] = 1;
    h["n"] = header.n;
    h["noise"] = noise_to_json(header.noise);
    h["seed"] = header.seed;
    h["prep"] = header.prep;
    out << h.dump() << '\n';
    for (const auto &s : snapshots) {
        if (s.circuit.n != header.n || s.outcome.size() != header.n) {
            throw std::invalid_argument("write_snapshots: snapshot size does not match header");
        }
        out << (s.kind == SnapshotKind::OFFDIAG ? "offdiag" : "diag") << ',' << bits_to_hex(s.circuit.upper_triangle())
            << ',' << bits_to_hex(s.outcome) << '\n';
    }
}

SnapshotFile read_snapshots(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("read_snapshots: missing header");
    }
    auto h = nlohmann::json::parse(line);
    if (h.at("format").get<std::string>() != "phaseshadow-snapshots" || h.at("version").get<int>() != 1) {
        throw std::invalid_argument("read_snapshots: unsupported format");
    }
    SnapshotFile file;
    file.header.n = h.at("n").get<size_t>();
    file.header.noise = noise_from_json(h.at("noise"));
    file.header.seed = h.at("seed").get<uint64_t>();
    file.header.prep = h.at("prep").get<std::string>();
    size_t n = file.header.n;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) {
            continue;
        }
        auto c1 = line.find(',');
        auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos) {
            throw std::invalid_argument("read_snapshots: line " + std::to_string(line_no) + " is malformed");
        }
        std::string kind = line.substr(0, c1);
        Snapshot s;
        if (kind == "offdiag") {
            s.kind = SnapshotKind::OFFDIAG;
        } else if (kind == "diag") {
            s.kind = SnapshotKind::DIAG;
        } else {
            throw std::invalid_argument("read_snapshots: line " + std::to_string(line_no) + " has unknown kind");
        }
        s.circuit = PhaseCircuit::from_upper(n, hex_to_bits(std::string_view(line).substr(c1 + 1, c2 - c1 - 1),
                                                             n * (n + 1) / 2));
        s.outcome = hex_to_bits(std::string_view(line).substr(c2 + 1), n);
        file.snapshots.push_back(std::move(s));
    }
    return file;
}

}  // namespace phaseshadow
