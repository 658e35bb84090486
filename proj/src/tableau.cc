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

#include "phaseshadow/tableau.h"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace phaseshadow {

namespace {

std::string trim(std::string_view s) {
    size_t a = 0;
    while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) {
        a++;
    }
    size_t b = s.size();
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
        b--;
    }
    return std::string(s.substr(a, b - a));
}

const char *gate_name(GateKind k) {
    switch (k) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::S_DAG:
            return "S_DAG";
        case GateKind::X:
            return "X";
        case GateKind::Z:
            return "Z";
        case GateKind::CZ:
            return "CZ";
        case GateKind::CNOT:
            return "CNOT";
    }
    throw std::logic_error("unknown gate kind");
}

uint8_t bump(uint8_t phase, unsigned delta) {
    return static_cast<uint8_t>((phase + delta) & 3);
}

}  // namespace

void validate_gate(const GateOp &g, size_t num_qubits) {
    if (g.q0 >= num_qubits || (g.is_two_qubit() && g.q1 >= num_qubits)) {
        throw std::invalid_argument(std::string("gate ") + gate_name(g.kind) + " targets a qubit outside 0.." +
                                    std::to_string(num_qubits) + ")");
    }
    if (g.is_two_qubit() && g.q0 == g.q1) {
        throw std::invalid_argument(std::string("gate ") + gate_name(g.kind) + " has repeated target " +
                                    std::to_string(g.q0));
    }
}

void validate_circuit(std::span<const GateOp> gates, size_t num_qubits) {
    for (const auto &g : gates) {
        validate_gate(g, num_qubits);
    }
}

Circuit parse_circuit(std::string_view text) {
    Circuit out;
    size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        line_no++;
        auto hash = raw.find('#');
        if (hash != std::string::npos) {
            raw.resize(hash);
        }
        std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }
        std::istringstream words(line);
        std::string name;
        words >> name;
        for (auto &ch : name) {
            ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        }
        GateKind kind;
        if (name == "H") {
            kind = GateKind::H;
        } else if (name == "S") {
            kind = GateKind::S;
        } else if (name == "S_DAG" || name == "SDG") {
            kind = GateKind::S_DAG;
        } else if (name == "X") {
            kind = GateKind::X;
        } else if (name == "Z") {
            kind = GateKind::Z;
        } else if (name == "CZ") {
            kind = GateKind::CZ;
        } else if (name == "CNOT" || name == "CX") {
            kind = GateKind::CNOT;
        } else {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown gate '" + name + "'");
        }
        GateOp g{kind, 0, 0};
        long long a = -1, b = -1;
        if (!(words >> a) || a < 0) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": bad target");
        }
        g.q0 = static_cast<size_t>(a);
        if (g.is_two_qubit()) {
            if (!(words >> b) || b < 0) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": two-qubit gate needs two targets");
            }
            g.q1 = static_cast<size_t>(b);
            if (g.q0 == g.q1) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": repeated target");
            }
        }
        std::string extra;
        if (words >> extra) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": trailing text '" + extra + "'");
        }
        out.push_back(g);
    }
    return out;
}

std::string format_circuit(std::span<const GateOp> gates) {
    std::string out;
    for (const auto &g : gates) {
        out += gate_name(g.kind);
        out += ' ';
        out += std::to_string(g.q0);
        if (g.is_two_qubit()) {
            out += ' ';
            out += std::to_string(g.q1);
        }
        out += '\n';
    }
    return out;
}

void conjugate_by_gate(PauliString &p, const GateOp &g) {
    size_t a = g.q0;
    switch (g.kind) {
        case GateKind::H: {
            bool x = p.xs[a], z = p.zs[a];
            // H X Z H = Z X = -X Z.
            if (x && z) {
                p.phase = bump(p.phase, 2);
            }
            if (x != z) {
                p.xs.flip(a);
                p.zs.flip(a);
            }
            break;
        }
        case GateKind::S:
            // S X S^dag = i X Z.
            if (p.xs[a]) {
                p.phase = bump(p.phase, 1);
                p.zs.flip(a);
            }
            break;
        case GateKind::S_DAG:
            if (p.xs[a]) {
                p.phase = bump(p.phase, 3);
                p.zs.flip(a);
            }
            break;
        case GateKind::X:
            if (p.zs[a]) {
                p.phase = bump(p.phase, 2);
            }
            break;
        case GateKind::Z:
            if (p.xs[a]) {
                p.phase = bump(p.phase, 2);
            }
            break;
        case GateKind::CZ: {
            size_t b = g.q1;
            bool xa = p.xs[a], xb = p.xs[b];
            // X_a X_b -> (X_a Z_b)(Z_a X_b) = -X_a Z_a X_b Z_b in normal order.
            if (xa && xb) {
                p.phase = bump(p.phase, 2);
            }
            if (xb) {
                p.zs.flip(a);
            }
            if (xa) {
                p.zs.flip(b);
            }
            break;
        }
        case GateKind::CNOT: {
            size_t t = g.q1;
            if (p.xs[a]) {
                p.xs.flip(t);
            }
            if (p.zs[t]) {
                p.zs.flip(a);
            }
            break;
        }
    }
}

CliffordTableau::CliffordTableau(size_t num_qubits) {
    xs.reserve(num_qubits);
    zs.reserve(num_qubits);
    for (size_t q = 0; q < num_qubits; q++) {
        xs.push_back(PauliString::x_on(num_qubits, q));
        zs.push_back(PauliString::z_on(num_qubits, q));
    }
}

CliffordTableau CliffordTableau::from_circuit(size_t num_qubits, std::span<const GateOp> gates) {
    validate_circuit(gates, num_qubits);
    CliffordTableau t(num_qubits);
    for (const auto &g : gates) {
        t.apply(g);
    }
    return t;
}

void CliffordTableau::apply(const GateOp &g) {
    validate_gate(g, num_qubits());
    for (auto &p : xs) {
        conjugate_by_gate(p, g);
    }
    for (auto &p : zs) {
        conjugate_by_gate(p, g);
    }
}

PauliString CliffordTableau::conjugate(const PauliString &p) const {
    size_t n = num_qubits();
    if (p.num_qubits() != n) {
        throw std::invalid_argument("CliffordTableau::conjugate: qubit count mismatch");
    }
    PauliString out(n);
    out.phase = p.phase;
    for (size_t q = 0; q < n; q++) {
        if (p.xs[q]) {
            multiply_into(out, xs[q]);
        }
        if (p.zs[q]) {
            multiply_into(out, zs[q]);
        }
    }
    return out;
}

CliffordTableau CliffordTableau::inverse() const {
    size_t n = num_qubits();
    CliffordTableau inv(n);
    // Symplectic inverse: entry (k, l) of M^-1 is M(swap(l), swap(k)).
    for (size_t i = 0; i < n; i++) {
        PauliString &ix = inv.xs[i];
        PauliString &iz = inv.zs[i];
        ix = PauliString(n);
        iz = PauliString(n);
        for (size_t j = 0; j < n; j++) {
            if (zs[j].zs[i]) {
                ix.xs.flip(j);
            }
            if (xs[j].zs[i]) {
                ix.zs.flip(j);
            }
            if (zs[j].xs[i]) {
                iz.xs.flip(j);
            }
            if (xs[j].xs[i]) {
                iz.zs.flip(j);
            }
        }
    }
    for (size_t i = 0; i < n; i++) {
        for (auto *row : {&inv.xs[i], &inv.zs[i]}) {
            row->phase = static_cast<uint8_t>(row->num_y() & 3);
            PauliString back = conjugate(*row);
            const PauliString &want = row == &inv.xs[i] ? PauliString::x_on(n, i) : PauliString::z_on(n, i);
            if (!back.equals_phaseless(want)) {
                throw std::logic_error("CliffordTableau::inverse: tableau is not symplectic");
            }
            row->phase = bump(row->phase, (want.phase + 4 - back.phase) & 3);
        }
    }
    return inv;
}

CliffordTableau CliffordTableau::then(const CliffordTableau &after) const {
    if (after.num_qubits() != num_qubits()) {
        throw std::invalid_argument("CliffordTableau::then: qubit count mismatch");
    }
    CliffordTableau out;
    out.xs.reserve(xs.size());
    out.zs.reserve(zs.size());
    for (const auto &p : xs) {
        out.xs.push_back(after.conjugate(p));
    }
    for (const auto &p : zs) {
        out.zs.push_back(after.conjugate(p));
    }
    return out;
}

bool CliffordTableau::is_symplectic() const {
    size_t n = num_qubits();
    for (size_t i = 0; i < n; i++) {
        if (!xs[i].is_hermitian() || !zs[i].is_hermitian()) {
            return false;
        }
        for (size_t j = 0; j < n; j++) {
            if (!commutes(xs[i], xs[j]) || !commutes(zs[i], zs[j])) {
                return false;
            }
            if (commutes(xs[i], zs[j]) != (i != j)) {
                return false;
            }
        }
    }
    return true;
}

CliffordTableau identity_tableau(size_t num_qubits) {
    return CliffordTableau(num_qubits);
}

CliffordTableau apply_gate(CliffordTableau t, const GateOp &g) {
    t.apply(g);
    return t;
}

PauliString conjugate(const CliffordTableau &t, const PauliString &p) {
    return t.conjugate(p);
}

ZTableau z_tableau_phaseless(const CliffordTableau &t) {
    size_t n = t.num_qubits();
    std::vector<BitVec> c, d;
    c.reserve(n);
    d.reserve(n);
    for (const auto &p : t.zs) {
        c.push_back(p.xs);
        d.push_back(p.zs);
    }
    return ZTableau{BitMatrix(std::move(c), n), BitMatrix(std::move(d), n)};
}

double OverlapSq::value() const {
    if (orthogonal) {
        return 0.0;
    }
    return std::ldexp(1.0, static_cast<int>(shared_rank) - static_cast<int>(num_qubits));
}

StabState::StabState(size_t num_qubits) {
    stabilizers.reserve(num_qubits);
    destabilizers.reserve(num_qubits);
    for (size_t q = 0; q < num_qubits; q++) {
        stabilizers.push_back(PauliString::z_on(num_qubits, q));
        destabilizers.push_back(PauliString::x_on(num_qubits, q));
    }
}

StabState StabState::basis(const BitVec &b) {
    StabState s(b.size());
    for (size_t q = 0; q < b.size(); q++) {
        if (b[q]) {
            s.stabilizers[q].phase = 2;
        }
    }
    return s;
}

StabState StabState::from_circuit(size_t num_qubits, std::span<const GateOp> gates) {
    validate_circuit(gates, num_qubits);
    StabState s(num_qubits);
    s.apply_all(gates);
    return s;
}

StabState StabState::from_tableau(const CliffordTableau &t) {
    StabState s;
    s.stabilizers = t.zs;
    s.destabilizers = t.xs;
    return s;
}

void StabState::apply(const GateOp &g) {
    validate_gate(g, num_qubits());
    for (auto &p : stabilizers) {
        conjugate_by_gate(p, g);
    }
    for (auto &p : destabilizers) {
        conjugate_by_gate(p, g);
    }
}

void StabState::apply_all(std::span<const GateOp> gates) {
    for (const auto &g : gates) {
        apply(g);
    }
}

bool StabState::measure_z(size_t q, std::mt19937_64 &rng) {
    size_t n = num_qubits();
    if (q >= n) {
        throw std::out_of_range("StabState::measure_z: qubit out of range");
    }
    size_t p = n;
    for (size_t i = 0; i < n; i++) {
        if (stabilizers[i].xs[q]) {
            p = i;
            break;
        }
    }
    if (p < n) {
        // Random outcome.
        for (size_t i = 0; i < n; i++) {
            if (i != p && stabilizers[i].xs[q]) {
                multiply_into(stabilizers[i], stabilizers[p]);
            }
            if (destabilizers[i].xs[q]) {
                multiply_into(destabilizers[i], stabilizers[p]);
            }
        }
        destabilizers[p] = stabilizers[p];
        bool outcome = rng() & 1;
        stabilizers[p] = PauliString::z_on(n, q);
        stabilizers[p].phase = outcome ? 2 : 0;
        return outcome;
    }
    PauliString acc(n);
    for (size_t i = 0; i < n; i++) {
        if (destabilizers[i].xs[q]) {
            multiply_into(acc, stabilizers[i]);
        }
    }
    // acc is +-Z_q.
    return acc.phase == 2;
}

BitVec StabState::measure_all(std::mt19937_64 &rng) const {
    StabState scratch = *this;
    BitVec out(num_qubits());
    for (size_t q = 0; q < num_qubits(); q++) {
        if (scratch.measure_z(q, rng)) {
            out.flip(q);
        }
    }
    return out;
}

PauliString StabState::group_element_matching(const PauliString &p) const {
    size_t n = num_qubits();
    PauliString acc(n);
    for (size_t i = 0; i < n; i++) {
        if (!commutes(destabilizers[i], p)) {
            multiply_into(acc, stabilizers[i]);
        }
    }
    return acc;
}

int StabState::expectation(const PauliString &p) const {
    if (p.num_qubits() != num_qubits()) {
        throw std::invalid_argument("StabState::expectation: qubit count mismatch");
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("StabState::expectation: observable is not Hermitian");
    }
    for (const auto &s : stabilizers) {
        if (!commutes(s, p)) {
            return 0;
        }
    }
    PauliString g = group_element_matching(p);
    if (!g.equals_phaseless(p)) {
        throw std::logic_error("StabState::expectation: inconsistent stabilizer tableau");
    }
    return ((p.phase + 4 - g.phase) & 3) == 0 ? 1 : -1;
}

bool StabState::is_valid() const {
    size_t n = num_qubits();
    if (destabilizers.size() != n) {
        return false;
    }
    for (size_t i = 0; i < n; i++) {
        if (!stabilizers[i].is_hermitian() || !destabilizers[i].is_hermitian()) {
            return false;
        }
        for (size_t j = 0; j < n; j++) {
            if (!commutes(stabilizers[i], stabilizers[j]) || !commutes(destabilizers[i], destabilizers[j])) {
                return false;
            }
            if (commutes(destabilizers[i], stabilizers[j]) != (i != j)) {
                return false;
            }
        }
    }
    return true;
}

StabState zero_state(size_t num_qubits) {
    return StabState(num_qubits);
}

StabState apply_gate(StabState s, const GateOp &g) {
    s.apply(g);
    return s;
}

BitVec measure_all(const StabState &s, std::mt19937_64 &rng) {
    return s.measure_all(rng);
}

int pauli_expectation(const StabState &s, const PauliString &p) {
    return s.expectation(p);
}

OverlapSq overlap_sq(const StabState &a, const StabState &b) {
    size_t n = a.num_qubits();
    if (b.num_qubits() != n) {
        throw std::invalid_argument("overlap_sq: qubit count mismatch");
    }
    std::vector<BitVec> rows;
    rows.reserve(2 * n);
    auto pack = [n](const PauliString &p) {
        BitVec v(2 * n);
        for (size_t q = 0; q < n; q++) {
            if (p.xs[q]) {
                v.flip(q);
            }
            if (p.zs[q]) {
                v.flip(n + q);
            }
        }
        return v;
    };
    for (const auto &s : a.stabilizers) {
        rows.push_back(pack(s));
    }
    for (const auto &s : b.stabilizers) {
        rows.push_back(pack(s));
    }
    auto null = left_null_basis(BitMatrix(std::move(rows), 2 * n));

    OverlapSq out;
    out.num_qubits = n;
    out.shared_rank = null.size();
    for (const auto &v : null) {
        PauliString pa(n), pb(n);
        for (size_t i = 0; i < n; i++) {
            if (v[i]) {
                multiply_into(pa, a.stabilizers[i]);
            }
            if (v[n + i]) {
                multiply_into(pb, b.stabilizers[i]);
            }
        }
        if (!pa.equals_phaseless(pb)) {
            throw std::logic_error("overlap_sq: null vector does not give a shared element");
        }
        if (pa.phase != pb.phase) {
            out.orthogonal = true;
        }
    }
    return out;
}

}  // namespace phaseshadow
