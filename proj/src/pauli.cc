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

#include "phaseshadow/pauli.h"

#include <bit>
#include <stdexcept>
#include <utility>

namespace phaseshadow {

PauliString::PauliString(BitVec x, BitVec z, uint8_t phase) : xs(std::move(x)), zs(std::move(z)), phase(phase & 3) {
    if (xs.size() != zs.size()) {
        throw std::invalid_argument("PauliString: x and z parts have different lengths");
    }
}

PauliString PauliString::x_on(size_t num_qubits, size_t q) {
    PauliString p(num_qubits);
    p.xs.set(q, true);
    return p;
}

PauliString PauliString::z_on(size_t num_qubits, size_t q) {
    PauliString p(num_qubits);
    p.zs.set(q, true);
    return p;
}

PauliString PauliString::z_type(const BitVec &a) {
    return PauliString(BitVec(a.size()), a, 0);
}

PauliString PauliString::from_str(std::string_view text) {
    uint8_t sign = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        sign = text[0] == '-' ? 2 : 0;
        text.remove_prefix(1);
        if (!text.empty() && text[0] == 'i') {
            sign += 1;
            text.remove_prefix(1);
        }
    }
    PauliString p(text.size());
    size_t ys = 0;
    for (size_t q = 0; q < text.size(); q++) {
        switch (text[q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.xs.flip(q);
                break;
            case 'Y':
                p.xs.flip(q);
                p.zs.flip(q);
                ys++;
                break;
            case 'Z':
                p.zs.flip(q);
                break;
            default:
                throw std::invalid_argument("PauliString::from_str: unexpected character '" + std::string(1, text[q]) +
                                            "'");
        }
    }
    p.phase = static_cast<uint8_t>((sign + ys) & 3);
    return p;
}

size_t PauliString::num_y() const {
    return (xs & zs).popcount();
}

uint8_t PauliString::letter_phase() const {
    return static_cast<uint8_t>((phase + 4 - (num_y() & 3)) & 3);
}

bool PauliString::is_hermitian() const {
    return (letter_phase() & 1) == 0;
}

PauliString PauliString::times_phase(uint8_t k) const {
    PauliString out = *this;
    out.phase = static_cast<uint8_t>((phase + k) & 3);
    return out;
}

std::string PauliString::str() const {
    static constexpr const char *prefixes[] = {"+", "+i", "-", "-i"};
    std::string out = prefixes[letter_phase()];
    for (size_t q = 0; q < num_qubits(); q++) {
        out += "IZXY"[xs[q] * 2 + zs[q]];
    }
    return out;
}

void multiply_into(PauliString &target, const PauliString &rhs) {
    if (target.num_qubits() != rhs.num_qubits()) {
        throw std::invalid_argument("multiply: qubit count mismatch");
    }
    // (X^x1 Z^z1)(X^x2 Z^z2) = (-1)^{z1.x2} X^{x1+x2} Z^{z1+z2} per site.
    auto z1 = target.zs.words();
    auto x2 = rhs.xs.words();
    size_t swaps = 0;
    for (size_t w = 0; w < z1.size(); w++) {
        swaps += std::popcount(z1[w] & x2[w]);
    }
    target.phase = static_cast<uint8_t>((target.phase + rhs.phase + 2 * (swaps & 1)) & 3);
    target.xs ^= rhs.xs;
    target.zs ^= rhs.zs;
}

PauliString multiply(const PauliString &p, const PauliString &q) {
    PauliString out = p;
    multiply_into(out, q);
    return out;
}

bool commutes(const PauliString &p, const PauliString &q) {
    if (p.num_qubits() != q.num_qubits()) {
        throw std::invalid_argument("commutes: qubit count mismatch");
    }
    return p.xs.dot(q.zs) == p.zs.dot(q.xs);
}

PauliClass classify(const PauliString &p) {
    size_t n = p.num_qubits();
    size_t n3 = p.xs.popcount();
    size_t n2 = (p.zs.popcount()) - (p.xs & p.zs).popcount();
    return PauliClass{n - n2 - n3, n2, n3};
}

bool is_ztype(const PauliString &p) {
    return !p.xs.any();
}

}  // namespace phaseshadow
