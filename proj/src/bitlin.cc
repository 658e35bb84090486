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

#include "phaseshadow/bitlin.h"

#include <stdexcept>
#include <utility>

namespace phaseshadow {

namespace {

size_t words_for(size_t num_bits) {
    return (num_bits + 63) >> 6;
}

}  // namespace

BitVec::BitVec(size_t num_bits) : num_bits_(num_bits), words_(words_for(num_bits), 0) {
}

BitVec BitVec::from_string(std::string_view bits) {
    BitVec result(bits.size());
    for (size_t k = 0; k < bits.size(); k++) {
        if (bits[k] == '1') {
            result.flip(k);
        } else if (bits[k] != '0') {
            throw std::invalid_argument("BitVec::from_string: expected only '0' and '1' characters");
        }
    }
    return result;
}

BitVec BitVec::from_bools(std::span<const bool> bits) {
    BitVec result(bits.size());
    for (size_t k = 0; k < bits.size(); k++) {
        if (bits[k]) {
            result.flip(k);
        }
    }
    return result;
}

bool BitVec::get(size_t k) const {
    if (k >= num_bits_) {
        throw std::out_of_range("BitVec::get: index out of range");
    }
    return (*this)[k];
}

void BitVec::set(size_t k, bool value) {
    if (k >= num_bits_) {
        throw std::out_of_range("BitVec::set: index out of range");
    }
    uint64_t mask = uint64_t{1} << (k & 63);
    if (value) {
        words_[k >> 6] |= mask;
    } else {
        words_[k >> 6] &= ~mask;
    }
}

void BitVec::check_same_size(const BitVec &other) const {
    if (num_bits_ != other.num_bits_) {
        throw std::invalid_argument("BitVec: length mismatch");
    }
}

BitVec &BitVec::operator^=(const BitVec &other) {
    check_same_size(other);
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVec &BitVec::operator&=(const BitVec &other) {
    check_same_size(other);
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] &= other.words_[w];
    }
    return *this;
}

BitVec &BitVec::operator|=(const BitVec &other) {
    check_same_size(other);
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] |= other.words_[w];
    }
    return *this;
}

bool BitVec::any() const {
    for (uint64_t w : words_) {
        if (w) {
            return true;
        }
    }
    return false;
}

size_t BitVec::popcount() const {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

bool BitVec::dot(const BitVec &other) const {
    check_same_size(other);
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); w++) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

size_t BitVec::find_next(size_t start) const {
    if (start >= num_bits_) {
        return num_bits_;
    }
    size_t w = start >> 6;
    uint64_t cur = words_[w] & (~uint64_t{0} << (start & 63));
    while (true) {
        if (cur) {
            return (w << 6) + std::countr_zero(cur);
        }
        w++;
        if (w >= words_.size()) {
            return num_bits_;
        }
        cur = words_[w];
    }
}

std::string BitVec::str() const {
    std::string out(num_bits_, '0');
    for (size_t k = 0; k < num_bits_; k++) {
        if ((*this)[k]) {
            out[k] = '1';
        }
    }
    return out;
}

BitMatrix::BitMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {
}

BitMatrix::BitMatrix(std::vector<BitVec> rows, size_t cols) : cols_(cols), rows_(std::move(rows)) {
    for (const auto &r : rows_) {
        if (r.size() != cols_) {
            throw std::invalid_argument("BitMatrix: row length does not match column count");
        }
    }
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t k = 0; k < n; k++) {
        m.rows_[k].flip(k);
    }
    return m;
}

BitMatrix BitMatrix::from_strings(std::span<const std::string_view> rows) {
    std::vector<BitVec> parsed;
    parsed.reserve(rows.size());
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (auto r : rows) {
        parsed.push_back(BitVec::from_string(r));
    }
    return BitMatrix(std::move(parsed), cols);
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_.size());
    for (size_t r = 0; r < rows_.size(); r++) {
        for (size_t c = rows_[r].find_next(0); c < cols_; c = rows_[r].find_next(c + 1)) {
            t.rows_[c].flip(r);
        }
    }
    return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix &rhs) const {
    if (cols_ != rhs.num_rows()) {
        throw std::invalid_argument("BitMatrix::operator*: inner dimensions differ");
    }
    BitMatrix out(rows_.size(), rhs.cols_);
    for (size_t r = 0; r < rows_.size(); r++) {
        out.rows_[r] = rhs.left_multiply(rows_[r]);
    }
    return out;
}

BitVec BitMatrix::left_multiply(const BitVec &v) const {
    if (v.size() != rows_.size()) {
        throw std::invalid_argument("BitMatrix::left_multiply: vector length must equal row count");
    }
    BitVec out(cols_);
    for (size_t k = v.find_next(0); k < v.size(); k = v.find_next(k + 1)) {
        out ^= rows_[k];
    }
    return out;
}

BitVec BitMatrix::right_multiply(const BitVec &v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("BitMatrix::right_multiply: vector length must equal column count");
    }
    BitVec out(rows_.size());
    for (size_t r = 0; r < rows_.size(); r++) {
        if (rows_[r].dot(v)) {
            out.flip(r);
        }
    }
    return out;
}

BitMatrix BitMatrix::hstack(const BitMatrix &right) const {
    if (right.num_rows() != rows_.size()) {
        throw std::invalid_argument("BitMatrix::hstack: row counts differ");
    }
    BitMatrix out(rows_.size(), cols_ + right.cols_);
    for (size_t r = 0; r < rows_.size(); r++) {
        for (size_t c = 0; c < cols_; c++) {
            if (rows_[r][c]) {
                out.rows_[r].flip(c);
            }
        }
        for (size_t c = 0; c < right.cols_; c++) {
            if (right.rows_[r][c]) {
                out.rows_[r].flip(cols_ + c);
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix &below) const {
    if (below.cols_ != cols_) {
        throw std::invalid_argument("BitMatrix::vstack: column counts differ");
    }
    std::vector<BitVec> rows = rows_;
    rows.insert(rows.end(), below.rows_.begin(), below.rows_.end());
    return BitMatrix(std::move(rows), cols_);
}

std::string BitMatrix::str() const {
    std::string out;
    for (const auto &r : rows_) {
        out += r.str();
        out += '\n';
    }
    return out;
}

EchelonResult row_echelon_with_certificate(const BitMatrix &m) {
    size_t rows = m.num_rows();
    size_t cols = m.num_cols();
    std::vector<BitVec> reduced = m.rows();
    std::vector<BitVec> transform = BitMatrix::identity(rows).rows();
    std::vector<size_t> pivots;

    size_t next_row = 0;
    for (size_t c = 0; c < cols && next_row < rows; c++) {
        size_t pivot = next_row;
        while (pivot < rows && !reduced[pivot][c]) {
            pivot++;
        }
        if (pivot == rows) {
            continue;
        }
        std::swap(reduced[pivot], reduced[next_row]);
        std::swap(transform[pivot], transform[next_row]);
        for (size_t r = next_row + 1; r < rows; r++) {
            if (reduced[r][c]) {
                reduced[r] ^= reduced[next_row];
                transform[r] ^= transform[next_row];
            }
        }
        pivots.push_back(c);
        next_row++;
    }

    EchelonResult result;
    result.reduced = BitMatrix(std::move(reduced), cols);
    result.transform = BitMatrix(std::move(transform), rows);
    result.rank = next_row;
    result.pivot_cols = std::move(pivots);
    return result;
}

size_t rank(const BitMatrix &m) {
    return row_echelon_with_certificate(m).rank;
}

std::vector<BitVec> left_null_basis(const BitMatrix &m) {
    auto ech = row_echelon_with_certificate(m);
    std::vector<BitVec> basis;
    for (size_t r = ech.rank; r < m.num_rows(); r++) {
        basis.push_back(ech.transform.row(r));
    }
    return basis;
}

std::optional<BitVec> solve_or_membership(const BitMatrix &m, const BitVec &t) {
    if (t.size() != m.num_cols()) {
        throw std::invalid_argument("solve_or_membership: target length must equal column count");
    }
    auto ech = row_echelon_with_certificate(m);
    BitVec remainder = t;
    BitVec combo(m.num_rows());
    for (size_t k = 0; k < ech.rank; k++) {
        if (remainder[ech.pivot_cols[k]]) {
            remainder ^= ech.reduced.row(k);
            combo ^= ech.transform.row(k);
        }
    }
    if (remainder.any()) {
        return std::nullopt;
    }
    return combo;
}

}  // namespace phaseshadow
