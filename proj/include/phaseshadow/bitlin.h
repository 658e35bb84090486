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

#ifndef PHASESHADOW_BITLIN_H
#define PHASESHADOW_BITLIN_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phaseshadow {

/// Fixed-length vector over GF(2), packed into 64-bit words.
///
/// Bits beyond `size()` in the last word are always zero, so word-wise
/// equality and popcount are exact.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t num_bits);

    static BitVec from_string(std::string_view bits);
    static BitVec from_bools(std::span<const bool> bits);

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }
    std::span<const uint64_t> words() const {
        return words_;
    }

    bool operator[](size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    bool get(size_t k) const;
    void set(size_t k, bool value);
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }

    BitVec &operator^=(const BitVec &other);
    BitVec &operator&=(const BitVec &other);
    BitVec &operator|=(const BitVec &other);
    friend BitVec operator^(BitVec a, const BitVec &b) {
        return a ^= b;
    }
    friend BitVec operator&(BitVec a, const BitVec &b) {
        return a &= b;
    }
    friend BitVec operator|(BitVec a, const BitVec &b) {
        return a |= b;
    }
    bool operator==(const BitVec &other) const = default;

    bool any() const;
    size_t popcount() const;
    /// Parity of the bitwise AND, i.e. the GF(2) inner product.
    bool dot(const BitVec &other) const;
    /// Index of the lowest set bit at or after `start`, or size() if none.
    size_t find_next(size_t start) const;

    /// '0'/'1' characters, index 0 first.
    std::string str() const;

   private:
    void check_same_size(const BitVec &other) const;

    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Dense row-major matrix over GF(2).
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols);
    explicit BitMatrix(std::vector<BitVec> rows, size_t cols);

    static BitMatrix identity(size_t n);
    static BitMatrix from_strings(std::span<const std::string_view> rows);

    size_t num_rows() const {
        return rows_.size();
    }
    size_t num_cols() const {
        return cols_;
    }
    const BitVec &row(size_t r) const {
        return rows_[r];
    }
    const std::vector<BitVec> &rows() const {
        return rows_;
    }
    bool get(size_t r, size_t c) const {
        return rows_[r][c];
    }
    /// Element setter used while building a matrix; algorithms never mutate inputs.
    void set(size_t r, size_t c, bool value) {
        rows_[r].set(c, value);
    }

    bool operator==(const BitMatrix &other) const = default;

    BitMatrix transposed() const;
    /// Matrix product over GF(2).
    BitMatrix operator*(const BitMatrix &rhs) const;
    /// Row vector times matrix: v·M.
    BitVec left_multiply(const BitVec &v) const;
    /// Matrix times column vector: M·v.
    BitVec right_multiply(const BitVec &v) const;
    BitMatrix hstack(const BitMatrix &right) const;
    BitMatrix vstack(const BitMatrix &below) const;

    std::string str() const;

   private:
    size_t cols_ = 0;
    std::vector<BitVec> rows_;
};

struct EchelonResult {
    /// Row echelon form of the input.
    BitMatrix reduced;
    /// Invertible row transform with transform * input == reduced.
    BitMatrix transform;
    size_t rank = 0;
    /// Column index of the leading one of each of the first `rank` rows.
    std::vector<size_t> pivot_cols;
};

/// Gaussian elimination with transform tracking. Pivots are taken left to
/// right, choosing the topmost available row with a one in the pivot column.
EchelonResult row_echelon_with_certificate(const BitMatrix &m);

size_t rank(const BitMatrix &m);

/// Basis of {v : v·M = 0}, of size rows(M) - rank(M).
std::vector<BitVec> left_null_basis(const BitMatrix &m);

/// Returns x with x·M = t when t lies in the row space of M.
std::optional<BitVec> solve_or_membership(const BitMatrix &m, const BitVec &t);

}  // namespace phaseshadow

#endif
