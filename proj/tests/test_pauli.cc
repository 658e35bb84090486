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

#include <random>

#include "gtest/gtest.h"
#include "phaseshadow/oracle.h"

using namespace phaseshadow;
using phaseshadow::oracle::dense_pauli;

namespace {

PauliString random_pauli(size_t n, std::mt19937_64 &rng) {
    PauliString p(n);
    for (size_t q = 0; q < n; q++) {
        p.xs.set(q, rng() & 1);
        p.zs.set(q, rng() & 1);
    }
    p.phase = static_cast<uint8_t>(rng() & 3);
    return p;
}

}  // namespace

TEST(pauli, text_round_trip) {
    for (const char *s : {"+XIZY", "-iZZ", "+iY", "-I", "+_X_"}) {
        auto p = PauliString::from_str(s);
        EXPECT_EQ(PauliString::from_str(p.str()), p);
    }
    EXPECT_EQ(PauliString::from_str("XZ").str(), "+XZ");
    EXPECT_EQ(PauliString::from_str("-iZZ").str(), "-iZZ");
    EXPECT_EQ(PauliString::from_str("+_X_").str(), "+IXI");
    EXPECT_THROW(PauliString::from_str("XQ"), std::invalid_argument);
    // Y is stored as i X Z.
    auto y = PauliString::from_str("Y");
    EXPECT_TRUE(y.xs[0] && y.zs[0]);
    EXPECT_EQ(y.phase, 1);
    EXPECT_TRUE(y.is_hermitian());
    EXPECT_FALSE(PauliString::from_str("+iZ").is_hermitian());
}

TEST(pauli, text_form_matches_dense_letters) {
    using oracle::DenseOperator;
    DenseOperator x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
    z << 1, 0, 0, -1;
    EXPECT_TRUE(dense_pauli(PauliString::from_str("X")).isApprox(x));
    EXPECT_TRUE(dense_pauli(PauliString::from_str("Y")).isApprox(y));
    EXPECT_TRUE(dense_pauli(PauliString::from_str("Z")).isApprox(z));
    EXPECT_TRUE(dense_pauli(PauliString::from_str("-iY")).isApprox(std::complex<double>(0, -1) * y));
}

TEST(pauli, multiply_examples) {
    auto xx = multiply(PauliString::from_str("X"), PauliString::from_str("X"));
    EXPECT_EQ(xx, PauliString::identity(1));
    auto xz = multiply(PauliString::from_str("X"), PauliString::from_str("Z"));
    EXPECT_EQ(xz.str(), "-iY");
    EXPECT_EQ(xz.phase, 0);
    auto zx = multiply(PauliString::from_str("Z"), PauliString::from_str("X"));
    EXPECT_EQ(zx.str(), "+iY");
    EXPECT_THROW(multiply(PauliString(2), PauliString(3)), std::invalid_argument);
}

TEST(pauli, multiply_matches_dense_products) {
    std::mt19937_64 rng(11);
    for (size_t n = 1; n <= 3; n++) {
        for (int trial = 0; trial < 200; trial++) {
            auto p = random_pauli(n, rng), q = random_pauli(n, rng), r = random_pauli(n, rng);
            EXPECT_TRUE(dense_pauli(multiply(p, q)).isApprox(dense_pauli(p) * dense_pauli(q), 1e-12));
            EXPECT_EQ(multiply(multiply(p, q), r), multiply(p, multiply(q, r)));
            // Squares are +-identity.
            auto sq = multiply(p, p);
            EXPECT_FALSE(sq.xs.any() || sq.zs.any());
            EXPECT_EQ(sq.phase % 2, 0);
        }
    }
}

TEST(pauli, commutes_examples_and_dense) {
    EXPECT_FALSE(commutes(PauliString::from_str("XI"), PauliString::from_str("ZI")));
    EXPECT_TRUE(commutes(PauliString::from_str("XX"), PauliString::from_str("ZZ")));
    EXPECT_THROW(commutes(PauliString(1), PauliString(2)), std::invalid_argument);
    std::mt19937_64 rng(12);
    for (size_t n = 1; n <= 3; n++) {
        for (int trial = 0; trial < 200; trial++) {
            auto p = random_pauli(n, rng), q = random_pauli(n, rng);
            auto dp = dense_pauli(p), dq = dense_pauli(q);
            bool dense_commute = (dp * dq - dq * dp).norm() < 1e-12;
            EXPECT_EQ(commutes(p, q), dense_commute);
        }
    }
}

TEST(pauli, classify_examples) {
    EXPECT_EQ(classify(PauliString::from_str("IZXY")), (PauliClass{1, 1, 2}));
    EXPECT_EQ(classify(PauliString::identity(5)), (PauliClass{5, 0, 0}));
    EXPECT_EQ(classify(PauliString::from_str("ZZZZ")), (PauliClass{0, 4, 0}));
    EXPECT_TRUE(is_ztype(PauliString::from_str("ZIZ")));
    EXPECT_FALSE(is_ztype(PauliString::from_str("XI")));
    EXPECT_TRUE(is_ztype(PauliString::identity(3)));
}

TEST(pauli, classify_properties) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 500; trial++) {
        size_t n = 1 + rng() % 70;
        auto p = random_pauli(n, rng);
        auto c = classify(p);
        EXPECT_EQ(c.num_qubits(), n);
        for (uint8_t k = 0; k < 4; k++) {
            EXPECT_EQ(classify(p.times_phase(k)), c);
        }
        EXPECT_EQ(is_ztype(p), c.n3 == 0);
    }
}
