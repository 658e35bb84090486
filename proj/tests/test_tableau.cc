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

#include <cmath>
#include <map>

#include "gtest/gtest.h"
#include "phaseshadow/oracle.h"
#include "test_util.h"

using namespace phaseshadow;
using namespace phaseshadow::testing;
namespace dense = phaseshadow::oracle;

TEST(tableau, identity_and_zero_state) {
    auto t = identity_tableau(2);
    EXPECT_EQ(t.conjugate(PauliString::from_str("XI")), PauliString::from_str("XI"));
    auto s = zero_state(3);
    for (size_t q = 0; q < 3; q++) {
        EXPECT_EQ(pauli_expectation(s, PauliString::z_on(3, q)), 1);
    }
    EXPECT_EQ(pauli_expectation(zero_state(1), PauliString::from_str("X")), 0);
    EXPECT_EQ(pauli_expectation(StabState::basis(BitVec::from_string("1")), PauliString::from_str("Z")), -1);
}

TEST(tableau, single_gate_examples) {
    auto h = apply_gate(identity_tableau(1), GateOp::h(0));
    EXPECT_EQ(h.zs[0], PauliString::from_str("X"));
    EXPECT_EQ(conjugate(h, PauliString::from_str("Z")), PauliString::from_str("X"));

    auto cz = apply_gate(identity_tableau(2), GateOp::cz(0, 1));
    EXPECT_EQ(cz.conjugate(PauliString::from_str("XI")), PauliString::from_str("XZ"));

    auto s = apply_gate(identity_tableau(1), GateOp::s(0));
    auto sx = s.conjugate(PauliString::from_str("X"));
    EXPECT_EQ(sx, PauliString::from_str("Y"));
    auto ds = dense::dense_gate(GateOp::s(0), 1);
    EXPECT_TRUE(dense::dense_pauli(sx).isApprox(ds * dense::dense_pauli(PauliString::from_str("X")) * ds.adjoint()));

    auto cx = apply_gate(identity_tableau(2), GateOp::cnot(0, 1));
    EXPECT_EQ(cx.conjugate(PauliString::from_str("YI")), PauliString::from_str("YX"));
    EXPECT_EQ(cx.conjugate(PauliString::from_str("YY")), PauliString::from_str("-XZ"));
}

TEST(tableau, invalid_targets) {
    auto t = identity_tableau(2);
    EXPECT_THROW(t.apply(GateOp::h(2)), std::invalid_argument);
    EXPECT_THROW(t.apply(GateOp::cz(1, 1)), std::invalid_argument);
    EXPECT_THROW(zero_state(2).apply(GateOp::cnot(0, 5)), std::invalid_argument);
    EXPECT_THROW(t.conjugate(PauliString(3)), std::invalid_argument);
}

TEST(tableau, conjugation_matches_dense_for_every_gate) {
    std::mt19937_64 rng(21);
    for (size_t n = 1; n <= 3; n++) {
        for (int trial = 0; trial < 60; trial++) {
            auto circuit = random_circuit(n, 20, rng);
            auto t = CliffordTableau::from_circuit(n, circuit);
            EXPECT_TRUE(t.is_symplectic());
            auto u = dense::dense_circuit(circuit, n);
            for (int k = 0; k < 10; k++) {
                auto p = random_pauli(n, rng);
                dense::DenseOperator want = u * dense::dense_pauli(p) * u.adjoint();
                EXPECT_TRUE(dense::dense_pauli(t.conjugate(p)).isApprox(want, 1e-12));
            }
        }
    }
}

TEST(tableau, inverse_and_composition) {
    std::mt19937_64 rng(22);
    for (size_t n = 1; n <= 8; n++) {
        for (int trial = 0; trial < 20; trial++) {
            auto t = CliffordTableau::from_circuit(n, random_circuit(n, 40, rng));
            auto inv = t.inverse();
            EXPECT_TRUE(inv.is_symplectic());
            EXPECT_EQ(t.then(inv), identity_tableau(n));
            EXPECT_EQ(inv.then(t), identity_tableau(n));
            for (int k = 0; k < 10; k++) {
                auto p = random_pauli(n, rng);
                EXPECT_EQ(inv.conjugate(t.conjugate(p)), p);
            }
        }
    }
    for (int trial = 0; trial < 30; trial++) {
        size_t n = 3;
        auto c1 = random_circuit(n, 15, rng), c2 = random_circuit(n, 15, rng);
        auto a = CliffordTableau::from_circuit(n, c1);
        auto b = CliffordTableau::from_circuit(n, c2);
        auto joined = c1;
        joined.insert(joined.end(), c2.begin(), c2.end());
        EXPECT_EQ(a.then(b), CliffordTableau::from_circuit(n, joined));
        auto ua = dense::dense_circuit(c1, n);
        auto inv = a.inverse();
        auto p = random_pauli(n, rng);
        EXPECT_TRUE(dense::dense_pauli(inv.conjugate(p)).isApprox(ua.adjoint() * dense::dense_pauli(p) * ua, 1e-12));
    }
}

TEST(tableau, conjugation_is_linear_with_phase) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 1 + rng() % 10;
        auto t = CliffordTableau::from_circuit(n, random_circuit(n, 30, rng));
        auto p = random_pauli(n, rng), q = random_pauli(n, rng);
        EXPECT_EQ(t.conjugate(multiply(p, q)), multiply(t.conjugate(p), t.conjugate(q)));
    }
}

TEST(tableau, symplectic_after_long_random_circuits) {
    std::mt19937_64 rng(24);
    for (size_t n : {5, 20, 64, 70}) {
        auto t = identity_tableau(n);
        for (int k = 0; k < 500; k++) {
            t.apply(random_gate(n, rng));
        }
        EXPECT_TRUE(t.is_symplectic());
        auto s = StabState::from_tableau(t);
        EXPECT_TRUE(s.is_valid());
    }
}

TEST(stab_state, evolution_matches_dense_statevector) {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 3;
        auto circuit = random_circuit(n, 20, rng);
        auto s = StabState::from_circuit(n, circuit);
        EXPECT_TRUE(s.is_valid());
        auto psi = dense::dense_state(circuit, n);
        for (const auto &g : s.stabilizers) {
            EXPECT_TRUE((dense::dense_pauli(g) * psi).isApprox(psi, 1e-12)) << g.str();
        }
        // Also reachable through the tableau of the same circuit.
        EXPECT_EQ(StabState::from_tableau(CliffordTableau::from_circuit(n, circuit)).stabilizers, s.stabilizers);
    }
}

TEST(stab_state, pauli_expectation_matches_dense) {
    std::mt19937_64 rng(26);
    for (size_t n = 1; n <= 3; n++) {
        for (int trial = 0; trial < 50; trial++) {
            auto circuit = random_circuit(n, 25, rng);
            auto s = StabState::from_circuit(n, circuit);
            auto psi = dense::dense_state(circuit, n);
            for (int k = 0; k < 20; k++) {
                auto p = random_pauli(n, rng, true);
                double want = psi.dot(dense::dense_pauli(p) * psi).real();
                EXPECT_NEAR(pauli_expectation(s, p), want, 1e-12) << p.str();
            }
        }
    }
    EXPECT_THROW(pauli_expectation(zero_state(1), PauliString::from_str("+iZ")), std::invalid_argument);
    EXPECT_THROW(pauli_expectation(zero_state(2), PauliString(1)), std::invalid_argument);
}

TEST(stab_state, measure_all_examples) {
    std::mt19937_64 rng(27);
    auto zero = zero_state(4);
    for (int k = 0; k < 20; k++) {
        EXPECT_FALSE(measure_all(zero, rng).any());
    }
    auto plus = StabState::from_circuit(1, plus_product(1));
    size_t zeros = 0, draws = 100000;
    for (size_t k = 0; k < draws; k++) {
        zeros += !measure_all(plus, rng)[0];
    }
    double sd = std::sqrt(0.25 / draws);
    EXPECT_NEAR(static_cast<double>(zeros) / draws, 0.5, 3 * sd);
    // The argument state is left untouched.
    EXPECT_EQ(plus.stabilizers[0], PauliString::from_str("X"));
}

TEST(stab_state, born_rule_matches_dense_distribution) {
    std::mt19937_64 rng(28);
    auto check = [&](size_t n, const Circuit &circuit) {
        auto s = StabState::from_circuit(n, circuit);
        auto psi = dense::dense_state(circuit, n);
        size_t d = size_t{1} << n, draws = 100000;
        std::vector<double> counts(d, 0);
        for (size_t k = 0; k < draws; k++) {
            auto b = s.measure_all(rng);
            size_t idx = 0;
            for (size_t q = 0; q < n; q++) {
                idx |= static_cast<size_t>(b[q]) << q;
            }
            counts[idx] += 1;
        }
        double tv = 0;
        for (size_t b = 0; b < d; b++) {
            double p = std::norm(psi(b));
            double f = counts[b] / draws;
            tv += 0.5 * std::abs(f - p);
            EXPECT_NEAR(f, p, 3 * std::sqrt(p * (1 - p) / draws) + 1e-12);
        }
        EXPECT_LT(tv, 0.01);
    };
    check(3, ghz_canonical(3));
    check(3, ghz_star(3));
    for (int trial = 0; trial < 5; trial++) {
        size_t n = 1 + trial % 3;
        check(n, random_circuit(n, 30, rng));
    }
}

TEST(stab_state, overlap_examples) {
    for (size_t n = 1; n <= 6; n++) {
        auto zero = zero_state(n);
        auto plus = StabState::from_circuit(n, plus_product(n));
        auto ghz = StabState::from_circuit(n, ghz_canonical(n));
        EXPECT_EQ(overlap_sq(zero, zero).value(), 1.0);
        EXPECT_EQ(overlap_sq(zero, plus).value(), std::ldexp(1.0, -static_cast<int>(n)));
        EXPECT_EQ(overlap_sq(ghz, zero).value(), n == 1 ? 0.5 : 0.5);
        EXPECT_EQ(overlap_sq(StabState::basis(BitVec::from_string(std::string(n, '1'))), zero).value(), 0.0);
    }
    EXPECT_THROW(overlap_sq(zero_state(2), zero_state(3)), std::invalid_argument);
}

TEST(stab_state, overlap_matches_dense_inner_products) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 300; trial++) {
        size_t n = 1 + rng() % 4;
        auto c1 = random_circuit(n, 25, rng), c2 = random_circuit(n, 25, rng);
        auto s1 = StabState::from_circuit(n, c1), s2 = StabState::from_circuit(n, c2);
        double want = std::norm(dense::dense_state(c1, n).dot(dense::dense_state(c2, n)));
        auto got = overlap_sq(s1, s2);
        EXPECT_NEAR(got.value(), want, 1e-12);
        EXPECT_EQ(overlap_sq(s1, s1).value(), 1.0);
    }
}

TEST(z_tableau, examples_and_cross_check) {
    for (size_t n = 1; n <= 4; n++) {
        auto id = z_tableau_phaseless(identity_tableau(n));
        EXPECT_EQ(id.c, BitMatrix(n, n));
        EXPECT_EQ(id.d, BitMatrix::identity(n));
        auto h = z_tableau_phaseless(CliffordTableau::from_circuit(n, plus_product(n)));
        EXPECT_EQ(h.c, BitMatrix::identity(n));
        EXPECT_EQ(h.d, BitMatrix(n, n));
    }
    std::mt19937_64 rng(30);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 1 + rng() % 3;
        auto t = CliffordTableau::from_circuit(n, random_circuit(n, 20, rng));
        auto zt = z_tableau_phaseless(t);
        for (size_t i = 0; i < n; i++) {
            auto img = t.conjugate(PauliString::z_on(n, i));
            EXPECT_EQ(zt.c.row(i), img.xs);
            EXPECT_EQ(zt.d.row(i), img.zs);
        }
    }
}

TEST(circuit_text, parse_and_format) {
    auto c = parse_circuit("H 0\n# comment\nCZ 0 3  \n s 2\nS_DAG 1\nSDG 1\nCX 1 2\nCNOT 2 0 # tail\nX 0\nZ 1\n\n");
    ASSERT_EQ(c.size(), 9u);
    EXPECT_EQ(c[0], GateOp::h(0));
    EXPECT_EQ(c[1], GateOp::cz(0, 3));
    EXPECT_EQ(c[2], GateOp::s(2));
    EXPECT_EQ(c[3], GateOp::s_dag(1));
    EXPECT_EQ(c[5], GateOp::cnot(1, 2));
    EXPECT_EQ(parse_circuit(format_circuit(c)), c);
    EXPECT_THROW(parse_circuit("T 0"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("CZ 1"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("CZ 1 1"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("H 0 1"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("H -1"), std::invalid_argument);
    EXPECT_THROW(validate_circuit(c, 3), std::invalid_argument);
    EXPECT_NO_THROW(validate_circuit(c, 4));
}
