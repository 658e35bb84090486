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

#include "phaseshadow/shadow.h"

#include <cmath>

#include "gtest/gtest.h"
#include "json.hpp"
#include "phaseshadow/oracle.h"
#include "test_util.h"

using namespace phaseshadow;
using namespace phaseshadow::testing;
namespace dense = phaseshadow::oracle;

namespace {

BitVec bits_of(uint64_t mask, size_t n) {
    BitVec v(n);
    for (size_t q = 0; q < n; q++) {
        v.set(q, (mask >> q) & 1);
    }
    return v;
}

Snapshot offdiag_snapshot(const PhaseCircuit &c, const BitVec &b) {
    Snapshot s;
    s.circuit = c;
    s.outcome = b;
    s.kind = SnapshotKind::OFFDIAG;
    return s;
}

std::vector<PhaseCircuit> every_phase_circuit(size_t n) {
    std::vector<PhaseCircuit> out;
    size_t free = n * (n + 1) / 2;
    for (uint64_t mask = 0; mask < (uint64_t{1} << free); mask++) {
        out.push_back(PhaseCircuit::from_upper(n, bits_of(mask, free)));
    }
    return out;
}

/// Exact E[estimate_pauli] over the ensemble, the noisy channel and the Born rule.
double exact_pauli_expectation(const Circuit &prep, size_t n, const PauliString &q, const NoiseModel &model) {
    auto rho = dense::dense_state(prep, n);
    auto circuits = every_phase_circuit(n);
    double total = 0;
    for (const auto &c : circuits) {
        auto probs = dense::noisy_outcome_distribution(rho, c, model);
        for (uint64_t b = 0; b < probs.size(); b++) {
            if (probs[b] != 0) {
                total += probs[b] * estimate_pauli(offdiag_snapshot(c, bits_of(b, n)), q, model);
            }
        }
    }
    return total / static_cast<double>(circuits.size());
}

}  // namespace

TEST(estimate_pauli, one_qubit_hand_examples) {
    auto s = offdiag_snapshot(PhaseCircuit(1), BitVec(1));
    EXPECT_EQ(estimate_pauli(s, PauliString::from_str("X"), NoiseModel::noiseless()), 2.0);
    EXPECT_EQ(estimate_pauli(s, PauliString::from_str("-X"), NoiseModel::noiseless()), -2.0);
    // H Y H = -Y is off-diagonal, so the basis-state expectation vanishes.
    EXPECT_EQ(estimate_pauli(s, PauliString::from_str("Y"), NoiseModel::noiseless()), 0.0);
    auto one = offdiag_snapshot(PhaseCircuit(1), BitVec::from_string("1"));
    EXPECT_EQ(estimate_pauli(one, PauliString::from_str("X"), NoiseModel::noiseless()), -2.0);
    // Dense confirmation of the first example.
    auto u = dense::dense_phase_unitary(PhaseCircuit(1));
    dense::DenseOperator m = u * dense::dense_pauli(PauliString::from_str("X")) * u.adjoint();
    EXPECT_NEAR(2 * m(0, 0).real(), 2.0, 1e-15);
}

TEST(estimate_pauli, errors) {
    auto s = offdiag_snapshot(PhaseCircuit(3), BitVec(3));
    EXPECT_THROW(estimate_pauli(s, PauliString::from_str("ZIZ"), NoiseModel::noiseless()), std::invalid_argument);
    EXPECT_THROW(estimate_pauli(s, PauliString::identity(3), NoiseModel::noiseless()), std::invalid_argument);
    EXPECT_THROW(estimate_pauli(s, PauliString::from_str("XI"), NoiseModel::noiseless()), std::invalid_argument);
    EXPECT_THROW(estimate_pauli(s, PauliString::from_str("+iXII"), NoiseModel::noiseless()), std::invalid_argument);
    // Class (1, 1, 1) at p = 1/2 has sigma = 0.
    EXPECT_THROW(estimate_pauli(s, PauliString::from_str("IZX"), NoiseModel::zz(0.5)), std::runtime_error);
    auto d = s;
    d.kind = SnapshotKind::DIAG;
    EXPECT_THROW(estimate_pauli(d, PauliString::from_str("XII"), NoiseModel::noiseless()), std::invalid_argument);
}

TEST(estimate_pauli, exhaustive_expectation_two_qubits) {
    Circuit prep{GateOp::h(0)};
    EXPECT_NEAR(exact_pauli_expectation(prep, 2, PauliString::from_str("XI"), NoiseModel::noiseless()), 1.0, 1e-12);
    EXPECT_NEAR(exact_pauli_expectation(prep, 2, PauliString::from_str("XZ"), NoiseModel::noiseless()), 1.0, 1e-12);
    EXPECT_NEAR(exact_pauli_expectation(prep, 2, PauliString::from_str("YI"), NoiseModel::noiseless()), 0.0, 1e-12);
}

TEST(estimate_pauli, robust_expectation_is_unbiased) {
    std::mt19937_64 rng(61);
    for (size_t n = 2; n <= 3; n++) {
        for (auto model : {NoiseModel::zz(0.05), NoiseModel::zz(0.2), NoiseModel::extended(0.2)}) {
            for (int trial = 0; trial < 6; trial++) {
                auto prep = random_circuit(n, 20, rng);
                auto q = random_pauli(n, rng, true);
                if (is_ztype(q)) {
                    continue;
                }
                auto psi = dense::dense_state(prep, n);
                double truth = psi.dot(dense::dense_pauli(q) * psi).real();
                EXPECT_NEAR(exact_pauli_expectation(prep, n, q, model), truth, 1e-10) << q.str();
            }
        }
    }
}

TEST(shared_group, examples) {
    for (size_t n = 1; n <= 6; n++) {
        auto h = CliffordTableau::from_circuit(n, plus_product(n));
        EXPECT_EQ(shared_group_basis(h, h).n_g(), n);
        EXPECT_EQ(shared_group_basis(h, identity_tableau(n)).n_g(), 0u);
    }
    EXPECT_THROW(shared_group_basis(identity_tableau(2), identity_tableau(3)), std::invalid_argument);
}

TEST(shared_group, matches_brute_force_intersection) {
    std::mt19937_64 rng(62);
    for (size_t n = 1; n <= 5; n++) {
        for (int trial = 0; trial < 60; trial++) {
            StabObservable obs(n, random_circuit(n, 4 * n + 4, rng));
            auto s = offdiag_snapshot(sample_phase_circuit(n, rng), random_bits(n, rng));
            auto basis = shared_group_basis(to_tableau(s.circuit), obs.v_tableau());
            EXPECT_EQ(size_t{1} << basis.n_g(), dense::brute_shared_group_size(s, obs));
            size_t ng = for_each_shared_term(s, obs, [](const SharedTerm &) {});
            EXPECT_EQ(ng, basis.n_g());
        }
    }
}

TEST(estimate_stab_offdiag, one_qubit_hand_examples) {
    StabObservable plus(1, Circuit{GateOp::h(0)}, "plus");
    auto s = offdiag_snapshot(PhaseCircuit(1), BitVec(1));
    EXPECT_EQ(estimate_stab_offdiag(s, plus, NoiseModel::noiseless()), 1.0);
    PhaseCircuit hs(1);
    hs.set_s(0, true);
    EXPECT_EQ(estimate_stab_offdiag(offdiag_snapshot(hs, BitVec(1)), plus, NoiseModel::noiseless()), 0.0);
    EXPECT_NEAR(dense::brute_offdiag_estimator(s, plus, NoiseModel::noiseless()), 1.0, 1e-12);
    EXPECT_EQ(estimate_stab_offdiag(offdiag_snapshot(PhaseCircuit(1), BitVec::from_string("1")), plus,
                                    NoiseModel::noiseless()),
              -1.0);
}

TEST(estimate_stab_offdiag, zero_state_has_no_offdiagonal_part) {
    std::mt19937_64 rng(63);
    for (size_t n = 1; n <= 8; n++) {
        StabObservable zero(n, Circuit{});
        EXPECT_EQ(zero.offdiag_norm_sq(), 0.0);
        for (int trial = 0; trial < 30; trial++) {
            auto s = offdiag_snapshot(sample_phase_circuit(n, rng), random_bits(n, rng));
            EXPECT_EQ(estimate_stab_offdiag(s, zero, NoiseModel::zz(0.01)), 0.0);
        }
    }
}

TEST(estimate_stab_offdiag, matches_brute_force_sum) {
    std::mt19937_64 rng(64);
    for (size_t n = 1; n <= 5; n++) {
        for (auto model : {NoiseModel::noiseless(), NoiseModel::zz(0.05), NoiseModel::extended(0.1)}) {
            for (int trial = 0; trial < 40; trial++) {
                StabObservable obs(n, random_circuit(n, 4 * n + 4, rng));
                auto s = offdiag_snapshot(sample_phase_circuit(n, rng), random_bits(n, rng));
                double fast = estimate_stab_offdiag(s, obs, model);
                EXPECT_NEAR(fast, dense::brute_offdiag_estimator(s, obs, model), 1e-12);
                EXPECT_EQ(fast, estimate_stab_offdiag(s, obs, SigmaTable(n, model)));
                auto both = estimate_stab_offdiag_both(s, obs, SigmaTable(n, model));
                EXPECT_EQ(both.robust, fast);
                EXPECT_EQ(both.plain, estimate_stab_offdiag(s, obs, NoiseModel::noiseless()));
            }
        }
    }
}

TEST(estimate_stab_offdiag, noiseless_cross_check_identity) {
    std::mt19937_64 rng(65);
    for (size_t n = 1; n <= 9; n++) {
        for (int trial = 0; trial < 20; trial++) {
            StabObservable obs(n, random_circuit(n, 5 * n, rng));
            auto s = offdiag_snapshot(sample_phase_circuit(n, rng), random_bits(n, rng));
            double f = estimate_stab_offdiag(s, obs, NoiseModel::noiseless());
            // 2^n <b|U Psi U^dag|b>.
            StabState evolved = obs.state();
            evolved.apply_all(s.circuit.gates());
            double full = std::ldexp(overlap_sq(StabState::basis(s.outcome), evolved).value(), static_cast<int>(n));
            // Z-type shared terms, found by scanning every Z^z.
            auto u = to_tableau(s.circuit);
            auto basis_state = StabState::basis(s.outcome);
            double ztype = 0;
            for (uint64_t mask = 0; mask < (uint64_t{1} << n); mask++) {
                auto p = PauliString::z_type(bits_of(mask, n));
                ztype += pauli_expectation(basis_state, u.conjugate(p)) * pauli_expectation(obs.state(), p);
            }
            EXPECT_EQ(f, full - ztype);
        }
    }
}

TEST(estimate_stab_offdiag, sigma_floor_is_enforced) {
    StabObservable ghz(3, ghz_star(3));
    PhaseCircuit c(3);
    c.set_cz(0, 1, true);
    c.set_cz(0, 2, true);
    auto s = offdiag_snapshot(c, BitVec(3));
    ASSERT_GT(shared_group_basis(to_tableau(c), ghz.v_tableau()).n_g(), 0u);
    bool threw = false;
    try {
        estimate_stab_offdiag(s, ghz, NoiseModel::zz(0.5));
    } catch (const std::runtime_error &) {
        threw = true;
    }
    // Classes with n2 >= 1 vanish at p = 1/2, so any such shared element must trip the floor.
    bool hits_zero_class = false;
    for_each_shared_term(s, ghz, [&](const SharedTerm &t) {
        hits_zero_class |= classify(t.pauli).n2 >= 1;
    });
    EXPECT_EQ(threw, hits_zero_class);
}

TEST(estimate_stab_diag, examples) {
    for (size_t n = 1; n <= 6; n++) {
        Snapshot d;
        d.kind = SnapshotKind::DIAG;
        d.circuit = PhaseCircuit(n);
        d.outcome = BitVec(n);
        EXPECT_EQ(estimate_stab_diag(d, StabObservable(n, Circuit{})), 1.0);
        EXPECT_EQ(estimate_stab_diag(d, StabObservable(n, ghz_canonical(n))), 0.5);
        std::mt19937_64 rng(66 + n);
        d.outcome = random_bits(n, rng);
        EXPECT_EQ(estimate_stab_diag(d, StabObservable(n, plus_product(n))), std::ldexp(1.0, -static_cast<int>(n)));
    }
}

TEST(stab_observable, offdiag_norm_matches_dense) {
    std::mt19937_64 rng(67);
    for (size_t n = 1; n <= 5; n++) {
        for (int trial = 0; trial < 20; trial++) {
            StabObservable obs(n, random_circuit(n, 5 * n, rng));
            auto psi = dense::dense_state(obs.prep(), n);
            double diag_sq = 0;
            for (Eigen::Index b = 0; b < psi.size(); b++) {
                diag_sq += std::norm(psi(b)) * std::norm(psi(b));
            }
            EXPECT_NEAR(obs.offdiag_norm_sq(), 1 - diag_sq, 1e-14);
        }
        EXPECT_EQ(StabObservable(n, ghz_star(n)).offdiag_norm_sq(), 1 - std::ldexp(1.0, -static_cast<int>(n)));
        EXPECT_EQ(StabObservable(n, ghz_canonical(n)).offdiag_norm_sq(), 0.5);
    }
    EXPECT_THROW(StabObservable(0, Circuit{}), std::invalid_argument);
    EXPECT_THROW(StabObservable(2, Circuit{GateOp::h(2)}), std::invalid_argument);
}

TEST(aggregate, arithmetic_contract) {
    std::vector<double> f{2, 0, -2, 0}, d{1, 0};
    auto e = combine_parts(f, d, EstimatorMode::ROBUST);
    EXPECT_EQ(e.value, 0.5);
    EXPECT_EQ(e.offdiag_value, 0.0);
    EXPECT_EQ(e.diag_value, 0.5);
    EXPECT_NEAR(e.offdiag_variance, 8.0 / 3.0, 1e-15);
    EXPECT_NEAR(e.diag_variance, 0.5, 1e-15);
    EXPECT_NEAR(e.std_error, std::sqrt(8.0 / 3.0 / 4 + 0.5 / 2), 1e-15);
    EXPECT_EQ(e.n_offdiag, 4u);
    EXPECT_EQ(e.n_diag, 2u);
    EXPECT_THROW(combine_parts(std::vector<double>{}, d, EstimatorMode::PLAIN), std::invalid_argument);
    EXPECT_THROW(combine_parts(f, std::vector<double>{}, EstimatorMode::PLAIN), std::invalid_argument);

    std::vector<double> g{0, 0, 10, 1, 1, 1, 2, 2, 2};
    auto mom = combine_parts(g, d, EstimatorMode::PLAIN, AggregateOptions{3});
    // Group means 10/3, 1, 2; median 2.
    EXPECT_EQ(mom.offdiag_value, 2.0);
}

TEST(aggregate, pairwise_sum_accuracy) {
    std::vector<double> v(1000000, 0.1);
    EXPECT_NEAR(pairwise_sum(v), 100000.0, 1e-8);
    double mean, var;
    mean_and_variance(v, mean, var);
    EXPECT_NEAR(mean, 0.1, 1e-15);
    EXPECT_NEAR(var, 0.0, 1e-25);
}

TEST(aggregate, small_monte_carlo_fidelity) {
    size_t n = 5;
    auto prep = ghz_star(n);
    StabObservable obs(n, prep, "ghz-star");
    auto model = NoiseModel::zz(0.05);
    ShadowDataset ds;
    auto prepared = StabState::from_circuit(n, prep);
    for (uint64_t shot = 0; shot < 20000; shot++) {
        auto rng = shot_rng(9, 0, shot);
        if (shot % 4 == 3) {
            ds.add(sample_diag_shot(prepared, rng));
        } else {
            ds.add(simulate_shot(prepared, sample_phase_circuit(n, rng), model, rng));
        }
    }
    EXPECT_EQ(ds.offdiag.size(), 15000u);
    EXPECT_EQ(ds.diag.size(), 5000u);
    auto robust = aggregate(ds, obs, model, EstimatorMode::ROBUST);
    EXPECT_LT(std::abs(robust.value - 1.0), 3 * robust.std_error);
    auto plain = aggregate(ds, obs, model, EstimatorMode::PLAIN);
    EXPECT_LT(plain.value, robust.value);
    EXPECT_EQ(plain.diag_value, robust.diag_value);
    // Deterministic post-processing.
    EXPECT_EQ(aggregate(ds, obs, model, EstimatorMode::ROBUST).value, robust.value);

    auto j = nlohmann::json::parse(estimate_to_json(robust, "ghz-star", model));
    EXPECT_EQ(j["observable"], "ghz-star");
    EXPECT_EQ(j["mode"], "robust");
    EXPECT_EQ(j["value"].get<double>(), robust.value);
    EXPECT_EQ(j["stderr"].get<double>(), robust.std_error);
    EXPECT_EQ(j["n_offdiag"], 15000);
    EXPECT_EQ(j["n_diag"], 5000);
    EXPECT_EQ(j["model"]["kind"], "zz");
}

TEST(estimator_mode, names) {
    EXPECT_EQ(parse_mode("plain"), EstimatorMode::PLAIN);
    EXPECT_EQ(parse_mode(mode_name(EstimatorMode::ROBUST)), EstimatorMode::ROBUST);
    EXPECT_THROW(parse_mode("fast"), std::invalid_argument);
}
