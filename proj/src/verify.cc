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

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "phaseshadow/oracle.h"
#include "phaseshadow/sigma.h"
#include "phaseshadow/xp.h"

namespace phaseshadow {

namespace {

using oracle::DenseOperator;

double max_abs(const DenseOperator &m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

/// Hermitian letter Paulis on n qubits, all 4^n of them.
std::vector<PauliString> all_paulis(size_t n) {
    std::vector<PauliString> out;
    for (uint64_t x = 0; x < (uint64_t{1} << n); x++) {
        for (uint64_t z = 0; z < (uint64_t{1} << n); z++) {
            PauliString p(n);
            for (size_t q = 0; q < n; q++) {
                p.xs.set(q, (x >> q) & 1);
                p.zs.set(q, (z >> q) & 1);
            }
            p.phase = static_cast<uint8_t>(p.num_y() & 3);
            out.push_back(p);
        }
    }
    return out;
}

SuiteReport suite_moments(std::ostream &log) {
    SuiteReport r{"moments", true, 0, ""};
    std::vector<std::pair<size_t, size_t>> cases{{1, 2}, {2, 2}, {3, 2}, {4, 2}, {1, 3}, {2, 3}, {3, 3}};
    for (auto [n, m] : cases) {
        auto mom = oracle::moment_exact(n, m);
        DenseOperator want = oracle::union_permutation_operator(n, m) * std::ldexp(1.0, -static_cast<int>(n * m));
        double dev = max_abs(mom - want);
        log << "  moments n=" << n << " m=" << m << " max_dev=" << dev << '\n';
        r.max_deviation = std::max(r.max_deviation, dev);
    }
    r.pass = r.max_deviation < 1e-12;
    return r;
}

SuiteReport suite_noisy(std::ostream &log) {
    SuiteReport r{"noisy", true, 0, ""};
    for (size_t n : {2, 3}) {
        for (double p : {0.0, 0.05, 0.2}) {
            for (auto nm : {NoiseModel::zz(p), NoiseModel::extended(p)}) {
                auto exact = oracle::noisy_moment2_exact(n, nm);
                double closed = max_abs(exact - oracle::noisy_moment2_closed_form(n, nm));
                size_t dim = size_t{1} << (2 * n);
                DenseOperator rebuilt = DenseOperator::Zero(dim, dim);
                for (const auto &q : all_paulis(n)) {
                    auto dq = oracle::dense_pauli(q);
                    rebuilt += sigma_value(classify(q), nm) * oracle::tensor_copies(dq, dq);
                }
                rebuilt *= std::ldexp(1.0, -3 * static_cast<int>(n));
                double decomp = max_abs(exact - rebuilt);
                log << "  noisy " << nm.kind_name() << " n=" << n << " p_e=" << p << " closed_form_dev=" << closed
                    << " pauli_decomposition_dev=" << decomp << '\n';
                r.max_deviation = std::max({r.max_deviation, closed, decomp});
            }
        }
    }
    r.pass = r.max_deviation < 1e-10;
    return r;
}

SuiteReport suite_sigma(std::ostream &log) {
    SuiteReport r{"sigma", true, 0, ""};
    size_t violations = 0;
    for (size_t n = 1; n <= 64; n++) {
        for (size_t n3 = 0; n3 <= n; n3++) {
            for (size_t n2 = 0; n2 + n3 <= n; n2++) {
                PauliClass c{n - n2 - n3, n2, n3};
                if (n3 >= 1) {
                    violations += sigma_exact(c, 0.0) != 1.0;
                    violations += sigma_extended(c, 0.0) != 1.0;
                } else {
                    double want = n2 >= 1 ? 0.0 : std::ldexp(1.0, static_cast<int>(n));
                    for (double p : {0.0, 0.05, 0.2}) {
                        violations += sigma_exact(c, p) != want;
                        violations += sigma_extended(c, p) != want;
                    }
                }
            }
        }
    }
    log << "  special values n<=64: " << violations << " violations\n";
    for (size_t n = 1; n <= 3; n++) {
        for (auto nm : {NoiseModel::zz(0.05), NoiseModel::zz(0.2), NoiseModel::extended(0.1)}) {
            auto mom = oracle::noisy_moment2_exact(n, nm);
            for (size_t n3 = 1; n3 <= n; n3++) {
                for (size_t n2 = 0; n2 + n3 <= n; n2++) {
                    PauliClass c{n - n2 - n3, n2, n3};
                    PauliString rep(n);
                    for (size_t k = c.n1; k < c.n1 + c.n2; k++) {
                        rep.zs.set(k, true);
                    }
                    for (size_t k = c.n1 + c.n2; k < n; k++) {
                        rep.xs.set(k, true);
                    }
                    double dev = std::abs(sigma_value(c, nm) - oracle::pauli_coefficient(mom, rep));
                    r.max_deviation = std::max(r.max_deviation, dev);
                }
            }
        }
    }
    log << "  dense moment agreement n<=3: max_dev=" << r.max_deviation << '\n';
    log << "  n1,n2,n3,sigma_zz(0.1),sigma_extended(0.1)\n";
    for (size_t n3 = 0; n3 <= 3; n3++) {
        for (size_t n2 = 0; n2 + n3 <= 3; n2++) {
            PauliClass c{3 - n2 - n3, n2, n3};
            log << "  " << c.n1 << ',' << c.n2 << ',' << c.n3 << ',' << sigma_exact(c, 0.1) << ','
                << sigma_extended(c, 0.1) << '\n';
        }
    }
    r.pass = violations == 0 && r.max_deviation < 1e-10;
    r.detail = std::to_string(violations) + " special-value violations";
    return r;
}

SuiteReport suite_unbiased(std::ostream &log) {
    SuiteReport r{"unbiased", true, 0, ""};
    size_t n = 3;
    std::vector<std::pair<std::string, Circuit>> states{{"ghz-star", named_prep("ghz-star", n)},
                                                        {"plus-product", named_prep("plus-product", n)}};
    for (uint64_t seed = 1; seed <= 5; seed++) {
        states.emplace_back("random-stabilizer-" + std::to_string(seed), random_stabilizer_prep(n, seed));
    }
    double min_plain_bias = INFINITY;
    for (double p : {0.05, 0.2}) {
        auto model = NoiseModel::zz(p);
        for (const auto &[name, prep] : states) {
            StabObservable obs(n, prep, name);
            auto robust = oracle::exact_estimator_expectation(prep, obs, model, EstimatorMode::ROBUST);
            auto plain = oracle::exact_estimator_expectation(prep, obs, model, EstimatorMode::PLAIN);
            double dev = std::abs(robust.estimator - robust.truth);
            double bias = std::abs(plain.estimator - plain.truth);
            log << "  unbiased p_e=" << p << " " << name << " truth=" << robust.truth << " robust_dev=" << dev
                << " plain_bias=" << bias << '\n';
            r.max_deviation = std::max(r.max_deviation, dev);
            min_plain_bias = std::min(min_plain_bias, bias);
        }
    }
    r.pass = r.max_deviation < 1e-9 && min_plain_bias > 1e-3;
    r.detail = "min plain |bias| = " + std::to_string(min_plain_bias);
    return r;
}

SuiteReport suite_postproc(std::ostream &log) {
    SuiteReport r{"postproc", true, 0, ""};
    size_t group_mismatches = 0;
    for (size_t n = 2; n <= 6; n++) {
        std::mt19937_64 rng(splitmix64(0xa1a1 + n));
        double dev_n = 0;
        for (size_t trial = 0; trial < 1000; trial++) {
            StabObservable obs(n, random_stabilizer_prep(n, rng()));
            Snapshot s;
            s.circuit = sample_phase_circuit(n, rng);
            s.outcome = BitVec(n);
            for (size_t q = 0; q < n; q++) {
                s.outcome.set(q, rng() & 1);
            }
            for (auto model : {NoiseModel::noiseless(), NoiseModel::zz(0.05)}) {
                double fast = estimate_stab_offdiag(s, obs, model);
                double brute = oracle::brute_offdiag_estimator(s, obs, model);
                dev_n = std::max(dev_n, std::abs(fast - brute));
            }
            auto basis = shared_group_basis(to_tableau(s.circuit), obs.v_tableau());
            group_mismatches += (size_t{1} << basis.n_g()) != oracle::brute_shared_group_size(s, obs);
        }
        log << "  postproc n=" << n << " instances=1000 max_dev=" << dev_n << '\n';
        r.max_deviation = std::max(r.max_deviation, dev_n);
    }
    r.pass = r.max_deviation <= 1e-12 && group_mismatches == 0;
    r.detail = std::to_string(group_mismatches) + " shared-group size mismatches";
    return r;
}

SuiteReport suite_gaussian(std::ostream &log) {
    SuiteReport r{"gaussian", true, 0, ""};
    auto zero = oracle::gaussian_channel_equivalence(0.0, 0, 1);
    auto analytic = oracle::gaussian_channel_equivalence(0.1, 0, 1);
    auto mc = oracle::gaussian_channel_equivalence(0.1, 1000000, 20240611);
    double pe = angle_to_pe(0.04);
    log << "  gaussian sigma^2=0 distance=" << zero.analytic << '\n';
    log << "  gaussian sigma^2=0.1 analytic_distance=" << analytic.analytic << " monte_carlo_distance(1e6)="
        << mc.monte_carlo << '\n';
    log << "  angle_to_pe(0.04)=" << pe << '\n';
    r.max_deviation = analytic.analytic;
    r.pass = zero.analytic == 0 && analytic.analytic < 1e-12 && mc.monte_carlo < 1e-3 && std::abs(pe - 0.0099007) <= 1e-7;
    r.detail = "monte carlo distance " + std::to_string(mc.monte_carlo);
    return r;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
    return {"moments", "noisy", "sigma", "unbiased", "postproc", "gaussian"};
}

SuiteReport run_verify_suite(std::string_view name, std::ostream &log) {
    if (name == "moments") return suite_moments(log);
    if (name == "noisy") return suite_noisy(log);
    if (name == "sigma") return suite_sigma(log);
    if (name == "unbiased") return suite_unbiased(log);
    if (name == "postproc") return suite_postproc(log);
    if (name == "gaussian") return suite_gaussian(log);
    throw std::invalid_argument("unknown verify suite '" + std::string(name) + "'");
}

}  // namespace phaseshadow
