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

#include "phaseshadow/oracle.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "phaseshadow/sigma.h"

namespace phaseshadow::oracle {

namespace {

constexpr cdouble kI{0.0, 1.0};

cdouble i_pow(unsigned k) {
    static const cdouble table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[k & 3];
}

uint64_t mask_of(const BitVec &v) {
    if (v.size() > 63) {
        throw std::invalid_argument("oracle: too many qubits for a dense mask");
    }
    return v.size() ? v.words()[0] : 0;
}

int parity(uint64_t x) {
    return std::popcount(x) & 1;
}

void check_operator_cap(size_t n, size_t m) {
    if (n == 0 || n * m > kMaxOperatorQubits) {
        throw std::invalid_argument("oracle: operator dimension 2^" + std::to_string(n * m) + " exceeds the cap 2^" +
                                    std::to_string(kMaxOperatorQubits));
    }
}

void check_enumeration_cap(size_t n) {
    if (n == 0 || n > kMaxEnumeratedQubits) {
        throw std::invalid_argument("oracle: circuit enumeration is limited to n <= " +
                                    std::to_string(kMaxEnumeratedQubits));
    }
}

DenseOperator hadamard_all(size_t n) {
    size_t d = size_t{1} << n;
    double scale = std::ldexp(1.0, -static_cast<int>(n));
    scale = std::sqrt(scale);
    DenseOperator h(d, d);
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c < d; c++) {
            h(r, c) = parity(r & c) ? -scale : scale;
        }
    }
    return h;
}

/// Every upper-triangle assignment of an n-qubit phase circuit.
std::vector<PhaseCircuit> all_phase_circuits(size_t n) {
    size_t free = n * (n + 1) / 2;
    std::vector<PhaseCircuit> out;
    out.reserve(size_t{1} << free);
    for (uint64_t bits = 0; bits < (uint64_t{1} << free); bits++) {
        BitVec upper(free);
        for (size_t k = 0; k < free; k++) {
            if ((bits >> k) & 1) {
                upper.flip(k);
            }
        }
        out.push_back(PhaseCircuit::from_upper(n, upper));
    }
    return out;
}

/// P|v> for the Pauli with masks (x, z) and i-exponent phase.
DenseVector apply_pauli(uint64_t x, uint64_t z, unsigned phase, const DenseVector &v) {
    DenseVector out(v.size());
    cdouble f = i_pow(phase);
    for (Eigen::Index c = 0; c < v.size(); c++) {
        uint64_t cc = static_cast<uint64_t>(c);
        out(static_cast<Eigen::Index>(cc ^ x)) = parity(z & cc) ? -f * v(c) : f * v(c);
    }
    return out;
}

cdouble pauli_expectation_dense(uint64_t x, uint64_t z, unsigned phase, const DenseVector &v) {
    return v.dot(apply_pauli(x, z, phase, v));
}

}  // namespace

DenseOperator dense_pauli(const PauliString &p) {
    size_t n = p.num_qubits();
    check_operator_cap(n, 1);
    size_t d = size_t{1} << n;
    uint64_t x = mask_of(p.xs), z = mask_of(p.zs);
    DenseOperator m = DenseOperator::Zero(d, d);
    cdouble f = i_pow(p.phase);
    for (size_t c = 0; c < d; c++) {
        m(c ^ x, c) = parity(z & c) ? -f : f;
    }
    return m;
}

DenseOperator dense_gate(const GateOp &g, size_t n) {
    validate_gate(g, n);
    check_operator_cap(n, 1);
    size_t d = size_t{1} << n;
    DenseOperator m = DenseOperator::Zero(d, d);
    uint64_t a = uint64_t{1} << g.q0;
    uint64_t b = g.is_two_qubit() ? uint64_t{1} << g.q1 : 0;
    double r = 1.0 / std::sqrt(2.0);
    for (size_t c = 0; c < d; c++) {
        bool ca = c & a;
        switch (g.kind) {
            case GateKind::H:
                m(c & ~a, c) += r;
                m(c | a, c) += ca ? -r : r;
                break;
            case GateKind::S:
                m(c, c) = ca ? kI : 1.0;
                break;
            case GateKind::S_DAG:
                m(c, c) = ca ? -kI : 1.0;
                break;
            case GateKind::X:
                m(c ^ a, c) = 1.0;
                break;
            case GateKind::Z:
                m(c, c) = ca ? -1.0 : 1.0;
                break;
            case GateKind::CZ:
                m(c, c) = (ca && (c & b)) ? -1.0 : 1.0;
                break;
            case GateKind::CNOT:
                m(ca ? c ^ b : c, c) = 1.0;
                break;
        }
    }
    return m;
}

DenseOperator dense_circuit(std::span<const GateOp> gates, size_t n) {
    check_operator_cap(n, 1);
    size_t d = size_t{1} << n;
    DenseOperator u = DenseOperator::Identity(d, d);
    for (const auto &g : gates) {
        u = dense_gate(g, n) * u;
    }
    return u;
}

DenseVector dense_state(std::span<const GateOp> gates, size_t n) {
    check_operator_cap(n, 1);
    size_t d = size_t{1} << n;
    DenseVector v = DenseVector::Zero(d);
    v(0) = 1.0;
    for (const auto &g : gates) {
        v = dense_gate(g, n) * v;
    }
    return v;
}

DenseVector phase_diagonal(const PhaseCircuit &c) {
    size_t n = c.n;
    check_operator_cap(n, 1);
    size_t d = size_t{1} << n;
    DenseVector diag(d);
    for (size_t x = 0; x < d; x++) {
        unsigned k = 0;
        for (size_t i = 0; i < n; i++) {
            if (!((x >> i) & 1)) {
                continue;
            }
            if (c.has_s(i)) {
                k += 1;
            }
            for (size_t j = i + 1; j < n; j++) {
                if (((x >> j) & 1) && c.has_cz(i, j)) {
                    k += 2;
                }
            }
        }
        diag(x) = i_pow(k);
    }
    return diag;
}

DenseOperator dense_phase_unitary(const PhaseCircuit &c) {
    return hadamard_all(c.n) * phase_diagonal(c).asDiagonal();
}

DenseOperator tensor_copies(const DenseOperator &first, const DenseOperator &second) {
    Eigen::Index r1 = first.rows(), c1 = first.cols();
    DenseOperator out(r1 * second.rows(), c1 * second.cols());
    for (Eigen::Index r2 = 0; r2 < second.rows(); r2++) {
        for (Eigen::Index c2 = 0; c2 < second.cols(); c2++) {
            out.block(r2 * r1, c2 * c1, r1, c1) = second(r2, c2) * first;
        }
    }
    return out;
}

DenseOperator union_permutation_operator(size_t n, size_t m) {
    if (m < 2 || m > 3) {
        throw std::invalid_argument("union_permutation_operator: m must be 2 or 3");
    }
    check_operator_cap(n, m);
    size_t d = size_t{1} << n;
    size_t dim = size_t{1} << (n * m);
    DenseOperator out = DenseOperator::Zero(dim, dim);
    std::vector<size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<size_t> digits(m);
    do {
        for (size_t r = 0; r < dim; r++) {
            for (size_t k = 0; k < m; k++) {
                digits[k] = (r >> (k * n)) & (d - 1);
            }
            size_t c = 0;
            for (size_t k = 0; k < m; k++) {
                c |= digits[perm[k]] << (k * n);
            }
            out(r, c) = 1.0;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

DenseOperator moment_exact(size_t n, size_t m) {
    if (m < 2 || m > 3) {
        throw std::invalid_argument("moment_exact: m must be 2 or 3");
    }
    check_operator_cap(n, m);
    check_enumeration_cap(n);
    size_t d = size_t{1} << n;
    size_t dim = size_t{1} << (n * m);
    auto circuits = all_phase_circuits(n);
    DenseOperator acc = DenseOperator::Zero(dim, dim);
    DenseOperator cols(dim, d);
    for (const auto &c : circuits) {
        DenseOperator u_dag = dense_phase_unitary(c).adjoint();
        for (size_t b = 0; b < d; b++) {
            DenseVector u = u_dag.col(b);
            for (size_t idx = 0; idx < dim; idx++) {
                cdouble v = 1.0;
                for (size_t k = 0; k < m; k++) {
                    v *= u((idx >> (k * n)) & (d - 1));
                }
                cols(idx, b) = v;
            }
        }
        acc.noalias() += cols * cols.adjoint();
    }
    return acc / (static_cast<double>(d) * static_cast<double>(circuits.size()));
}

std::vector<double> error_pattern_distribution(const PhaseCircuit &c, const NoiseModel &model) {
    size_t n = c.n;
    check_operator_cap(n, 1);
    size_t d = size_t{1} << n;
    std::vector<double> dist(d, 0.0), next(d);
    dist[0] = 1.0;
    if (model.kind == NoiseKind::NOISELESS) {
        return dist;
    }
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            if (!c.has_cz(i, j)) {
                continue;
            }
            double p = model.pair_rate(i, j);
            uint64_t zi = uint64_t{1} << i, zj = uint64_t{1} << j;
            std::vector<std::pair<uint64_t, double>> branches;
            if (model.kind == NoiseKind::EXTENDED) {
                branches = {{0, 1 - 0.75 * p}, {zi, 0.25 * p}, {zj, 0.25 * p}, {zi | zj, 0.25 * p}};
            } else {
                branches = {{0, 1 - p}, {zi | zj, p}};
            }
            std::fill(next.begin(), next.end(), 0.0);
            for (size_t e = 0; e < d; e++) {
                if (dist[e] == 0) {
                    continue;
                }
                for (auto [flip, w] : branches) {
                    next[e ^ flip] += dist[e] * w;
                }
            }
            dist.swap(next);
        }
    }
    return dist;
}

DenseOperator noisy_moment2_exact(size_t n, const NoiseModel &model) {
    check_operator_cap(n, 2);
    check_enumeration_cap(n);
    size_t d = size_t{1} << n;
    size_t dim = d * d;
    DenseOperator hn = hadamard_all(n);
    auto circuits = all_phase_circuits(n);
    DenseOperator acc = DenseOperator::Zero(dim, dim);
    for (const auto &c : circuits) {
        auto errors = error_pattern_distribution(c, model);
        DenseVector diag = phase_diagonal(c);
        std::vector<DenseVector> cols;
        for (size_t b = 0; b < d; b++) {
            // u_e = U_A^dag Z^e H |b>.
            DenseVector hb = hn.col(b);
            DenseVector clean = diag.conjugate().cwiseProduct(hb);
            for (size_t e = 0; e < d; e++) {
                if (errors[e] == 0) {
                    continue;
                }
                DenseVector noisy = diag.conjugate().cwiseProduct(apply_pauli(0, e, 0, hb));
                DenseVector w(dim);
                for (size_t idx = 0; idx < dim; idx++) {
                    w(idx) = noisy(idx & (d - 1)) * clean(idx >> n);
                }
                cols.push_back(std::sqrt(errors[e]) * w);
            }
        }
        DenseOperator block(dim, cols.size());
        for (size_t k = 0; k < cols.size(); k++) {
            block.col(k) = cols[k];
        }
        acc.noalias() += block * block.adjoint();
    }
    return acc / (static_cast<double>(d) * static_cast<double>(circuits.size()));
}

DenseOperator noisy_moment2_closed_form(size_t n, const NoiseModel &model) {
    check_operator_cap(n, 2);
    double keep, flip;
    bool extended = false;
    switch (model.kind) {
        case NoiseKind::NOISELESS:
            keep = 1;
            flip = 0;
            break;
        case NoiseKind::ZZ:
            keep = 1 - model.p_e;
            flip = model.p_e;
            break;
        case NoiseKind::EXTENDED:
            keep = 1 - 0.5 * model.p_e;
            flip = 0.5 * model.p_e;
            extended = true;
            break;
        default:
            throw std::invalid_argument("noisy_moment2_closed_form: uniform models only");
    }
    size_t d = size_t{1} << n;
    size_t dim = d * d;
    double scale = 1.0 / (static_cast<double>(d) * static_cast<double>(d));
    DenseOperator out = DenseOperator::Zero(dim, dim);
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            size_t r0 = r & (d - 1), r1 = r >> n, c0 = c & (d - 1), c1 = c >> n;
            int i = 0, j = 0, k = 0;
            bool ok = true;
            for (size_t q = 0; q < n && ok; q++) {
                int a0 = (r0 >> q) & 1, a1 = (r1 >> q) & 1, b0 = (c0 >> q) & 1, b1 = (c1 >> q) & 1;
                if (a0 == a1 && b0 == a0 && b1 == a0) {
                    i++;
                } else if (a0 != a1 && b0 == a0 && b1 == a1) {
                    j++;
                } else if (a0 != a1 && b0 == a1 && b1 == a0) {
                    k++;
                } else {
                    ok = false;
                }
            }
            if (!ok) {
                continue;
            }
            double keep_exp = static_cast<double>(i * k) + (extended ? k * (k - 1) / 2.0 : 0.0);
            double flip_exp = static_cast<double>(j * k);
            double w = (keep_exp == 0 ? 1.0 : std::pow(keep, keep_exp)) * (flip_exp == 0 ? 1.0 : std::pow(flip, flip_exp));
            out(r, c) = scale * w;
        }
    }
    return out;
}

double pauli_coefficient(const DenseOperator &moment, const PauliString &p) {
    size_t n = p.num_qubits();
    size_t d = size_t{1} << n;
    if (static_cast<size_t>(moment.rows()) != d * d) {
        throw std::invalid_argument("pauli_coefficient: moment dimension does not match the Pauli");
    }
    DenseOperator pp = dense_pauli(p);
    DenseOperator both = tensor_copies(pp, pp);
    cdouble tr = (moment * both).trace();
    return static_cast<double>(d) * tr.real();
}

std::vector<double> noisy_outcome_distribution(const DenseVector &psi, const PhaseCircuit &c,
                                               const NoiseModel &model) {
    size_t n = c.n;
    size_t d = size_t{1} << n;
    if (static_cast<size_t>(psi.size()) != d) {
        throw std::invalid_argument("noisy_outcome_distribution: state dimension mismatch");
    }
    DenseOperator hn = hadamard_all(n);
    DenseVector phased = phase_diagonal(c).cwiseProduct(psi);
    auto errors = error_pattern_distribution(c, model);
    std::vector<double> probs(d, 0.0);
    for (size_t e = 0; e < d; e++) {
        if (errors[e] == 0) {
            continue;
        }
        DenseVector out = hn * apply_pauli(0, e, 0, phased);
        for (size_t b = 0; b < d; b++) {
            probs[b] += errors[e] * std::norm(out(b));
        }
    }
    return probs;
}

ExactExpectation exact_estimator_expectation(std::span<const GateOp> prep, const StabObservable &obs,
                                             const NoiseModel &model, EstimatorMode mode) {
    size_t n = obs.num_qubits();
    check_enumeration_cap(n);
    check_operator_cap(n, 1);
    size_t d = size_t{1} << n;
    DenseVector rho = dense_state(prep, n);
    DenseVector psi = dense_state(obs.prep(), n);

    ExactExpectation out;
    out.truth = std::norm(psi.dot(rho));

    SigmaTable table(n, mode == EstimatorMode::PLAIN ? NoiseModel::noiseless() : model);
    auto circuits = all_phase_circuits(n);
    double offdiag = 0;
    for (const auto &c : circuits) {
        auto probs = noisy_outcome_distribution(rho, c, model);
        double acc = 0;
        for (size_t b = 0; b < d; b++) {
            if (probs[b] == 0) {
                continue;
            }
            Snapshot s;
            s.circuit = c;
            s.outcome = BitVec(n);
            for (size_t q = 0; q < n; q++) {
                if ((b >> q) & 1) {
                    s.outcome.flip(q);
                }
            }
            acc += probs[b] * estimate_stab_offdiag(s, obs, table);
        }
        offdiag += acc;
    }
    offdiag /= static_cast<double>(circuits.size());

    double diag = 0;
    for (size_t b = 0; b < d; b++) {
        double pb = std::norm(rho(b));
        if (pb == 0) {
            continue;
        }
        Snapshot s;
        s.kind = SnapshotKind::DIAG;
        s.circuit = PhaseCircuit(n);
        s.outcome = BitVec(n);
        for (size_t q = 0; q < n; q++) {
            if ((b >> q) & 1) {
                s.outcome.flip(q);
            }
        }
        diag += pb * estimate_stab_diag(s, obs);
    }
    out.estimator = offdiag + diag;
    return out;
}

namespace {

struct DenseSnapshotVectors {
    DenseVector phi;
    DenseVector psi;
};

DenseSnapshotVectors snapshot_vectors(const Snapshot &s, const StabObservable &obs) {
    size_t n = obs.num_qubits();
    if (s.circuit.n != n) {
        throw std::invalid_argument("oracle: snapshot and observable sizes differ");
    }
    check_operator_cap(n, 1);
    DenseOperator u = dense_phase_unitary(s.circuit);
    uint64_t b = mask_of(s.outcome);
    return {u.adjoint().col(static_cast<Eigen::Index>(b)), dense_state(obs.prep(), n)};
}

}  // namespace

double brute_offdiag_estimator(const Snapshot &s, const StabObservable &obs, const NoiseModel &model) {
    size_t n = obs.num_qubits();
    if (n > 6) {
        throw std::invalid_argument("brute_offdiag_estimator: limited to n <= 6");
    }
    auto vecs = snapshot_vectors(s, obs);
    size_t d = size_t{1} << n;
    double total = 0;
    PauliString p(n);
    for (uint64_t x = 1; x < d; x++) {
        for (uint64_t z = 0; z < d; z++) {
            unsigned phase = static_cast<unsigned>(std::popcount(x & z));
            cdouble tr_psi = pauli_expectation_dense(x, z, phase, vecs.psi);
            if (std::abs(tr_psi) < 1e-9) {
                continue;
            }
            cdouble tr_phi = pauli_expectation_dense(x, z, phase, vecs.phi);
            if (std::abs(tr_phi) < 1e-9) {
                continue;
            }
            for (size_t q = 0; q < n; q++) {
                p.xs.set(q, (x >> q) & 1);
                p.zs.set(q, (z >> q) & 1);
            }
            p.phase = static_cast<uint8_t>(phase & 3);
            total += (tr_phi * tr_psi).real() / sigma_for(p, model);
        }
    }
    return total;
}

size_t brute_shared_group_size(const Snapshot &s, const StabObservable &obs) {
    size_t n = obs.num_qubits();
    auto vecs = snapshot_vectors(s, obs);
    size_t d = size_t{1} << n;
    size_t count = 0;
    for (uint64_t x = 0; x < d; x++) {
        for (uint64_t z = 0; z < d; z++) {
            unsigned phase = static_cast<unsigned>(std::popcount(x & z));
            if (std::abs(pauli_expectation_dense(x, z, phase, vecs.psi)) > 0.5 &&
                std::abs(pauli_expectation_dense(x, z, phase, vecs.phi)) > 0.5) {
                count++;
            }
        }
    }
    return count;
}

ChannelDistances gaussian_channel_equivalence(double sigma_sq, size_t samples, uint64_t seed) {
    if (!(sigma_sq >= 0)) {
        throw std::invalid_argument("gaussian_channel_equivalence: variance must be non-negative");
    }
    constexpr size_t d = 4;
    double p = angle_to_pe(sigma_sq);
    DenseOperator zz = dense_pauli(PauliString::from_str("ZZ"));
    std::array<double, d> lambda{};
    for (size_t x = 0; x < d; x++) {
        lambda[x] = parity(x) ? -1.0 : 1.0;
    }

    // Normalized Choi matrices: J = (1/d) sum_ij |i><j| (x) E(|i><j|), input on the high index.
    DenseOperator pauli_choi = DenseOperator::Zero(d * d, d * d);
    DenseOperator analytic_choi = DenseOperator::Zero(d * d, d * d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            DenseOperator e = DenseOperator::Zero(d, d);
            e(i, j) = 1.0;
            DenseOperator out = (1 - p) * e + p * zz * e * zz.adjoint();
            pauli_choi.block(i * d, j * d, d, d) = out / static_cast<double>(d);
            double diff = lambda[i] - lambda[j];
            analytic_choi(i * d + i, j * d + j) = std::exp(-sigma_sq * diff * diff / 8.0) / static_cast<double>(d);
        }
    }

    ChannelDistances out;
    out.analytic = (analytic_choi - pauli_choi).norm();

    if (samples > 0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> angle(0.0, std::sqrt(sigma_sq));
        DenseOperator sampled = DenseOperator::Zero(d * d, d * d);
        DenseVector v = DenseVector::Zero(d * d);
        for (size_t k = 0; k < samples; k++) {
            double theta = sigma_sq > 0 ? angle(rng) : 0.0;
            // exp(-i theta ZZ / 2) is diagonal with entries exp(-i theta lambda / 2).
            for (size_t i = 0; i < d; i++) {
                v(i * d + i) = std::polar(1.0, -0.5 * theta * lambda[i]);
            }
            sampled.noalias() += v * v.adjoint();
        }
        sampled /= static_cast<double>(samples) * static_cast<double>(d);
        out.monte_carlo = (sampled - pauli_choi).norm();
    }
    return out;
}

}  // namespace phaseshadow::oracle
