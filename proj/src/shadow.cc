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

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "phaseshadow/parallel.h"

namespace phaseshadow {

namespace {

constexpr size_t kMaxSharedRank = 40;

/// Tableau of U G, i.e. Q -> U G Q G^dag U^dag, and the left null basis of its C block.
struct SharedGroup {
    CliffordTableau ug;
    ZTableau zt;
    std::vector<BitVec> basis;
};

SharedGroup shared_group_from_prep(const CliffordTableau &u, const CliffordTableau &g) {
    if (u.num_qubits() != g.num_qubits()) {
        throw std::invalid_argument("shared group: qubit count mismatch");
    }
    SharedGroup out;
    out.ug = g.then(u);
    out.zt = z_tableau_phaseless(out.ug);
    out.basis = left_null_basis(out.zt.c);
    return out;
}

void check_sigma(double sigma, const PauliString &p) {
    if (!(sigma >= kSigmaFloor)) {
        throw std::runtime_error("sigma for " + p.str() + " is " + std::to_string(sigma) +
                                 ", below the robust-estimation floor");
    }
}

int basis_state_sign(const PauliString &q, const BitVec &b) {
    // q = i^phase Z^z with phase in {0, 2}.
    int sign = q.phase == 2 ? -1 : 1;
    return q.zs.dot(b) ? -sign : sign;
}

}  // namespace

std::string mode_name(EstimatorMode mode) {
    return mode == EstimatorMode::PLAIN ? "plain" : "robust";
}

EstimatorMode parse_mode(std::string_view name) {
    if (name == "plain") {
        return EstimatorMode::PLAIN;
    }
    if (name == "robust") {
        return EstimatorMode::ROBUST;
    }
    throw std::invalid_argument("unknown estimator mode '" + std::string(name) + "'");
}

StabObservable::StabObservable(size_t n, Circuit prep, std::string name)
    : n_(n), prep_(std::move(prep)), name_(std::move(name)) {
    if (n_ == 0) {
        throw std::invalid_argument("StabObservable: n must be positive");
    }
    prep_tableau_ = CliffordTableau::from_circuit(n_, prep_);
    v_tableau_ = prep_tableau_.inverse();
    state_ = StabState::from_tableau(prep_tableau_);
}

double StabObservable::offdiag_norm_sq() const {
    std::vector<BitVec> xs;
    for (const auto &s : state_.stabilizers) {
        xs.push_back(s.xs);
    }
    size_t r = rank(BitMatrix(std::move(xs), n_));
    return 1.0 - std::ldexp(1.0, -static_cast<int>(r));
}

SharedGroupBasis shared_group_basis(const CliffordTableau &u, const CliffordTableau &v) {
    auto group = shared_group_from_prep(u, v.inverse());
    return SharedGroupBasis{std::move(group.basis)};
}

double estimate_pauli(const Snapshot &s, const PauliString &q, const NoiseModel &model) {
    if (s.kind != SnapshotKind::OFFDIAG) {
        throw std::invalid_argument("estimate_pauli: needs an off-diagonal snapshot");
    }
    if (q.num_qubits() != s.circuit.n) {
        throw std::invalid_argument("estimate_pauli: qubit count mismatch");
    }
    if (is_ztype(q)) {
        throw std::invalid_argument("estimate_pauli: Z-type observable " + q.str());
    }
    if (!q.is_hermitian()) {
        throw std::invalid_argument("estimate_pauli: observable is not Hermitian");
    }
    double sigma = sigma_for(q, model);
    check_sigma(sigma, q);
    PauliString conj = to_tableau(s.circuit).conjugate(q);
    if (!is_ztype(conj)) {
        return 0.0;
    }
    double scale = std::ldexp(1.0, static_cast<int>(s.circuit.n));
    return basis_state_sign(conj, s.outcome) * scale / sigma;
}

size_t for_each_shared_term(const Snapshot &s, const StabObservable &obs,
                            const std::function<void(const SharedTerm &)> &visit) {
    size_t n = obs.num_qubits();
    if (s.circuit.n != n || s.outcome.size() != n) {
        throw std::invalid_argument("for_each_shared_term: qubit count mismatch");
    }
    if (s.kind != SnapshotKind::OFFDIAG) {
        throw std::invalid_argument("for_each_shared_term: needs an off-diagonal snapshot");
    }
    CliffordTableau u = to_tableau(s.circuit);
    auto group = shared_group_from_prep(u, obs.prep_tableau());
    size_t ng = group.basis.size();
    if (ng > kMaxSharedRank) {
        throw std::runtime_error("shared stabilizer group of rank " + std::to_string(ng) + " is too large to enumerate");
    }

    // P_k = G Z^a G^dag is the shared element, Q_k = U P_k U^dag its Z-type image.
    CliffordTableau u_inv = u.inverse();
    std::vector<PauliString> ps, qs;
    ps.reserve(ng);
    qs.reserve(ng);
    for (const auto &a : group.basis) {
        PauliString za = PauliString::z_type(a);
        PauliString p = obs.prep_tableau().conjugate(za);
        PauliString q = group.ug.conjugate(za);
        BitVec a_prime = group.zt.d.left_multiply(a);
        if (!is_ztype(q) || q.zs != a_prime) {
            throw std::logic_error("shared group: conjugated generator is not Z^{aD}");
        }
        PauliString other = u_inv.conjugate(PauliString::z_type(a_prime));
        if (!other.equals_phaseless(p)) {
            throw std::logic_error("shared group: the two conjugation routes disagree");
        }
        ps.push_back(std::move(p));
        qs.push_back(std::move(q));
    }

    PauliString p(n), q(n);
    uint64_t count = uint64_t{1} << ng;
    for (uint64_t idx = 1; idx < count; idx++) {
        // Gray code: one generator toggles per step; all elements commute.
        size_t k = static_cast<size_t>(std::countr_zero(idx));
        multiply_into(p, ps[k]);
        multiply_into(q, qs[k]);
        if (is_ztype(p)) {
            continue;
        }
        // <Psi|P|Psi> = <0|Z^a|0> = +1 by construction of P.
        visit(SharedTerm{p, basis_state_sign(q, s.outcome)});
    }
    return ng;
}

double estimate_stab_offdiag(const Snapshot &s, const StabObservable &obs, const NoiseModel &model) {
    double total = 0;
    for_each_shared_term(s, obs, [&](const SharedTerm &t) {
        double sigma = sigma_for(t.pauli, model);
        check_sigma(sigma, t.pauli);
        total += t.sign / sigma;
    });
    return total;
}

double estimate_stab_offdiag(const Snapshot &s, const StabObservable &obs, const SigmaTable &table) {
    double total = 0;
    for_each_shared_term(s, obs, [&](const SharedTerm &t) {
        double sigma = table.at(t.pauli);
        check_sigma(sigma, t.pauli);
        total += t.sign / sigma;
    });
    return total;
}

OffdiagPair estimate_stab_offdiag_both(const Snapshot &s, const StabObservable &obs, const SigmaTable &table) {
    OffdiagPair out;
    out.n_g = for_each_shared_term(s, obs, [&](const SharedTerm &t) {
        double sigma = table.at(t.pauli);
        check_sigma(sigma, t.pauli);
        out.plain += t.sign;
        out.robust += t.sign / sigma;
    });
    return out;
}

double estimate_stab_diag(const Snapshot &s, const StabObservable &obs) {
    if (s.outcome.size() != obs.num_qubits()) {
        throw std::invalid_argument("estimate_stab_diag: qubit count mismatch");
    }
    return overlap_sq(StabState::basis(s.outcome), obs.state()).value();
}

void ShadowDataset::add(Snapshot s) {
    if (s.kind == SnapshotKind::OFFDIAG) {
        offdiag.push_back(std::move(s));
    } else {
        diag.push_back(std::move(s));
    }
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 16) {
        double total = 0;
        for (double v : values) {
            total += v;
        }
        return total;
    }
    size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

void mean_and_variance(std::span<const double> values, double &mean, double &variance) {
    if (values.empty()) {
        throw std::invalid_argument("mean_and_variance: empty input");
    }
    mean = pairwise_sum(values) / static_cast<double>(values.size());
    if (values.size() < 2) {
        variance = 0;
        return;
    }
    std::vector<double> sq(values.size());
    for (size_t i = 0; i < values.size(); i++) {
        double d = values[i] - mean;
        sq[i] = d * d;
    }
    variance = pairwise_sum(sq) / static_cast<double>(values.size() - 1);
}

Estimate combine_parts(std::span<const double> offdiag_values, std::span<const double> diag_values,
                       EstimatorMode mode, const AggregateOptions &opts) {
    if (offdiag_values.empty()) {
        throw std::invalid_argument("aggregate: no off-diagonal snapshots");
    }
    if (diag_values.empty()) {
        throw std::invalid_argument("aggregate: no diagonal snapshots");
    }
    Estimate e;
    e.mode = mode;
    e.n_offdiag = offdiag_values.size();
    e.n_diag = diag_values.size();
    mean_and_variance(offdiag_values, e.offdiag_value, e.offdiag_variance);
    mean_and_variance(diag_values, e.diag_value, e.diag_variance);
    if (opts.mom_group_size > 0 && offdiag_values.size() >= 2 * opts.mom_group_size) {
        size_t g = opts.mom_group_size;
        std::vector<double> means;
        for (size_t start = 0; start + g <= offdiag_values.size(); start += g) {
            means.push_back(pairwise_sum(offdiag_values.subspan(start, g)) / static_cast<double>(g));
        }
        std::sort(means.begin(), means.end());
        size_t m = means.size();
        e.offdiag_value = m % 2 ? means[m / 2] : 0.5 * (means[m / 2 - 1] + means[m / 2]);
    }
    e.value = e.offdiag_value + e.diag_value;
    e.std_error = std::sqrt(e.offdiag_variance / static_cast<double>(e.n_offdiag) +
                            e.diag_variance / static_cast<double>(e.n_diag));
    return e;
}

Estimate aggregate(const ShadowDataset &ds, const StabObservable &obs, const NoiseModel &model, EstimatorMode mode,
                   const AggregateOptions &opts) {
    size_t n = obs.num_qubits();
    SigmaTable table(n, mode == EstimatorMode::PLAIN ? NoiseModel::noiseless() : model);
    std::vector<double> f(ds.offdiag.size()), d(ds.diag.size());
    parallel_for(f.size(), [&](size_t i) {
        f[i] = estimate_stab_offdiag(ds.offdiag[i], obs, table);
    });
    parallel_for(d.size(), [&](size_t i) {
        d[i] = estimate_stab_diag(ds.diag[i], obs);
    });
    return combine_parts(f, d, mode, opts);
}

std::string estimate_to_json(const Estimate &e, const std::string &observable, const NoiseModel &model) {
    nlohmann::json j;
    j["observable"] = observable;
    j["mode"] = mode_name(e.mode);
    j["value"] = e.value;
    j["stderr"] = e.std_error;
    j["n_offdiag"] = e.n_offdiag;
    j["n_diag"] = e.n_diag;
    j["model"] = {{"kind", model.kind_name()}, {"p_e", model.p_e}};
    return j.dump();
}

}  // namespace phaseshadow
