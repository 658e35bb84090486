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

#ifndef PHASESHADOW_SHADOW_H
#define PHASESHADOW_SHADOW_H

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "phaseshadow/ensemble.h"
#include "phaseshadow/sigma.h"
#include "phaseshadow/tableau.h"

namespace phaseshadow {

enum class EstimatorMode { PLAIN, ROBUST };

std::string mode_name(EstimatorMode mode);
EstimatorMode parse_mode(std::string_view name);

/// Projector onto the stabilizer state |Psi> = G|0...0>, where G is the gate list `prep`.
///
/// Writing Psi = V^dag |0><0| V, the prep circuit G is V^dag.
class StabObservable {
   public:
    StabObservable() = default;
    StabObservable(size_t n, Circuit prep, std::string name = "");

    size_t num_qubits() const {
        return n_;
    }
    const Circuit &prep() const {
        return prep_;
    }
    const std::string &name() const {
        return name_;
    }
    /// Tableau of G = V^dag (forward action P -> G P G^dag).
    const CliffordTableau &prep_tableau() const {
        return prep_tableau_;
    }
    /// Tableau of V.
    const CliffordTableau &v_tableau() const {
        return v_tableau_;
    }
    const StabState &state() const {
        return state_;
    }

    /// ||Psi_f||_2^2 = 1 - sum_b <b|Psi|b>^2, exact.
    double offdiag_norm_sq() const;

   private:
    size_t n_ = 0;
    Circuit prep_;
    std::string name_;
    CliffordTableau prep_tableau_;
    CliffordTableau v_tableau_;
    StabState state_;
};

/// Exponent vectors a whose stabilizer V^dag Z^a V is, up to sign, also a stabilizer of U^dag|b>.
struct SharedGroupBasis {
    std::vector<BitVec> a_basis;

    size_t n_g() const {
        return a_basis.size();
    }
};

/// u and v are the tableaux of U and V.
SharedGroupBasis shared_group_basis(const CliffordTableau &u, const CliffordTableau &v);

/// 2^n sigma_q^{-1} <b|U q U^dag|b>. Plain mode is the noiseless model.
double estimate_pauli(const Snapshot &s, const PauliString &q, const NoiseModel &model);

/// One element P of the shared group, with the product of its two signed expectations.
struct SharedTerm {
    const PauliString &pauli;
    /// <b|U P U^dag|b> * <Psi|P|Psi>, in {+1, -1}.
    int sign;
};

/// Visits every non-Z-type element of the shared phaseless group. Returns n_g.
size_t for_each_shared_term(const Snapshot &s, const StabObservable &obs,
                            const std::function<void(const SharedTerm &)> &visit);

/// Fast off-diagonal estimate of tr(Psi rho_f) from one snapshot.
double estimate_stab_offdiag(const Snapshot &s, const StabObservable &obs, const NoiseModel &model);
double estimate_stab_offdiag(const Snapshot &s, const StabObservable &obs, const SigmaTable &table);

/// Plain and robust values from a single pass over the shared group.
struct OffdiagPair {
    double plain = 0;
    double robust = 0;
    size_t n_g = 0;
};
OffdiagPair estimate_stab_offdiag_both(const Snapshot &s, const StabObservable &obs, const SigmaTable &table);

/// <b|Psi|b>.
double estimate_stab_diag(const Snapshot &s, const StabObservable &obs);

struct ShadowDataset {
    SnapshotHeader header;
    std::vector<Snapshot> offdiag;
    std::vector<Snapshot> diag;

    void add(Snapshot s);
};

struct Estimate {
    double value = 0;
    double std_error = 0;
    size_t n_offdiag = 0;
    size_t n_diag = 0;
    EstimatorMode mode = EstimatorMode::ROBUST;
    double offdiag_value = 0;
    double diag_value = 0;
    /// Sample variances (n - 1 denominator) of the single-shot estimators.
    double offdiag_variance = 0;
    double diag_variance = 0;
};

struct AggregateOptions {
    /// 0 disables median of means for the off-diagonal part.
    size_t mom_group_size = 0;
};

/// Combines per-shot values: mean of each part, stderr from Var_f/N_f + Var_d/N_d.
Estimate combine_parts(std::span<const double> offdiag_values, std::span<const double> diag_values,
                       EstimatorMode mode, const AggregateOptions &opts = {});

Estimate aggregate(const ShadowDataset &ds, const StabObservable &obs, const NoiseModel &model, EstimatorMode mode,
                   const AggregateOptions &opts = {});

/// {observable, mode, value, stderr, n_offdiag, n_diag, model}.
std::string estimate_to_json(const Estimate &e, const std::string &observable, const NoiseModel &model);

/// Pairwise summation.
double pairwise_sum(std::span<const double> values);
/// Mean and unbiased sample variance.
void mean_and_variance(std::span<const double> values, double &mean, double &variance);

}  // namespace phaseshadow

#endif
