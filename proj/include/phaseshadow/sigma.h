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

#ifndef PHASESHADOW_SIGMA_H
#define PHASESHADOW_SIGMA_H

#include <vector>

#include "phaseshadow/noise.h"
#include "phaseshadow/pauli.h"

namespace phaseshadow {

/// Robust estimation refuses to divide by coefficients below this value.
inline constexpr double kSigmaFloor = 1e-6;

struct SigmaQuery {
    PauliClass cls;
    NoiseModel model;
};

/// Pauli eigenvalue of the noisy measurement channel under zz noise with rate p.
///
///   sum_s sum_t (-1)^t C(n1, s-t) C(n2, t) (1-p)^{(n1+n2-s) n3} p^{s n3}
///
/// Terms are formed in log space with explicit signs and added with Neumaier
/// summation. If the result is tiny next to the largest term the value is
/// recomputed exactly in big-integer arithmetic.
double sigma_exact(const PauliClass &cls, double p);

/// Same sum for the extended model: rate p/2 per site pair and an extra
/// (1 - p/2)^{n3 (n3 - 1) / 2} factor.
double sigma_extended(const PauliClass &cls, double p);

/// Exact big-integer evaluation of the zz double sum with per-site rate q,
/// times (1-q)^{extra_exponent}. Only dyadic inputs are exact, which every double is.
double sigma_sum_bigint(const PauliClass &cls, double q, size_t extra_exponent = 0);
/// The floating-point path alone, without the cancellation fallback.
double sigma_sum_compensated(const PauliClass &cls, double q, size_t extra_exponent = 0);

/// Low-order approximation (1-p)^{n3 (n - n3)}.
double sigma_approx(const PauliClass &cls, double p);
/// Heterogeneous approximation: product of (1 - rate(s, t)) over s without X and t with X.
double sigma_approx(const PauliString &p, const NoiseModel &model);

/// Class-level dispatch for noiseless, zz and extended.
double sigma_value(const PauliClass &cls, const NoiseModel &model);
double sigma_value(const SigmaQuery &q);

/// Sigma for a concrete non-Z-type Pauli. zz_het goes through the product approximation.
double sigma_for(const PauliString &p, const NoiseModel &model);

/// Every class of n qubits evaluated once, O(1) lookups afterwards.
class SigmaTable {
   public:
    SigmaTable() = default;
    SigmaTable(size_t n, NoiseModel model);

    size_t num_qubits() const {
        return n_;
    }
    const NoiseModel &model() const {
        return model_;
    }
    double at(const PauliClass &cls) const;
    /// Throws for Z-type p.
    double at(const PauliString &p) const;
    /// Smallest coefficient over all non-Z-type classes.
    double min_offdiag() const;

   private:
    size_t index(size_t n2, size_t n3) const;

    size_t n_ = 0;
    NoiseModel model_;
    std::vector<double> values_;
};

}  // namespace phaseshadow

#endif
