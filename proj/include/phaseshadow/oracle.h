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

#ifndef PHASESHADOW_ORACLE_H
#define PHASESHADOW_ORACLE_H

#include <complex>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "phaseshadow/ensemble.h"
#include "phaseshadow/noise.h"
#include "phaseshadow/pauli.h"
#include "phaseshadow/shadow.h"
#include "phaseshadow/tableau.h"

namespace phaseshadow::oracle {

using cdouble = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// Operator dimension cap: 2^{m n} with m n <= kMaxOperatorQubits.
inline constexpr size_t kMaxOperatorQubits = 10;
/// Largest n for which every phase circuit is enumerated.
inline constexpr size_t kMaxEnumeratedQubits = 5;

/// Dense Pauli matrix. Qubit j is bit j of the basis index.
DenseOperator dense_pauli(const PauliString &p);
/// Dense unitary of a single gate on n qubits.
DenseOperator dense_gate(const GateOp &g, size_t n);
/// Product of gate unitaries, first gate rightmost.
DenseOperator dense_circuit(std::span<const GateOp> gates, size_t n);
/// gates applied to |0...0>.
DenseVector dense_state(std::span<const GateOp> gates, size_t n);

/// U = H^{(x)n} U_A built directly from the entries of A.
DenseOperator dense_phase_unitary(const PhaseCircuit &c);
/// Diagonal of U_A, as phases indexed by basis state.
DenseVector phase_diagonal(const PhaseCircuit &c);

/// Multi-copy tensor product with copy 0 on the low bits of the index.
DenseOperator tensor_copies(const DenseOperator &first, const DenseOperator &second);

/// Entrywise OR of the m! copy-permutation operators on m copies of n qubits.
DenseOperator union_permutation_operator(size_t n, size_t m);

/// 2^{-n} sum over every A and b of Phi^{(x)m}, Phi = U^dag|b><b|U.
DenseOperator moment_exact(size_t n, size_t m);

/// Same for m = 2 with the first copy replaced by its noisy adjoint under `model`.
DenseOperator noisy_moment2_exact(size_t n, const NoiseModel &model);

/// Closed form: per-site classification of each entry into the Delta, (I - Delta), (S - Delta) supports.
DenseOperator noisy_moment2_closed_form(size_t n, const NoiseModel &model);

/// sigma_P recovered from a second moment: 2^n tr(M (P (x) P)).
double pauli_coefficient(const DenseOperator &moment, const PauliString &p);

/// Distribution over Z-error patterns e (bit j set means Z on qubit j) for the diagonal layer of c.
std::vector<double> error_pattern_distribution(const PhaseCircuit &c, const NoiseModel &model);

/// Born probabilities of measuring U rho U^dag (noisy diagonal layer) in the computational basis.
std::vector<double> noisy_outcome_distribution(const DenseVector &psi, const PhaseCircuit &c, const NoiseModel &model);

struct ExactExpectation {
    /// Expected value of the off-diagonal plus diagonal estimator.
    double estimator = 0;
    /// tr(Psi rho) from dense vectors.
    double truth = 0;
};

/// Sums exact probability times estimator value over every A, every error branch and every b.
/// Plain mode uses unit weights on the same noisy data.
ExactExpectation exact_estimator_expectation(std::span<const GateOp> prep, const StabObservable &obs,
                                             const NoiseModel &model, EstimatorMode mode);

/// Sum over all non-Z-type P of sigma_P^{-1} tr(Phi P) tr(Psi P), using dense vectors.
double brute_offdiag_estimator(const Snapshot &s, const StabObservable &obs, const NoiseModel &model);

/// Number of phaseless Paulis stabilizing both U^dag|b> and |Psi>, found by dense enumeration.
size_t brute_shared_group_size(const Snapshot &s, const StabObservable &obs);

struct ChannelDistances {
    /// Closed-form Gaussian average against the Pauli channel.
    double analytic = 0;
    /// Sampled average against the Pauli channel.
    double monte_carlo = 0;
};

/// Frobenius distances between normalized Choi matrices of the ZZ(theta) rotation
/// averaged over theta ~ N(0, sigma_sq) and the Pauli channel with rate angle_to_pe(sigma_sq).
ChannelDistances gaussian_channel_equivalence(double sigma_sq, size_t samples, uint64_t seed);

}  // namespace phaseshadow::oracle

#endif
