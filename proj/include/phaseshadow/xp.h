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

#ifndef PHASESHADOW_XP_H
#define PHASESHADOW_XP_H

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phaseshadow/ensemble.h"
#include "phaseshadow/shadow.h"

namespace phaseshadow {

/// ghz-star, cluster-1d, plus-product, random-stabilizer or circuit-file.
Circuit named_prep(std::string_view name, size_t n, uint64_t seed = 0, const std::string &circuit_file = "");

/// H on every qubit followed by `depth` random H / S / CZ / CNOT gates.
Circuit random_stabilizer_prep(size_t n, uint64_t seed, size_t depth = 0);

struct ExperimentConfig {
    std::string name = "custom";
    std::string prep = "ghz-star";
    std::string circuit_file;
    /// Seed for random-stabilizer preps.
    uint64_t prep_seed = 0;
    std::vector<size_t> n_values;
    std::string noise = "zz";
    std::vector<double> p_values;
    size_t shots = 50000;
    /// N_f / N; the default 3:1 split.
    double offdiag_fraction = 0.75;
    std::vector<EstimatorMode> modes{EstimatorMode::ROBUST, EstimatorMode::PLAIN};
    uint64_t seed = 1;
    std::string output;

    /// Throws std::invalid_argument on empty grids, zero shots or bad names.
    void validate() const;

    static ExperimentConfig from_json_text(std::string_view text);
    /// noiseless-variance, robustness-full, robustness, variance-slope-full, variance-slope, sanity.
    static ExperimentConfig preset(std::string_view name);
};

struct ResultRow {
    std::string experiment;
    size_t n = 0;
    double p_e = 0;
    std::string mode;
    size_t shots = 0;
    double estimate = 0;
    double std_error = 0;
    /// Single-shot sample variance of the off-diagonal estimator.
    double variance = 0;
    /// Mean of 2^{n_g}; NaN where it does not apply.
    double ng_mean = 0;
    double time_ms = 0;
    uint64_t seed = 0;
};

/// Substream key of one grid point: independent of where the point sits in the grid.
uint64_t grid_key(size_t n, double p_e, std::string_view noise);

/// Per-shot values of one grid point, in shot order.
struct GridSamples {
    std::vector<double> plain;
    std::vector<double> robust;
    std::vector<double> diag;
    std::vector<double> group_size;
    double time_ms = 0;
};

/// Simulates and post-processes one grid point; shots are streamed, never stored.
/// With robust_weights off the robust values repeat the plain ones and no sigma is consulted.
GridSamples sample_grid_point(const Circuit &prep, size_t n, const NoiseModel &model, size_t shots,
                              double offdiag_fraction, uint64_t seed, bool robust_weights = true);

std::vector<ResultRow> run_experiment(const ExperimentConfig &cfg);

/// Mean per-snapshot post-processing time for the GHZ* fidelity; generation is not timed.
std::vector<ResultRow> bench_postprocessing(std::span<const size_t> n_values, size_t trials, uint64_t seed,
                                            double p_e = 0.0);

/// GHZ* fidelity from local random-Pauli-basis shadows; n <= 10.
ResultRow pauli_baseline_variance(size_t n, size_t shots, uint64_t seed);

/// "# phaseshadow-csv v1" then the column line.
void write_csv_header(std::ostream &out);
void write_csv_row(std::ostream &out, const ResultRow &row);
void write_csv(std::ostream &out, std::span<const ResultRow> rows);

/// Slope of the least-squares line through (x, y).
double least_squares_slope(std::span<const double> x, std::span<const double> y);

struct SuiteReport {
    std::string name;
    bool pass = false;
    double max_deviation = 0;
    std::string detail;
};

std::vector<std::string> verify_suite_names();
/// Runs one oracle suite; progress and tables go to `log`.
SuiteReport run_verify_suite(std::string_view name, std::ostream &log);

}  // namespace phaseshadow

#endif
