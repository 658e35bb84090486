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

#include "phaseshadow/xp.h"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "phaseshadow/parallel.h"

namespace phaseshadow {

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

Circuit h_layer(size_t n) {
    Circuit c;
    for (size_t q = 0; q < n; q++) {
        c.push_back(GateOp::h(q));
    }
    return c;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> p_grid(double lo, double hi, size_t points) {
    std::vector<double> out;
    for (size_t k = 0; k < points; k++) {
        out.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1));
    }
    return out;
}

template <typename T>
std::vector<T> scalar_or_list(const nlohmann::json &j) {
    if (j.is_array()) {
        return j.get<std::vector<T>>();
    }
    return {j.get<T>()};
}

}  // namespace

Circuit random_stabilizer_prep(size_t n, uint64_t seed, size_t depth) {
    if (n == 0) {
        throw std::invalid_argument("random_stabilizer_prep: n must be positive");
    }
    if (depth == 0) {
        depth = n * n + 10;
    }
    std::mt19937_64 rng(splitmix64(seed ^ 0x5eedULL));
    Circuit c = h_layer(n);
    for (size_t k = 0; k < depth; k++) {
        size_t a = rng() % n;
        size_t kind = n >= 2 ? rng() % 4 : rng() % 2;
        size_t b = n >= 2 ? (a + 1 + rng() % (n - 1)) % n : 0;
        switch (kind) {
            case 0:
                c.push_back(GateOp::h(a));
                break;
            case 1:
                c.push_back(GateOp::s(a));
                break;
            case 2:
                c.push_back(GateOp::cz(a, b));
                break;
            default:
                c.push_back(GateOp::cnot(a, b));
                break;
        }
    }
    return c;
}

Circuit named_prep(std::string_view name, size_t n, uint64_t seed, const std::string &circuit_file) {
    if (n == 0) {
        throw std::invalid_argument("named_prep: n must be positive");
    }
    if (name == "ghz-star") {
        Circuit c = h_layer(n);
        for (size_t j = 1; j < n; j++) {
            c.push_back(GateOp::cz(0, j));
        }
        return c;
    }
    if (name == "cluster-1d") {
        Circuit c = h_layer(n);
        for (size_t j = 0; j + 1 < n; j++) {
            c.push_back(GateOp::cz(j, j + 1));
        }
        return c;
    }
    if (name == "plus-product") {
        return h_layer(n);
    }
    if (name == "random-stabilizer") {
        return random_stabilizer_prep(n, seed);
    }
    if (name == "circuit-file") {
        std::ifstream in(circuit_file);
        if (!in) {
            throw std::invalid_argument("named_prep: cannot open circuit file '" + circuit_file + "'");
        }
        std::stringstream ss;
        ss << in.rdbuf();
        Circuit c = parse_circuit(ss.str());
        validate_circuit(c, n);
        return c;
    }
    throw std::invalid_argument("unknown prep '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
    if (n_values.empty()) {
        throw std::invalid_argument("experiment config: empty n grid");
    }
    if (p_values.empty()) {
        throw std::invalid_argument("experiment config: empty p_e grid");
    }
    if (modes.empty()) {
        throw std::invalid_argument("experiment config: no estimator modes");
    }
    if (shots < 2) {
        throw std::invalid_argument("experiment config: need at least two shots");
    }
    if (!(offdiag_fraction > 0 && offdiag_fraction < 1)) {
        throw std::invalid_argument("experiment config: offdiag_fraction must lie strictly between 0 and 1");
    }
    for (size_t n : n_values) {
        if (n == 0) {
            throw std::invalid_argument("experiment config: n must be positive");
        }
    }
    for (double p : p_values) {
        make_noise(noise, p).validate();
    }
    if (prep == "circuit-file" && circuit_file.empty()) {
        throw std::invalid_argument("experiment config: circuit-file prep needs circuit_file");
    }
    static const char *known[] = {"ghz-star", "cluster-1d", "plus-product", "random-stabilizer", "circuit-file"};
    bool ok = false;
    for (const char *k : known) {
        ok |= prep == k;
    }
    if (!ok) {
        throw std::invalid_argument("experiment config: unknown prep '" + prep + "'");
    }
}

ExperimentConfig ExperimentConfig::from_json_text(std::string_view text) {
    auto j = nlohmann::json::parse(text);
    ExperimentConfig cfg;
    if (j.contains("preset")) {
        cfg = preset(j.at("preset").get<std::string>());
    }
    if (j.contains("name")) cfg.name = j.at("name").get<std::string>();
    if (j.contains("prep")) cfg.prep = j.at("prep").get<std::string>();
    if (j.contains("circuit_file")) cfg.circuit_file = j.at("circuit_file").get<std::string>();
    if (j.contains("prep_seed")) cfg.prep_seed = j.at("prep_seed").get<uint64_t>();
    if (j.contains("n")) cfg.n_values = scalar_or_list<size_t>(j.at("n"));
    if (j.contains("noise")) cfg.noise = j.at("noise").get<std::string>();
    if (j.contains("p_e")) cfg.p_values = scalar_or_list<double>(j.at("p_e"));
    if (j.contains("shots")) cfg.shots = j.at("shots").get<size_t>();
    if (j.contains("offdiag_fraction")) cfg.offdiag_fraction = j.at("offdiag_fraction").get<double>();
    if (j.contains("modes")) {
        cfg.modes.clear();
        for (const auto &m : scalar_or_list<std::string>(j.at("modes"))) {
            cfg.modes.push_back(parse_mode(m));
        }
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::preset(std::string_view name) {
    ExperimentConfig cfg;
    cfg.name = std::string(name);
    if (name == "noiseless-variance") {
        cfg.n_values = {4, 6, 8, 10, 12};
        cfg.noise = "noiseless";
        cfg.p_values = {0.0};
        cfg.modes = {EstimatorMode::PLAIN};
    } else if (name == "robustness-full") {
        cfg.n_values = {25, 35, 45};
        cfg.p_values = p_grid(0.0, 0.01, 6);
    } else if (name == "robustness") {
        cfg.n_values = {10};
        cfg.p_values = p_grid(0.0, 0.01, 6);
    } else if (name == "variance-slope-full") {
        cfg.n_values = {20};
        cfg.p_values = p_grid(0.0, 0.01, 6);
        cfg.modes = {EstimatorMode::ROBUST};
    } else if (name == "variance-slope") {
        cfg.n_values = {16};
        cfg.p_values = p_grid(0.0, 0.01, 6);
        cfg.modes = {EstimatorMode::ROBUST};
    } else if (name == "sanity") {
        cfg.n_values = {6};
        cfg.noise = "noiseless";
        cfg.p_values = {0.0};
        cfg.shots = 20000;
        cfg.modes = {EstimatorMode::ROBUST};
    } else {
        throw std::invalid_argument("unknown experiment preset '" + std::string(name) + "'");
    }
    return cfg;
}

uint64_t grid_key(size_t n, double p_e, std::string_view noise) {
    uint64_t bits;
    std::memcpy(&bits, &p_e, sizeof(bits));
    uint64_t h = splitmix64(static_cast<uint64_t>(n));
    h = splitmix64(h ^ bits);
    for (char ch : noise) {
        h = splitmix64(h ^ static_cast<uint8_t>(ch));
    }
    return h;
}

GridSamples sample_grid_point(const Circuit &prep, size_t n, const NoiseModel &model, size_t shots,
                              double offdiag_fraction, uint64_t seed, bool robust_weights) {
    if (shots < 2) {
        throw std::invalid_argument("sample_grid_point: need at least two shots");
    }
    size_t nf = static_cast<size_t>(std::llround(static_cast<double>(shots) * offdiag_fraction));
    nf = std::min(std::max<size_t>(nf, 1), shots - 1);
    StabObservable obs(n, prep);
    StabState prepared = obs.state();
    SigmaTable table(n, robust_weights ? model : NoiseModel::noiseless());
    uint64_t key = grid_key(n, model.p_e, model.kind_name());

    GridSamples out;
    out.plain.resize(nf);
    out.robust.resize(nf);
    out.group_size.resize(nf);
    out.diag.resize(shots - nf);
    auto start = clock_type::now();
    parallel_for(shots, [&](size_t i) {
        auto rng = shot_rng(seed, key, i);
        if (i < nf) {
            auto c = sample_phase_circuit(n, rng);
            auto s = simulate_shot(prepared, c, model, rng);
            auto pair = estimate_stab_offdiag_both(s, obs, table);
            out.plain[i] = pair.plain;
            out.robust[i] = pair.robust;
            out.group_size[i] = std::ldexp(1.0, static_cast<int>(pair.n_g));
        } else {
            out.diag[i - nf] = estimate_stab_diag(sample_diag_shot(prepared, rng), obs);
        }
    });
    out.time_ms = elapsed_ms(start);
    return out;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig &cfg) {
    cfg.validate();
    std::vector<ResultRow> rows;
    bool want_robust = false;
    for (auto m : cfg.modes) {
        want_robust |= m == EstimatorMode::ROBUST;
    }
    for (size_t n : cfg.n_values) {
        Circuit prep = named_prep(cfg.prep, n, cfg.prep_seed, cfg.circuit_file);
        for (double p : cfg.p_values) {
            NoiseModel model = make_noise(cfg.noise, p);
            GridSamples g = sample_grid_point(prep, n, model, cfg.shots, cfg.offdiag_fraction, cfg.seed, want_robust);
            double ng_mean = pairwise_sum(g.group_size) / static_cast<double>(g.group_size.size());
            for (auto mode : cfg.modes) {
                const auto &values = mode == EstimatorMode::PLAIN ? g.plain : g.robust;
                Estimate e = combine_parts(values, g.diag, mode);
                ResultRow row;
                row.experiment = cfg.name;
                row.n = n;
                row.p_e = p;
                row.mode = mode_name(mode);
                row.shots = cfg.shots;
                row.estimate = e.value;
                row.std_error = e.std_error;
                row.variance = e.offdiag_variance;
                row.ng_mean = ng_mean;
                row.time_ms = g.time_ms;
                row.seed = cfg.seed;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

std::vector<ResultRow> bench_postprocessing(std::span<const size_t> n_values, size_t trials, uint64_t seed,
                                            double p_e) {
    if (trials == 0) {
        throw std::invalid_argument("bench_postprocessing: trials must be positive");
    }
    std::vector<ResultRow> rows;
    NoiseModel model = p_e > 0 ? NoiseModel::zz(p_e) : NoiseModel::noiseless();
    for (size_t n : n_values) {
        Circuit prep = named_prep("ghz-star", n);
        StabObservable obs(n, prep, "ghz-star");
        SigmaTable table(n, model);
        uint64_t key = grid_key(n, p_e, "bench");
        std::vector<Snapshot> snaps(trials);
        parallel_for(trials, [&](size_t i) {
            auto rng = shot_rng(seed, key, i);
            snaps[i] = simulate_shot(obs.state(), sample_phase_circuit(n, rng), model, rng);
        });
        // Warm caches and the allocator before timing.
        for (size_t i = 0; i < std::min<size_t>(trials, 20); i++) {
            estimate_stab_offdiag_both(snaps[i], obs, table);
        }
        std::vector<double> values(trials), groups(trials);
        auto start = clock_type::now();
        for (size_t i = 0; i < trials; i++) {
            auto pair = estimate_stab_offdiag_both(snaps[i], obs, table);
            values[i] = pair.robust;
            groups[i] = std::ldexp(1.0, static_cast<int>(pair.n_g));
        }
        double total = elapsed_ms(start);
        ResultRow row;
        row.experiment = "bench-postproc";
        row.n = n;
        row.p_e = p_e;
        row.mode = "robust";
        row.shots = trials;
        double mean, var;
        mean_and_variance(values, mean, var);
        row.estimate = mean;
        row.variance = var;
        row.std_error = std::sqrt(var / static_cast<double>(trials));
        row.ng_mean = pairwise_sum(groups) / static_cast<double>(trials);
        row.time_ms = total / static_cast<double>(trials);
        row.seed = seed;
        rows.push_back(row);
    }
    return rows;
}

ResultRow pauli_baseline_variance(size_t n, size_t shots, uint64_t seed) {
    if (n == 0 || n > 10) {
        throw std::invalid_argument("pauli_baseline_variance: limited to 1 <= n <= 10");
    }
    if (shots < 2) {
        throw std::invalid_argument("pauli_baseline_variance: need at least two shots");
    }
    StabObservable obs(n, named_prep("ghz-star", n), "ghz-star");
    // Every element of the stabilizer group, with its letter sign.
    std::vector<PauliString> group{PauliString::identity(n)};
    {
        PauliString acc(n);
        const auto &gens = obs.state().stabilizers;
        for (uint64_t idx = 1; idx < (uint64_t{1} << n); idx++) {
            multiply_into(acc, gens[static_cast<size_t>(std::countr_zero(idx))]);
            group.push_back(acc);
        }
    }
    std::vector<double> values(shots);
    auto start = clock_type::now();
    uint64_t key = grid_key(n, 0.0, "pauli-baseline");
    parallel_for(shots, [&](size_t i) {
        auto rng = shot_rng(seed, key, i);
        // Basis per qubit: 0 = X, 1 = Y, 2 = Z.
        std::vector<int> basis(n);
        StabState s = obs.state();
        for (size_t q = 0; q < n; q++) {
            basis[q] = static_cast<int>(rng() % 3);
            if (basis[q] == 1) {
                s.apply(GateOp::s_dag(q));
            }
            if (basis[q] != 2) {
                s.apply(GateOp::h(q));
            }
        }
        BitVec b = s.measure_all(rng);
        double total = 0;
        for (const auto &p : group) {
            double term = p.letter_phase() == 0 ? 1.0 : -1.0;
            for (size_t q = 0; q < n && term != 0; q++) {
                bool x = p.xs[q], z = p.zs[q];
                if (!x && !z) {
                    continue;
                }
                int letter = x && z ? 1 : (x ? 0 : 2);
                term = basis[q] == letter ? term * (b[q] ? -3.0 : 3.0) : 0.0;
            }
            total += term;
        }
        values[i] = std::ldexp(total, -static_cast<int>(n));
    });
    ResultRow row;
    row.experiment = "pauli-baseline";
    row.n = n;
    row.p_e = 0;
    row.mode = "pauli";
    row.shots = shots;
    double mean, var;
    mean_and_variance(values, mean, var);
    row.estimate = mean;
    row.variance = var;
    row.std_error = std::sqrt(var / static_cast<double>(shots));
    row.ng_mean = std::numeric_limits<double>::quiet_NaN();
    row.time_ms = elapsed_ms(start);
    row.seed = seed;
    return row;
}

void write_csv_header(std::ostream &out) {
    out << "# phaseshadow-csv v1\n";
    out << "experiment,n,p_e,mode,N,estimate,stderr,variance,ng_mean,time_ms,seed\n";
}

void write_csv_row(std::ostream &out, const ResultRow &r) {
    out << r.experiment << ',' << r.n << ',' << format_double(r.p_e) << ',' << r.mode << ',' << r.shots << ','
        << format_double(r.estimate) << ',' << format_double(r.std_error) << ',' << format_double(r.variance) << ','
        << format_double(r.ng_mean) << ',' << format_double(r.time_ms) << ',' << r.seed << '\n';
}

void write_csv(std::ostream &out, std::span<const ResultRow> rows) {
    write_csv_header(out);
    for (const auto &r : rows) {
        write_csv_row(out, r);
    }
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("least_squares_slope: need at least two paired points");
    }
    double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t k = 0; k < x.size(); k++) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (size_t k = 0; k < x.size(); k++) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
    }
    if (sxx == 0) {
        throw std::invalid_argument("least_squares_slope: x values are all equal");
    }
    return sxy / sxx;
}

}  // namespace phaseshadow
