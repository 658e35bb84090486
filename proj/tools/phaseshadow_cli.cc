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

// phaseshadow: sample, estimate, verify, xp, bench.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "phaseshadow/parallel.h"
#include "phaseshadow/xp.h"

using namespace phaseshadow;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct SampleArgs {
    std::string prep = "ghz-star";
    std::string circuit_file;
    uint64_t prep_seed = 0;
    size_t n = 4;
    std::string noise = "zz";
    double p_e = 0;
    size_t shots = 1000;
    double offdiag_fraction = 0.75;
    uint64_t seed = 1;
    std::string out;
};

int run_sample(const SampleArgs &a) {
    Circuit prep = named_prep(a.prep, a.n, a.prep_seed, a.circuit_file);
    NoiseModel model = make_noise(a.noise, a.p_e);
    model.validate();
    if (a.shots < 2) {
        throw std::invalid_argument("sample: need at least two shots");
    }
    size_t nf = static_cast<size_t>(std::llround(static_cast<double>(a.shots) * a.offdiag_fraction));
    nf = std::min(std::max<size_t>(nf, 1), a.shots - 1);
    StabState prepared = StabState::from_circuit(a.n, prep);
    uint64_t key = grid_key(a.n, model.p_e, model.kind_name());
    std::vector<Snapshot> snaps(a.shots);
    parallel_for(a.shots, [&](size_t i) {
        auto rng = shot_rng(a.seed, key, i);
        if (i < nf) {
            auto c = sample_phase_circuit(a.n, rng);
            snaps[i] = simulate_shot(prepared, c, model, rng);
        } else {
            snaps[i] = sample_diag_shot(prepared, rng);
        }
    });
    SnapshotHeader h{a.n, model, a.seed, format_circuit(prep)};
    if (a.out.empty() || a.out == "-") {
        write_snapshots(std::cout, h, snaps);
    } else {
        std::ofstream out(a.out);
        if (!out) {
            throw std::runtime_error("cannot write '" + a.out + "'");
        }
        write_snapshots(out, h, snaps);
    }
    return 0;
}

struct EstimateArgs {
    std::string input;
    std::string observable;
    std::string circuit_file;
    uint64_t prep_seed = 0;
    std::string mode = "robust";
    std::string noise;
    double p_e = -1;
    size_t mom_group = 0;
};

int run_estimate(const EstimateArgs &a) {
    SnapshotFile file;
    if (a.input.empty() || a.input == "-") {
        file = read_snapshots(std::cin);
    } else {
        std::ifstream in(a.input);
        if (!in) {
            throw std::runtime_error("cannot open '" + a.input + "'");
        }
        file = read_snapshots(in);
    }
    size_t n = file.header.n;
    Circuit obs_prep = a.observable.empty() ? parse_circuit(file.header.prep)
                                            : named_prep(a.observable, n, a.prep_seed, a.circuit_file);
    StabObservable obs(n, obs_prep, a.observable.empty() ? "prepared-state" : a.observable);
    // The calibration model defaults to the one recorded at sampling time.
    NoiseModel model = file.header.noise;
    if (!a.noise.empty()) {
        model = make_noise(a.noise, a.p_e < 0 ? model.p_e : a.p_e);
    } else if (a.p_e >= 0) {
        model = make_noise(model.kind_name(), a.p_e);
    }
    ShadowDataset ds;
    ds.header = file.header;
    for (auto &s : file.snapshots) {
        ds.add(std::move(s));
    }
    AggregateOptions opts;
    opts.mom_group_size = a.mom_group;
    Estimate e = aggregate(ds, obs, model, parse_mode(a.mode), opts);
    std::cout << estimate_to_json(e, obs.name(), model) << '\n';
    return 0;
}

int run_verify(const std::string &suite) {
    std::vector<std::string> names = suite == "all" ? verify_suite_names() : std::vector<std::string>{suite};
    bool ok = true;
    for (const auto &name : names) {
        SuiteReport r = run_verify_suite(name, std::cout);
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " max_deviation=" << r.max_deviation;
        if (!r.detail.empty()) {
            std::cout << " (" << r.detail << ")";
        }
        std::cout << '\n';
        ok &= r.pass;
    }
    return ok ? 0 : 1;
}

struct XpArgs {
    std::string name;
    std::string config;
    std::string out;
    std::vector<size_t> n_values;
    std::vector<double> p_values;
    size_t shots = 0;
    uint64_t seed = 0;
    std::string noise;
    std::string prep;
};

int run_xp(const XpArgs &a) {
    ExperimentConfig cfg;
    if (!a.config.empty()) {
        cfg = ExperimentConfig::from_json_text(read_file(a.config));
    } else {
        cfg = ExperimentConfig::preset(a.name);
    }
    if (!a.n_values.empty()) cfg.n_values = a.n_values;
    if (!a.p_values.empty()) cfg.p_values = a.p_values;
    if (a.shots) cfg.shots = a.shots;
    if (a.seed) cfg.seed = a.seed;
    if (!a.noise.empty()) cfg.noise = a.noise;
    if (!a.prep.empty()) cfg.prep = a.prep;
    if (!a.out.empty()) cfg.output = a.out;
    auto rows = run_experiment(cfg);
    if (cfg.output.empty() || cfg.output == "-") {
        write_csv(std::cout, rows);
    } else {
        std::ofstream out(cfg.output);
        if (!out) {
            throw std::runtime_error("cannot write '" + cfg.output + "'");
        }
        write_csv(out, rows);
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"phase-shadow estimation with phase-error robust weights"};
    app.require_subcommand(1);

    SampleArgs sa;
    auto *sample = app.add_subcommand("sample", "simulate snapshots and write the snapshot store");
    sample->add_option("--prep", sa.prep, "ghz-star, cluster-1d, plus-product, random-stabilizer, circuit-file");
    sample->add_option("--circuit-file", sa.circuit_file);
    sample->add_option("--prep-seed", sa.prep_seed);
    sample->add_option("-n,--qubits", sa.n)->required();
    sample->add_option("--noise", sa.noise, "noiseless, zz, extended");
    sample->add_option("--p-e", sa.p_e);
    sample->add_option("--shots", sa.shots);
    sample->add_option("--offdiag-fraction", sa.offdiag_fraction);
    sample->add_option("--seed", sa.seed);
    sample->add_option("-o,--out", sa.out);

    EstimateArgs ea;
    auto *estimate = app.add_subcommand("estimate", "estimate a stabilizer-state fidelity from a snapshot store");
    estimate->add_option("input", ea.input, "snapshot store, '-' for stdin");
    estimate->add_option("--observable", ea.observable, "named prep; defaults to the prepared state");
    estimate->add_option("--circuit-file", ea.circuit_file);
    estimate->add_option("--prep-seed", ea.prep_seed);
    estimate->add_option("--mode", ea.mode, "robust or plain");
    estimate->add_option("--noise", ea.noise, "override the recorded noise kind");
    estimate->add_option("--p-e", ea.p_e, "override the recorded error rate");
    estimate->add_option("--mom-group", ea.mom_group, "median-of-means group size");

    std::string suite = "all";
    auto *verify = app.add_subcommand("verify", "run an oracle suite");
    verify->add_option("suite", suite, "moments, noisy, sigma, unbiased, postproc, gaussian or all");

    XpArgs xa;
    auto *xp = app.add_subcommand("xp", "run an experiment grid and write CSV");
    xp->add_option("name", xa.name, "noiseless-variance, robustness-full, robustness, variance-slope-full, variance-slope, sanity");
    xp->add_option("--config", xa.config, "JSON experiment config");
    xp->add_option("-o,--out", xa.out);
    xp->add_option("-n,--qubits", xa.n_values);
    xp->add_option("--p-e", xa.p_values);
    xp->add_option("--shots", xa.shots);
    xp->add_option("--seed", xa.seed);
    xp->add_option("--noise", xa.noise);
    xp->add_option("--prep", xa.prep);

    std::string bench_what;
    std::vector<size_t> bench_n{10, 20, 30, 40, 50, 60};
    size_t bench_trials = 10000;
    uint64_t bench_seed = 1;
    std::string bench_out;
    auto *bench = app.add_subcommand("bench", "time post-processing");
    bench->add_option("what", bench_what, "postproc")->required();
    bench->add_option("-n,--qubits", bench_n);
    bench->add_option("--trials", bench_trials);
    bench->add_option("--seed", bench_seed);
    bench->add_option("-o,--out", bench_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) return run_sample(sa);
        if (*estimate) return run_estimate(ea);
        if (*verify) return run_verify(suite);
        if (*xp) {
            if (xa.name.empty() && xa.config.empty()) {
                throw std::invalid_argument("xp: give a preset name or --config");
            }
            return run_xp(xa);
        }
        if (*bench) {
            if (bench_what != "postproc") {
                throw std::invalid_argument("bench: unknown target '" + bench_what + "'");
            }
            auto rows = bench_postprocessing(bench_n, bench_trials, bench_seed);
            if (bench_out.empty() || bench_out == "-") {
                write_csv(std::cout, rows);
            } else {
                std::ofstream out(bench_out);
                write_csv(out, rows);
            }
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "phaseshadow: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
