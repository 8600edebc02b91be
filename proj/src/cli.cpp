// Copyright 2026 The ditomo Authors
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

#include "ditomo/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "CLI11.hpp"
#include "ditomo/io.hpp"

namespace ditomo {

namespace {

std::ofstream open_output(const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    return out;
}

void print_summary(std::ostream &log, const BenchmarkSummary &summary) {
    log << std::left << std::setw(6) << "state" << std::setw(15) << "method" << std::right << std::setw(7) << "runs"
        << std::setw(10) << "mean" << std::setw(10) << "stddev" << std::setw(10) << "min" << std::setw(10) << "median"
        << std::setw(10) << "max" << std::setw(6) << ">1" << std::setw(8) << "neg-ev"
        << "\n";
    log << std::fixed << std::setprecision(5);
    for (const auto &[key, s] : summary.fidelity) {
        log << std::left << std::setw(6) << to_string(key.first) << std::setw(15) << to_string(key.second)
            << std::right << std::setw(7) << s.count << std::setw(10) << s.mean << std::setw(10) << s.stddev
            << std::setw(10) << s.min << std::setw(10) << s.median << std::setw(10) << s.max << std::setw(6)
            << s.above_one << std::setw(8) << s.negative_eigenvalue << "\n";
    }
    if (!summary.pairing.empty()) {
        log << "\nhybrid vs DD-ML (trace distance, sum of |eigenvalues|)\n";
        log << std::left << std::setw(6) << "state" << std::right << std::setw(7) << "runs" << std::setw(14)
            << "med D(h,dd)" << std::setw(14) << "med D(h,true)" << std::setw(10) << "ratio" << std::setw(14)
            << "med ratio"
            << "\n";
        for (const auto &[state, p] : summary.pairing) {
            log << std::left << std::setw(6) << to_string(state) << std::right << std::setw(7) << p.count
                << std::setw(14) << p.median_hybrid_vs_dd << std::setw(14) << p.median_hybrid_vs_true << std::setw(10)
                << p.ratio_of_medians << std::setw(14) << p.median_of_ratios << "\n";
        }
    }
    log << std::defaultfloat;
}

}  // namespace

int cmd_simulate(const SimulateOptions &options, std::ostream &log) {
    StateKind kind = parse_state_kind(options.state);
    if (options.design != "full" && options.design != "partial") {
        throw std::invalid_argument("design must be 'full' or 'partial'");
    }
    if (!(options.n > 0)) {
        throw std::invalid_argument("n must be positive");
    }
    BellScenario scenario = BellScenario::uniform();
    TomographyDesign design =
        options.design == "full" ? build_joint_povm(scenario) : build_partial_design(scenario).design;
    DensityMatrix rho = make_test_state(kind);
    CountTable counts;
    if (options.noiseless) {
        counts = expected_counts(rho, design, options.n);
    } else {
        Prng rng(options.seed);
        counts = sample_counts(rng, rho, design, options.n);
    }
    std::ofstream out = open_output(options.out);
    write_counts_csv(out, counts);
    log << "total " << counts.total() << "\n";
    return 0;
}

int cmd_reconstruct(const ReconstructOptions &options, const Config &config, std::ostream &log) {
    MethodId method = parse_method(options.method);
    BellScenario scenario = BellScenario::uniform();
    TomographyDesign full = build_joint_povm(scenario);
    PartialDesign partial = build_partial_design(scenario);

    std::ifstream in(options.counts);
    if (!in) {
        throw std::runtime_error("cannot read '" + options.counts + "'");
    }
    CountTable counts = read_counts_csv(in, full, partial.design);
    DesignKind wanted = uses_partial_design(method) ? DesignKind::Partial : DesignKind::Full;
    if (counts.kind != wanted) {
        throw std::invalid_argument("method " + to_string(method) + " needs a " + to_string(wanted) +
                                    " count table, got a " + to_string(counts.kind) + " one");
    }
    const TomographyDesign &design = wanted == DesignKind::Full ? full : partial.design;

    nlohmann::json metrics;
    metrics["format_version"] = kFormatVersion;
    metrics["method"] = to_string(method);
    metrics["design"] = to_string(counts.kind);
    metrics["total_counts"] = counts.total();

    ComplexMatrix estimate;
    if (method == MethodId::DiDdMl) {
        HybridResult h = hybrid_estimate(counts, full, config.solver_config(), config.mle_config());
        estimate = h.mle.state.matrix();
        metrics["iterations"] = h.mle.iterations;
        metrics["final_kl"] = h.mle.final_kl;
        metrics["converged"] = h.mle.converged;
        metrics["di"] = {
            {"final_kl", h.di.final_kl},
            {"min_moment_eig", h.di.min_moment_eig},
            {"barrier_t_final", h.di.barrier_t_final},
            {"stages", h.di.stages},
            {"newton_steps", h.di.newton_steps},
            {"kl_weighting", "empirical input frequencies f(xy)"},
        };
    } else {
        FrequencyVector f = estimate_frequencies(counts, design, &partial.subset);
        metrics["clamp_events"] = f.clamp_events;
        metrics["total_estimate"] = f.total_estimate;
        if (is_ml_method(method)) {
            MleResult m = mle_estimate(f.values, design, config.mle_config());
            estimate = m.state.matrix();
            metrics["iterations"] = m.iterations;
            metrics["final_kl"] = m.final_kl;
            metrics["converged"] = m.converged;
        } else {
            RawStateEstimate lin = linear_inversion(f.values, design);
            estimate = lin.matrix;
            metrics["iterations"] = 0;
            metrics["raw_identity_component"] = lin.raw_identity_component;
        }
    }
    metrics["min_eigenvalue"] = min_eigenvalue(estimate);
    metrics["trace"] = estimate.trace().real();
    if (options.target) {
        StateKind kind = parse_state_kind(*options.target);
        metrics["target"] = to_string(kind);
        metrics["fidelity"] = fidelity_pure(estimate, target_vector(kind));
        metrics["trace_dist_to_target"] = trace_distance(estimate, make_test_state(kind).matrix());
    }

    std::filesystem::path dir(options.out_dir);
    std::filesystem::create_directories(dir);
    open_output(dir / "state.json") << state_to_json(estimate).dump(2) << "\n";
    open_output(dir / "metrics.json") << metrics.dump(2) << "\n";
    log << to_string(method) << ": min eigenvalue " << format_double(metrics["min_eigenvalue"].get<double>());
    if (metrics.contains("fidelity")) {
        log << ", fidelity " << format_double(metrics["fidelity"].get<double>());
    }
    log << "\n";
    return 0;
}

int cmd_benchmark(const Config &config, std::ostream &log) {
    BenchmarkConfig bc = config.benchmark_config();
    auto start = std::chrono::steady_clock::now();
    BenchmarkResult result = run_benchmark(bc);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::filesystem::path dir(config.output_dir());
    std::filesystem::create_directories(dir);
    {
        std::ofstream out = open_output(dir / "records.jsonl");
        write_records_jsonl(out, result.records);
    }
    open_output(dir / "summary.json") << summary_to_json(result.summary, bc).dump(2) << "\n";
    {
        std::ofstream out = open_output(dir / "histograms.csv");
        write_histograms_csv(out, result.summary);
    }
    print_summary(log, result.summary);
    log << "\n" << result.records.size() << " records in " << format_double(elapsed) << " s; clamp events "
        << result.summary.clamp_events << ", resampled runs " << result.summary.resamples << "\n";
    log << "wrote " << (dir / "records.jsonl").string() << ", " << (dir / "summary.json").string() << ", "
        << (dir / "histograms.csv").string() << "\n";
    return 0;
}

int cmd_report(const std::string &results_path, std::ostream &log) {
    std::ifstream in(results_path);
    if (!in) {
        throw std::runtime_error("cannot read '" + results_path + "'");
    }
    std::vector<RunRecord> records = read_records_jsonl(in);
    if (records.empty()) {
        throw std::runtime_error("'" + results_path + "' has no records");
    }
    print_summary(log, summarize(records));
    return 0;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum state tomography estimators with device-independent regularization"};
    app.require_subcommand(1);

    SimulateOptions sim;
    auto *simulate = app.add_subcommand("simulate", "Sample a count table from a test state");
    simulate->add_option("--state", sim.state, "tau1, tau2 or tau3")->required();
    simulate->add_option("--n", sim.n, "mean total number of events")->required();
    simulate->add_option("--seed", sim.seed, "PRNG seed");
    simulate->add_option("--design", sim.design, "full or partial")->check(CLI::IsMember({"full", "partial"}));
    simulate->add_option("--out", sim.out, "output CSV")->required();
    simulate->add_flag("--noiseless", sim.noiseless, "write rounded expected counts instead of sampling");

    ReconstructOptions rec;
    auto *reconstruct = app.add_subcommand("reconstruct", "Estimate a state from a count table");
    reconstruct->add_option("--counts", rec.counts, "count CSV")->required();
    reconstruct->add_option("--method", rec.method, "DD_ML_PARTIAL, DD_ML_FULL, DI_DD_ML, LIN_PARTIAL, LIN_FULL")
        ->required();
    reconstruct->add_option("--out", rec.out_dir, "output directory for state.json and metrics.json")->required();
    reconstruct->add_option("--target", rec.target, "test state to compute the fidelity against");

    auto *benchmark = app.add_subcommand("benchmark", "Run the five-method comparison");

    std::string results_path;
    auto *report = app.add_subcommand("report", "Summarize a results JSONL file");
    report->add_option("results", results_path, "records.jsonl")->required();

    // Every config key doubles as a flag on the commands that read the config.
    std::map<std::string, std::string> overrides;
    std::string config_path;
    for (CLI::App *cmd : {reconstruct, benchmark}) {
        cmd->add_option("--config", config_path, "key = value config file");
        for (const auto &key : config_keys()) {
            bool relevant = cmd == benchmark || key.name.rfind("mle.", 0) == 0 || key.name.rfind("di.", 0) == 0;
            if (relevant) {
                cmd->add_option("--" + key.name, overrides[key.name], key.help + " (default " + key.default_value +
                                                                          ")");
            }
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }

    try {
        if (simulate->parsed()) {
            return cmd_simulate(sim, out);
        }
        if (report->parsed()) {
            return cmd_report(results_path, out);
        }
        CLI::App *cmd = reconstruct->parsed() ? reconstruct : benchmark;
        Config config;
        if (!config_path.empty()) {
            config.load_file(config_path);
        }
        for (const auto &[key, value] : overrides) {
            const CLI::Option *opt = cmd->get_option_no_throw("--" + key);
            if (opt != nullptr && opt->count() > 0) {
                config.set(key, value);
            }
        }
        if (cmd == reconstruct) {
            return cmd_reconstruct(rec, config, out);
        }
        return cmd_benchmark(config, out);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ditomo
