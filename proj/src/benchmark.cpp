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

#include "ditomo/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace ditomo {

namespace {

constexpr int kMaxResamples = 100;
constexpr double kFidelityImagTolerance = 1e-10;

int state_slot(StateKind kind) {
    return static_cast<int>(kind);
}

bool selected(const BenchmarkConfig &config, MethodId method) {
    return std::find(config.methods.begin(), config.methods.end(), method) != config.methods.end();
}

struct SampledRun {
    uint64_t seed = 0;
    int resamples = 0;
    CountTable full_counts;
    std::optional<FrequencyVector> full_f;
    std::optional<FrequencyVector> partial_f;
    std::optional<ConditionalFrequencies> conditional;
};

SampledRun sample_run(const RunContext &ctx, const DensityMatrix &rho, uint64_t base_seed) {
    const BenchmarkConfig &cfg = ctx.config;
    bool need_full = selected(cfg, MethodId::DdMlFull) || selected(cfg, MethodId::LinFull);
    bool need_partial = selected(cfg, MethodId::DdMlPartial) || selected(cfg, MethodId::LinPartial);
    bool need_conditional = selected(cfg, MethodId::DiDdMl);

    for (int attempt = 0; attempt <= kMaxResamples; attempt++) {
        SampledRun run;
        run.seed = attempt == 0 ? base_seed : derive_seed(base_seed, static_cast<uint64_t>(attempt));
        run.resamples = attempt;
        Prng rng(run.seed);
        run.full_counts = sample_counts(rng, rho, ctx.full_design, cfg.mean_total);
        CountTable partial_counts = sample_counts(rng, rho, ctx.partial.design, cfg.mean_total);
        try {
            if (need_full) {
                run.full_f = estimate_frequencies(run.full_counts, ctx.full_design);
            }
            if (need_partial) {
                run.partial_f = estimate_frequencies(partial_counts, ctx.partial.design, &ctx.partial.subset);
            }
            if (need_conditional) {
                run.conditional = conditional_frequencies(run.full_counts);
            }
        } catch (const DegenerateDataError &) {
            continue;
        }
        return run;
    }
    throw DegenerateDataError("no usable sample after " + std::to_string(kMaxResamples) + " resamples");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string to_string(MethodId method) {
    switch (method) {
        case MethodId::DdMlPartial:
            return "DD_ML_PARTIAL";
        case MethodId::DdMlFull:
            return "DD_ML_FULL";
        case MethodId::DiDdMl:
            return "DI_DD_ML";
        case MethodId::LinPartial:
            return "LIN_PARTIAL";
        case MethodId::LinFull:
            return "LIN_FULL";
    }
    return "?";
}

MethodId parse_method(const std::string &name) {
    for (MethodId m : kAllMethods) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw std::invalid_argument("unknown method '" + name +
                                "' (expected DD_ML_PARTIAL, DD_ML_FULL, DI_DD_ML, LIN_PARTIAL or LIN_FULL)");
}

bool is_ml_method(MethodId method) {
    return method == MethodId::DdMlPartial || method == MethodId::DdMlFull || method == MethodId::DiDdMl;
}

bool uses_partial_design(MethodId method) {
    return method == MethodId::DdMlPartial || method == MethodId::LinPartial;
}

double fidelity_pure(const ComplexMatrix &rho, const std::vector<Complex> &target) {
    if (rho.rows() != target.size() || rho.cols() != target.size()) {
        throw StructuralError("fidelity_pure: dimension mismatch");
    }
    double norm = 0;
    for (Complex c : target) {
        norm += std::norm(c);
    }
    if (std::abs(norm - 1) > 1e-10) {
        throw std::invalid_argument("fidelity_pure: target state is not normalized");
    }
    Complex acc = 0;
    for (size_t r = 0; r < target.size(); r++) {
        for (size_t c = 0; c < target.size(); c++) {
            acc += std::conj(target[r]) * rho(r, c) * target[c];
        }
    }
    if (std::abs(acc.imag()) > kFidelityImagTolerance) {
        throw StructuralError("fidelity_pure: estimate is not Hermitian");
    }
    return acc.real();
}

double trace_distance(const ComplexMatrix &rho1, const ComplexMatrix &rho2) {
    return trace_norm(rho1 - rho2);
}

void BenchmarkConfig::validate() const {
    if (states.empty()) {
        throw std::invalid_argument("benchmark: no states selected");
    }
    if (methods.empty()) {
        throw std::invalid_argument("benchmark: no methods selected");
    }
    if (runs < 1) {
        throw std::invalid_argument("benchmark: runs must be >= 1");
    }
    if (!(mean_total > 0) || !std::isfinite(mean_total)) {
        throw std::invalid_argument("benchmark: n must be positive");
    }
    if (jobs < 0) {
        throw std::invalid_argument("benchmark: jobs must be >= 0");
    }
    for (size_t i = 0; i < states.size(); i++) {
        for (size_t j = i + 1; j < states.size(); j++) {
            if (states[i] == states[j]) {
                throw std::invalid_argument("benchmark: state " + to_string(states[i]) + " listed twice");
            }
        }
    }
    for (size_t i = 0; i < methods.size(); i++) {
        for (size_t j = i + 1; j < methods.size(); j++) {
            if (methods[i] == methods[j]) {
                throw std::invalid_argument("benchmark: method " + to_string(methods[i]) + " listed twice");
            }
        }
    }
}

RunContext::RunContext(BenchmarkConfig cfg)
    : config(std::move(cfg)), full_design(build_joint_povm(scenario)), partial(build_partial_design(scenario)) {
}

uint64_t run_seed(uint64_t master_seed, StateKind state, size_t run_index) {
    return derive_seed(derive_seed(master_seed, static_cast<uint64_t>(state_slot(state))), run_index);
}

std::vector<RunRecord> execute_run(const RunContext &ctx, const WorkItem &item) {
    const BenchmarkConfig &cfg = ctx.config;
    DensityMatrix truth = make_test_state(item.state);
    std::vector<Complex> target = target_vector(item.state);
    SampledRun run = sample_run(ctx, truth, run_seed(cfg.master_seed, item.state, item.run_index));

    auto base_record = [&](MethodId method) {
        RunRecord r;
        r.state = item.state;
        r.method = method;
        r.run_index = item.run_index;
        r.seed = run.seed;
        r.resamples = run.resamples;
        return r;
    };
    auto fill_state = [&](RunRecord &r, const ComplexMatrix &estimate) {
        r.fidelity = fidelity_pure(estimate, target);
        r.trace_dist_to_true = trace_distance(estimate, truth.matrix());
        r.min_eigenvalue = min_eigenvalue(estimate);
    };

    std::vector<RunRecord> out;
    std::optional<ComplexMatrix> dd_full_state;
    for (MethodId method : kAllMethods) {
        if (!selected(cfg, method)) {
            continue;
        }
        auto start = std::chrono::steady_clock::now();
        RunRecord r = base_record(method);
        switch (method) {
            case MethodId::DdMlPartial:
            case MethodId::DdMlFull: {
                bool partial = method == MethodId::DdMlPartial;
                const FrequencyVector &f = partial ? *run.partial_f : *run.full_f;
                MleResult m = mle_estimate(f.values, partial ? ctx.partial.design : ctx.full_design, cfg.mle);
                fill_state(r, m.state.matrix());
                r.iterations = m.iterations;
                r.final_kl = m.final_kl;
                r.clamp_events = f.clamp_events;
                if (!partial) {
                    dd_full_state = m.state.matrix();
                }
                break;
            }
            case MethodId::DiDdMl: {
                HybridResult h = hybrid_estimate(*run.conditional, ctx.full_design, cfg.di, cfg.mle);
                fill_state(r, h.mle.state.matrix());
                r.iterations = h.mle.iterations;
                r.final_kl = h.mle.final_kl;
                r.di_final_kl = h.di.final_kl;
                if (dd_full_state) {
                    r.trace_dist_hybrid_vs_dd = trace_distance(h.mle.state.matrix(), *dd_full_state);
                }
                break;
            }
            case MethodId::LinPartial:
            case MethodId::LinFull: {
                bool partial = method == MethodId::LinPartial;
                const FrequencyVector &f = partial ? *run.partial_f : *run.full_f;
                RawStateEstimate lin = linear_inversion(f.values, partial ? ctx.partial.design : ctx.full_design);
                fill_state(r, lin.matrix);
                r.clamp_events = f.clamp_events;
                break;
            }
        }
        r.wall_time = seconds_since(start);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<WorkItem> work_items(const BenchmarkConfig &config) {
    std::vector<WorkItem> items;
    items.reserve(config.states.size() * config.runs);
    for (StateKind s : config.states) {
        for (size_t r = 0; r < config.runs; r++) {
            items.push_back({s, r});
        }
    }
    return items;
}

std::vector<RunRecord> execute_runs_serial(const RunContext &ctx, const std::vector<WorkItem> &items) {
    std::vector<RunRecord> out;
    for (const WorkItem &item : items) {
        std::vector<RunRecord> recs = execute_run(ctx, item);
        out.insert(out.end(), recs.begin(), recs.end());
    }
    return out;
}

std::vector<RunRecord> execute_runs_parallel(const RunContext &ctx, const std::vector<WorkItem> &items, int jobs) {
    std::vector<std::vector<RunRecord>> per_item(items.size());
    std::vector<std::exception_ptr> errors(items.size());
    auto n = static_cast<long>(items.size());
#if defined(_OPENMP)
    int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#else
    (void)jobs;
#endif
    for (long k = 0; k < n; k++) {
        try {
            per_item[k] = execute_run(ctx, items[k]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    std::vector<RunRecord> out;
    for (auto &recs : per_item) {
        out.insert(out.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
    }
    return out;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw std::invalid_argument("quantile of an empty sample");
    }
    std::sort(values.begin(), values.end());
    double pos = q * static_cast<double>(values.size() - 1);
    auto lo = static_cast<size_t>(std::floor(pos));
    size_t hi = std::min(lo + 1, values.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

Histogram histogram(const std::vector<double> &values, size_t bins) {
    Histogram h;
    h.counts.assign(bins, 0);
    if (values.empty()) {
        return h;
    }
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    h.lo = *mn;
    h.hi = *mx;
    double width = (h.hi - h.lo) / static_cast<double>(bins);
    for (double v : values) {
        size_t bin = width > 0 ? static_cast<size_t>((v - h.lo) / width) : 0;
        h.counts[std::min(bin, bins - 1)]++;
    }
    return h;
}

BenchmarkSummary summarize(const std::vector<RunRecord> &records) {
    BenchmarkSummary summary;
    std::map<std::pair<StateKind, MethodId>, std::vector<double>> fidelities;
    std::map<std::pair<StateKind, MethodId>, size_t> negative;
    std::map<StateKind, std::vector<double>> hybrid_vs_dd, hybrid_vs_true, ratios;
    for (const RunRecord &r : records) {
        fidelities[{r.state, r.method}].push_back(r.fidelity);
        if (r.min_eigenvalue < 0) {
            negative[{r.state, r.method}]++;
        }
        summary.clamp_events += static_cast<size_t>(r.clamp_events);
        if (r.trace_dist_hybrid_vs_dd) {
            hybrid_vs_dd[r.state].push_back(*r.trace_dist_hybrid_vs_dd);
            hybrid_vs_true[r.state].push_back(r.trace_dist_to_true);
            if (r.trace_dist_to_true > 0) {
                ratios[r.state].push_back(*r.trace_dist_hybrid_vs_dd / r.trace_dist_to_true);
            }
        }
    }
    // One resample count per (state, run); every record of a run carries the same value.
    std::map<std::pair<StateKind, size_t>, int> resamples;
    for (const RunRecord &r : records) {
        resamples[{r.state, r.run_index}] = r.resamples;
    }
    for (const auto &[key, n] : resamples) {
        summary.resamples += static_cast<size_t>(n);
    }

    for (const auto &[key, values] : fidelities) {
        FidelityStats s;
        s.count = values.size();
        double sum = 0;
        for (double v : values) {
            sum += v;
        }
        s.mean = sum / static_cast<double>(s.count);
        double sq = 0;
        for (double v : values) {
            sq += (v - s.mean) * (v - s.mean);
        }
        s.stddev = s.count > 1 ? std::sqrt(sq / static_cast<double>(s.count - 1)) : 0.0;
        s.min = quantile(values, 0);
        s.q1 = quantile(values, 0.25);
        s.median = quantile(values, 0.5);
        s.q3 = quantile(values, 0.75);
        s.max = quantile(values, 1);
        s.above_one = static_cast<size_t>(std::count_if(values.begin(), values.end(), [](double v) { return v > 1; }));
        s.negative_eigenvalue = negative[key];
        s.histogram = histogram(values);
        summary.fidelity[key] = std::move(s);
    }
    for (const auto &[state, values] : hybrid_vs_dd) {
        PairingStats p;
        p.count = values.size();
        p.median_hybrid_vs_dd = quantile(values, 0.5);
        p.median_hybrid_vs_true = quantile(hybrid_vs_true[state], 0.5);
        p.ratio_of_medians = p.median_hybrid_vs_true > 0 ? p.median_hybrid_vs_dd / p.median_hybrid_vs_true : 0.0;
        p.median_of_ratios = ratios[state].empty() ? 0.0 : quantile(ratios[state], 0.5);
        summary.pairing[state] = p;
    }
    return summary;
}

BenchmarkResult run_benchmark(const BenchmarkConfig &config) {
    config.validate();
    RunContext ctx(config);
    BenchmarkResult result;
    result.records = execute_runs_parallel(ctx, work_items(config), config.jobs);
    result.summary = summarize(result.records);
    return result;
}

}  // namespace ditomo
