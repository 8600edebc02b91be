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

#ifndef DITOMO_BENCHMARK_HPP
#define DITOMO_BENCHMARK_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ditomo/di_regularizer.hpp"
#include "ditomo/estimators.hpp"
#include "ditomo/simulation.hpp"

namespace ditomo {

enum class MethodId { DdMlPartial, DdMlFull, DiDdMl, LinPartial, LinFull };

inline constexpr std::array<MethodId, 5> kAllMethods{MethodId::DdMlPartial, MethodId::DdMlFull, MethodId::DiDdMl,
                                                      MethodId::LinPartial, MethodId::LinFull};
inline constexpr std::array<StateKind, 3> kAllStates{StateKind::Tau1, StateKind::Tau2, StateKind::Tau3};

std::string to_string(MethodId method);
/// Accepts the upper-case names (DD_ML_FULL, ...). Throws std::invalid_argument.
MethodId parse_method(const std::string &name);
bool is_ml_method(MethodId method);
bool uses_partial_design(MethodId method);

/// <psi|rho|psi>. Throws std::invalid_argument for an unnormalized target.
double fidelity_pure(const ComplexMatrix &rho, const std::vector<Complex> &target);

/// ||rho1 - rho2||_1, the sum of absolute eigenvalues (no factor 1/2).
double trace_distance(const ComplexMatrix &rho1, const ComplexMatrix &rho2);

struct BenchmarkConfig {
    std::vector<StateKind> states{kAllStates.begin(), kAllStates.end()};
    std::vector<MethodId> methods{kAllMethods.begin(), kAllMethods.end()};
    size_t runs = 1000;
    double mean_total = 1000;
    uint64_t master_seed = 1;
    /// 0: one worker per available core.
    int jobs = 0;
    MleConfig mle;
    SolverConfig di;

    /// Throws std::invalid_argument when the configuration cannot be run.
    void validate() const;
};

struct RunRecord {
    StateKind state = StateKind::Tau1;
    MethodId method = MethodId::LinFull;
    size_t run_index = 0;
    /// Seed of the attempt whose data was used.
    uint64_t seed = 0;
    double fidelity = 0;
    double trace_dist_to_true = 0;
    /// On DI_DD_ML records when DD_ML_FULL ran on the same counts.
    std::optional<double> trace_dist_hybrid_vs_dd;
    size_t iterations = 0;
    /// KL of the maximum-likelihood stage; absent for linear inversion.
    std::optional<double> final_kl;
    double min_eigenvalue = 0;
    int clamp_events = 0;
    /// Degenerate samples discarded before this run's data.
    int resamples = 0;
    std::optional<double> di_final_kl;
    double wall_time = 0;
};

/// Shared read-only inputs of every run.
struct RunContext {
    BenchmarkConfig config;
    BellScenario scenario = BellScenario::uniform();
    TomographyDesign full_design;
    PartialDesign partial;

    explicit RunContext(BenchmarkConfig cfg);
};

struct WorkItem {
    StateKind state;
    size_t run_index;
};

/// Seed of run `run_index` for `state`, independent of which other states or how many runs are configured.
uint64_t run_seed(uint64_t master_seed, StateKind state, size_t run_index);

/// Samples one run's full and partial count tables and applies every configured
/// method. Degenerate samples are redrawn from child seeds. Records follow the
/// order of kAllMethods.
std::vector<RunRecord> execute_run(const RunContext &ctx, const WorkItem &item);

/// Serial reference: runs the items in order.
std::vector<RunRecord> execute_runs_serial(const RunContext &ctx, const std::vector<WorkItem> &items);

/// OpenMP worker pool over the items. Output order equals the serial reference
/// regardless of completion order.
std::vector<RunRecord> execute_runs_parallel(const RunContext &ctx, const std::vector<WorkItem> &items, int jobs);

/// Every (state, run) pair of the config, state-major.
std::vector<WorkItem> work_items(const BenchmarkConfig &config);

struct Histogram {
    double lo = 0;
    double hi = 0;
    std::vector<uint64_t> counts;
};

struct FidelityStats {
    size_t count = 0;
    double mean = 0;
    double stddev = 0;
    double min = 0;
    double q1 = 0;
    double median = 0;
    double q3 = 0;
    double max = 0;
    size_t above_one = 0;
    size_t negative_eigenvalue = 0;
    Histogram histogram;
};

struct PairingStats {
    size_t count = 0;
    double median_hybrid_vs_dd = 0;
    double median_hybrid_vs_true = 0;
    /// median D(hybrid, DD) / median D(hybrid, true)
    double ratio_of_medians = 0;
    /// median over runs of D(hybrid, DD) / D(hybrid, true)
    double median_of_ratios = 0;
};

struct BenchmarkSummary {
    std::map<std::pair<StateKind, MethodId>, FidelityStats> fidelity;
    std::map<StateKind, PairingStats> pairing;
    size_t clamp_events = 0;
    size_t resamples = 0;
};

inline constexpr size_t kHistogramBins = 50;

/// Linear-interpolation quantile of an unsorted sample (q in [0, 1]).
double quantile(std::vector<double> values, double q);

Histogram histogram(const std::vector<double> &values, size_t bins = kHistogramBins);

/// Deterministic fold over records in the order given.
BenchmarkSummary summarize(const std::vector<RunRecord> &records);

struct BenchmarkResult {
    std::vector<RunRecord> records;
    BenchmarkSummary summary;
};

/// Validates the config, runs every work item on the worker pool, and summarizes.
BenchmarkResult run_benchmark(const BenchmarkConfig &config);

}  // namespace ditomo

#endif
