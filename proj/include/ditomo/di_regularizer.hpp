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

#ifndef DITOMO_DI_REGULARIZER_HPP
#define DITOMO_DI_REGULARIZER_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "ditomo/estimators.hpp"
#include "ditomo/moment_index.hpp"
#include "ditomo/simulation.hpp"

namespace ditomo {

/// Nonsignaling behavior parametrized by its 15 expectation values.
struct Behavior {
    /// <A_1..A_3>, <B_1..B_3>, <A_x B_y> (x-major), same order as the moment parameters.
    std::array<double, MomentIndex::kProbabilityParameters> expectations{};
    /// P(ab|xy) at [setting_pair_index][2a + b].
    std::array<std::array<double, 4>, kSettingPairs> conditional{};

    static Behavior from_expectations(std::span<const double> expectations);
};

struct SolverConfig {
    double gap_tol = 1e-7;
    /// Centering stops once the Newton decrement lambda^2 / 2 falls below this.
    double inner_tol = 1e-8;
    double t0 = 1.0;
    double t_factor = 10.0;
    int max_inner_iters = 5000;
    bool record_merit = false;
};

/// Line search could not make progress; carries where it happened.
struct SolverStallError : std::runtime_error {
    double barrier_t = 0;
    int inner_iteration = 0;
    double newton_decrement = 0;
    double merit = 0;

    SolverStallError(const std::string &what, double t, int iter, double decrement, double merit_value)
        : std::runtime_error(what), barrier_t(t), inner_iteration(iter), newton_decrement(decrement), merit(merit_value) {
    }
};

struct RegularizedBehavior {
    Behavior behavior;
    /// Values of the moments beyond the 15 probability ones, in variable order.
    std::vector<Complex> free_moments;
    /// Full parameter vector, see MomentIndex.
    std::vector<double> theta;
    double final_kl = 0;
    double min_moment_eig = 0;
    double barrier_t_final = 0;
    int stages = 0;
    int newton_steps = 0;
    /// Merit t g - log det M of every accepted point, one list per barrier stage.
    std::vector<std::vector<double>> merit_history;
};

/// sum_xy w(xy) sum_ab f(ab|xy) log(f(ab|xy) / P(ab|xy)); the weighted objective
/// minimized by regularize().
double weighted_conditional_kl(const ConditionalFrequencies &f, const Behavior &behavior);

/// KL projection of conditional frequencies onto the moment-matrix relaxation,
/// weighting settings by the empirical f(xy).
///
/// Log-det barrier path following: each stage minimizes t g(theta) - log det M(theta)
/// by damped Newton steps with Armijo backtracking (constant 1e-4, shrink 0.5),
/// then t grows by t_factor until 16 / t < gap_tol. Starts from the moments of
/// the maximally mixed state. Throws std::invalid_argument for unnormalized input
/// and SolverStallError after 200 halvings without progress.
RegularizedBehavior regularize(const ConditionalFrequencies &f, const SolverConfig &config = {},
                               const MomentIndex &index = MomentIndex::canonical());

/// g(theta) for a feasible parameter vector; +inf where a used probability is not positive.
double regularization_objective(const ConditionalFrequencies &f, std::span<const double> theta);

/// P(abxy) = P(ab|xy) f(xy) in full_event_index order.
std::vector<double> lift_to_joint(const Behavior &behavior, const std::array<double, kSettingPairs> &inputs);

struct HybridResult {
    MleResult mle;
    RegularizedBehavior di;
    std::vector<double> lifted;
};

/// Regularize, lift, then run the diluted MLE against the full design.
HybridResult hybrid_estimate(const ConditionalFrequencies &f, const TomographyDesign &full_design,
                             const SolverConfig &solver = {}, const MleConfig &mle = {});
HybridResult hybrid_estimate(const CountTable &counts, const TomographyDesign &full_design,
                             const SolverConfig &solver = {}, const MleConfig &mle = {});

}  // namespace ditomo

#endif
