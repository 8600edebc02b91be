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

#ifndef DITOMO_ESTIMATORS_HPP
#define DITOMO_ESTIMATORS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ditomo/numerics.hpp"
#include "ditomo/scenario.hpp"
#include "ditomo/simulation.hpp"

namespace ditomo {

/// Returned by kl_divergence when f puts mass where p vanishes.
inline constexpr double kInfiniteDivergence = std::numeric_limits<double>::infinity();

/// D(f || p) = sum f log(f / p), with 0 log(0 / p) = 0. Throws std::invalid_argument
/// on a length mismatch or a negative entry.
double kl_divergence(std::span<const double> f, std::span<const double> p);

/// Hermitian, unit trace, possibly with negative eigenvalues.
struct RawStateEstimate {
    ComplexMatrix matrix;
    /// T_i = tr(rho Gamma_i), Pauli order 4j + k.
    std::vector<double> pauli_coefficients;
    /// Identity component before it was normalized to 1.
    double raw_identity_component = 1;
};

/// T = B^+ f and rho = sum T_i Gamma_i / 4, rescaled so that T_1 = 1.
/// Throws std::invalid_argument if the design is not tomographically complete.
RawStateEstimate linear_inversion(std::span<const double> f, const TomographyDesign &design);

struct MleConfig {
    double epsilon0 = 1e6;
    double epsilon_min = 1e-10;
    double kl_tol = 1e-14;
    size_t max_iters = 100000;
    double prob_floor = 1e-15;
    /// Keep the KL value of every accepted iterate (index 0 is the start point).
    bool record_history = false;
};

struct MleResult {
    DensityMatrix state;
    double final_kl = 0;
    size_t iterations = 0;
    size_t accepted_steps = 0;
    double final_epsilon = 0;
    bool converged = false;
    std::vector<double> kl_history;
};

/// Diluted iterative maximum likelihood, started from the maximally mixed state.
///
/// Each trial maps rho to N[(1 + eps R) rho (1 + eps R)] with
/// R = sum_i f_i / max(P_i, floor) M_i. A trial is kept only if it strictly lowers
/// D(f || P); otherwise eps is divided by 10. Stops once eps drops below
/// epsilon_min, an accepted step at the smallest admissible eps gains less than
/// kl_tol, or max_iters trials ran.
MleResult mle_estimate(std::span<const double> f, const TomographyDesign &design, const MleConfig &config = {});

}  // namespace ditomo

#endif
