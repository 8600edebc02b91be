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

#include "ditomo/estimators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ditomo {

namespace {

constexpr double kDivergenceFloor = 1e-300;
constexpr double kNegativeSlack = 1e-12;

void validate_frequencies(std::span<const double> f, const TomographyDesign &design) {
    if (f.size() != design.size()) {
        throw std::invalid_argument("frequency vector has " + std::to_string(f.size()) + " entries, design has " +
                                    std::to_string(design.size()));
    }
    double sum = 0;
    for (double v : f) {
        if (!(v >= 0) || !std::isfinite(v)) {
            throw std::invalid_argument("frequency vector has a negative or non-finite entry");
        }
        sum += v;
    }
    if (std::abs(sum - 1) > 1e-9) {
        throw std::invalid_argument("frequency vector does not sum to 1");
    }
}

}  // namespace

double kl_divergence(std::span<const double> f, std::span<const double> p) {
    if (f.size() != p.size()) {
        throw std::invalid_argument("kl_divergence: length mismatch");
    }
    double acc = 0;
    for (size_t i = 0; i < f.size(); i++) {
        if (f[i] < -kNegativeSlack || p[i] < -kNegativeSlack) {
            throw std::invalid_argument("kl_divergence: negative entry");
        }
        if (f[i] <= 0) {
            continue;
        }
        if (p[i] <= kDivergenceFloor) {
            return kInfiniteDivergence;
        }
        acc += f[i] * std::log(f[i] / p[i]);
    }
    return acc;
}

RawStateEstimate linear_inversion(std::span<const double> f, const TomographyDesign &design) {
    if (f.size() != design.size()) {
        throw std::invalid_argument("linear_inversion: frequency vector does not match the design");
    }
    if (numerical_rank(design.b_matrix) != kPauliCount) {
        throw std::invalid_argument("linear_inversion: design is not tomographically complete");
    }
    RealMatrix b_pinv = pseudoinverse(design.b_matrix);
    RawStateEstimate out;
    out.pauli_coefficients = b_pinv * std::vector<double>(f.begin(), f.end());
    out.raw_identity_component = out.pauli_coefficients[0];
    double scale = out.raw_identity_component > kNegativeSlack ? 1 / out.raw_identity_component : 1.0;
    for (double &t : out.pauli_coefficients) {
        t *= scale;
    }
    out.pauli_coefficients[0] = 1;

    out.matrix = ComplexMatrix(4, 4);
    for (size_t i = 0; i < kPauliCount; i++) {
        out.matrix += design.pauli_basis[i] * Complex(out.pauli_coefficients[i] / 4);
    }
    out.matrix = hermitize(out.matrix);
    return out;
}

MleResult mle_estimate(std::span<const double> f, const TomographyDesign &design, const MleConfig &config) {
    validate_frequencies(f, design);
    double weight = 0;
    for (double v : f) {
        weight += v;
    }

    ComplexMatrix rho = DensityMatrix::maximally_mixed().matrix();
    ComplexMatrix identity = ComplexMatrix::identity(4);
    std::vector<double> p = born_probabilities(rho, design);
    double kl = kl_divergence(f, p);

    MleResult result{DensityMatrix::maximally_mixed(), 0, 0, 0, 0, false, {}};
    if (config.record_history) {
        result.kl_history.push_back(kl);
    }
    double epsilon = config.epsilon0;
    bool converged = kl == 0;

    while (!converged && result.iterations < config.max_iters) {
        result.iterations++;
        ComplexMatrix r(4, 4);
        for (size_t i = 0; i < design.size(); i++) {
            if (f[i] > 0) {
                r += design.elements[i].op * Complex(f[i] / (std::max(p[i], config.prob_floor) * weight));
            }
        }
        ComplexMatrix step = identity + r * Complex(epsilon);
        ComplexMatrix candidate = hermitize(step * rho * step);
        candidate *= Complex(1 / candidate.trace().real());

        std::vector<double> candidate_p = born_probabilities(candidate, design);
        double candidate_kl = kl_divergence(f, candidate_p);
        if (candidate_kl < kl) {
            double gain = kl - candidate_kl;
            rho = std::move(candidate);
            p = std::move(candidate_p);
            kl = candidate_kl;
            result.accepted_steps++;
            if (config.record_history) {
                result.kl_history.push_back(kl);
            }
            if (gain < config.kl_tol && epsilon / 10 < config.epsilon_min) {
                converged = true;
            }
        } else {
            epsilon /= 10;
            if (epsilon < config.epsilon_min) {
                converged = true;
            }
        }
    }

    result.state = DensityMatrix::from_matrix(rho);
    result.final_kl = std::max(kl, 0.0);
    result.final_epsilon = epsilon;
    result.converged = converged;
    return result;
}

}  // namespace ditomo
