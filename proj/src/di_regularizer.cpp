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

#include "ditomo/di_regularizer.hpp"

#include <cmath>
#include <limits>

namespace ditomo {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kShrink = 0.5;
constexpr int kMaxHalvings = 200;
constexpr double kNormalizationTolerance = 1e-9;
// Below this relative size a Newton decrement is lost in the merit's rounding.
constexpr double kMeritResolution = 1e-12;
// Tolerated relative decrement when the line search can no longer make progress.
constexpr double kMeritRoundingFloor = 1e-9;

constexpr double kInf = std::numeric_limits<double>::infinity();

// dP(ab|xy) / dtheta as (parameter, coefficient) triples.
struct ProbabilityGradient {
    std::array<std::pair<int, double>, 3> terms;
    int size;
};

ProbabilityGradient probability_gradient(int x, int y, int ab) {
    int a = MomentIndex::a_parameter(x);
    int b = MomentIndex::b_parameter(y);
    int j = MomentIndex::ab_parameter(x, y);
    switch (ab) {
        case 0:
            return {{{{j, 1.0}, {0, 0.0}, {0, 0.0}}}, 1};
        case 1:
            return {{{{a, 1.0}, {j, -1.0}, {0, 0.0}}}, 2};
        case 2:
            return {{{{b, 1.0}, {j, -1.0}, {0, 0.0}}}, 2};
        default:
            return {{{{a, -1.0}, {b, -1.0}, {j, 1.0}}}, 3};
    }
}

void validate(const ConditionalFrequencies &f) {
    double input_sum = 0;
    for (int xy = 0; xy < kSettingPairs; xy++) {
        double pair_sum = 0;
        for (double v : f.conditional[xy]) {
            if (!(v >= 0)) {
                throw std::invalid_argument("regularize: negative conditional frequency");
            }
            pair_sum += v;
        }
        if (std::abs(pair_sum - 1) > kNormalizationTolerance) {
            throw std::invalid_argument("regularize: conditional frequencies of a setting pair do not sum to 1");
        }
        if (!(f.inputs[xy] >= 0)) {
            throw std::invalid_argument("regularize: negative input frequency");
        }
        input_sum += f.inputs[xy];
    }
    if (std::abs(input_sum - 1) > kNormalizationTolerance) {
        throw std::invalid_argument("regularize: input frequencies do not sum to 1");
    }
}

// Cholesky-based evaluation of the barrier part at one point.
struct BarrierPoint {
    bool feasible = false;
    double log_det = 0;
    ComplexMatrix lower;
};

BarrierPoint barrier_point(const MomentIndex &index, std::span<const double> theta) {
    BarrierPoint out;
    out.lower = index.assemble(theta);
    if (!cholesky(out.lower)) {
        return out;
    }
    out.feasible = true;
    for (int k = 0; k < MomentIndex::kDimension; k++) {
        out.log_det += 2 * std::log(out.lower(k, k).real());
    }
    return out;
}

ComplexMatrix inverse_from_cholesky(const ComplexMatrix &lower) {
    size_t n = lower.rows();
    // L^{-1} by forward substitution, then M^{-1} = L^{-†} L^{-1}.
    ComplexMatrix linv(n, n);
    for (size_t col = 0; col < n; col++) {
        for (size_t i = col; i < n; i++) {
            Complex acc = i == col ? Complex(1) : Complex(0);
            for (size_t k = col; k < i; k++) {
                acc -= lower(i, k) * linv(k, col);
            }
            linv(i, col) = acc / lower(i, i);
        }
    }
    return linv.adjoint() * linv;
}

class CenteringProblem {
   public:
    CenteringProblem(const ConditionalFrequencies &f, const MomentIndex &index) : f_(f), index_(index) {
    }

    double merit(double t, std::span<const double> theta, bool *feasible) const {
        BarrierPoint bp = barrier_point(index_, theta);
        if (!bp.feasible) {
            *feasible = false;
            return kInf;
        }
        double g = regularization_objective(f_, theta);
        *feasible = std::isfinite(g);
        return t * g - bp.log_det;
    }

    // Gradient and Hessian of t g - log det M at a feasible point.
    void derivatives(double t, std::span<const double> theta, std::vector<double> &grad, RealMatrix &hess) const {
        int n = index_.parameter_count();
        grad.assign(n, 0.0);
        hess = RealMatrix(n, n);

        BarrierPoint bp = barrier_point(index_, theta);
        ComplexMatrix minv = inverse_from_cholesky(bp.lower);

        constexpr int dim = MomentIndex::kDimension;
        // y[k](c, r) = (M^-1 F_k M^-1)(c, r)
        std::vector<ComplexMatrix> y(n, ComplexMatrix(dim, dim));
        for (int k = 0; k < n; k++) {
            ComplexMatrix &yk = y[k];
            for (const SparseEntry &e : index_.derivative(k)) {
                grad[k] -= (e.coefficient * minv(e.col, e.row)).real();
                for (int c = 0; c < dim; c++) {
                    Complex left = e.coefficient * minv(c, e.row);
                    for (int r = 0; r < dim; r++) {
                        yk(c, r) += left * minv(e.col, r);
                    }
                }
            }
        }
        for (int j = 0; j < n; j++) {
            for (int k = j; k < n; k++) {
                double acc = 0;
                for (const SparseEntry &e : index_.derivative(j)) {
                    acc += (e.coefficient * y[k](e.col, e.row)).real();
                }
                hess(j, k) = acc;
                hess(k, j) = acc;
            }
        }

        Behavior behavior = Behavior::from_expectations(theta.first(MomentIndex::kProbabilityParameters));
        for (int x = 1; x <= kSettings; x++) {
            for (int yy = 1; yy <= kSettings; yy++) {
                int xy = setting_pair_index(x, yy);
                for (int ab = 0; ab < 4; ab++) {
                    double fv = f_.conditional[xy][ab];
                    if (fv <= 0) {
                        continue;
                    }
                    double p = behavior.conditional[xy][ab];
                    double w = f_.inputs[xy] * fv;
                    ProbabilityGradient pg = probability_gradient(x, yy, ab);
                    for (int u = 0; u < pg.size; u++) {
                        auto [pu, cu] = pg.terms[u];
                        grad[pu] -= t * w * cu / p;
                        for (int v = 0; v < pg.size; v++) {
                            auto [pv, cv] = pg.terms[v];
                            hess(pu, pv) += t * w * cu * cv / (p * p);
                        }
                    }
                }
            }
        }
    }

   private:
    const ConditionalFrequencies &f_;
    const MomentIndex &index_;
};

}  // namespace

Behavior Behavior::from_expectations(std::span<const double> e) {
    if (e.size() != MomentIndex::kProbabilityParameters) {
        throw std::invalid_argument("behavior needs 15 expectation values");
    }
    Behavior out;
    std::copy(e.begin(), e.end(), out.expectations.begin());
    for (int x = 1; x <= kSettings; x++) {
        for (int y = 1; y <= kSettings; y++) {
            double a = e[MomentIndex::a_parameter(x)];
            double b = e[MomentIndex::b_parameter(y)];
            double ab = e[MomentIndex::ab_parameter(x, y)];
            out.conditional[setting_pair_index(x, y)] = {ab, a - ab, b - ab, 1 - a - b + ab};
        }
    }
    return out;
}

double weighted_conditional_kl(const ConditionalFrequencies &f, const Behavior &behavior) {
    double acc = 0;
    for (int xy = 0; xy < kSettingPairs; xy++) {
        double pair = 0;
        for (int ab = 0; ab < 4; ab++) {
            double fv = f.conditional[xy][ab];
            if (fv <= 0) {
                continue;
            }
            double p = behavior.conditional[xy][ab];
            if (!(p > 0)) {
                return kInf;
            }
            pair += fv * std::log(fv / p);
        }
        acc += f.inputs[xy] * pair;
    }
    return acc;
}

double regularization_objective(const ConditionalFrequencies &f, std::span<const double> theta) {
    return weighted_conditional_kl(f, Behavior::from_expectations(theta.first(MomentIndex::kProbabilityParameters)));
}

RegularizedBehavior regularize(const ConditionalFrequencies &f, const SolverConfig &config, const MomentIndex &index) {
    validate(f);
    if (!(config.t0 > 0) || !(config.t_factor > 1) || !(config.gap_tol > 0)) {
        throw std::invalid_argument("regularize: invalid barrier schedule");
    }

    CenteringProblem problem(f, index);
    std::vector<double> theta = quantum_moments(DensityMatrix::maximally_mixed(), index);
    int n = index.parameter_count();

    RegularizedBehavior out;
    std::vector<double> grad;
    RealMatrix hess;
    std::vector<double> trial(n);

    double t = config.t0;
    while (true) {
        bool feasible = false;
        double merit = problem.merit(t, theta, &feasible);
        if (!feasible) {
            throw SolverStallError("regularize: lost feasibility between stages", t, 0, 0, merit);
        }
        if (config.record_merit) {
            out.merit_history.push_back({merit});
        }

        for (int iter = 0;; iter++) {
            if (iter >= config.max_inner_iters) {
                throw SolverStallError("regularize: inner iteration limit reached", t, iter, 0, merit);
            }
            problem.derivatives(t, theta, grad, hess);
            RealMatrix lower = hess;
            if (!cholesky(lower)) {
                throw SolverStallError("regularize: barrier Hessian is not positive definite", t, iter, 0, merit);
            }
            std::vector<double> step(n);
            for (int k = 0; k < n; k++) {
                step[k] = -grad[k];
            }
            step = cholesky_solve(lower, step);
            double slope = 0;
            for (int k = 0; k < n; k++) {
                slope += grad[k] * step[k];
            }
            double decrement = -slope;
            double merit_scale = std::max(1.0, std::abs(merit));
            if (decrement / 2 <= config.inner_tol || decrement / 2 <= kMeritResolution * merit_scale) {
                break;
            }

            double s = 1;
            bool accepted = false;
            double trial_merit = kInf;
            for (int halving = 0; halving <= kMaxHalvings; halving++) {
                for (int k = 0; k < n; k++) {
                    trial[k] = theta[k] + s * step[k];
                }
                bool trial_feasible = false;
                trial_merit = problem.merit(t, trial, &trial_feasible);
                if (trial_feasible && trial_merit <= merit + kArmijo * s * slope) {
                    accepted = true;
                    break;
                }
                s *= kShrink;
            }
            if (!accepted || !(trial_merit < merit)) {
                if (decrement / 2 <= kMeritRoundingFloor * merit_scale) {
                    break;
                }
                throw SolverStallError("regularize: line search made no progress", t, iter, decrement,
                                       merit);
            }
            theta.swap(trial);
            merit = trial_merit;
            out.newton_steps++;
            if (config.record_merit) {
                out.merit_history.back().push_back(merit);
            }
        }
        out.stages++;
        if (MomentIndex::kDimension / t < config.gap_tol) {
            break;
        }
        t *= config.t_factor;
    }

    out.barrier_t_final = t;
    out.behavior = Behavior::from_expectations(std::span<const double>(theta).first(MomentIndex::kProbabilityParameters));
    out.final_kl = std::max(weighted_conditional_kl(f, out.behavior), 0.0);
    out.min_moment_eig = min_eigenvalue(index.assemble(theta));
    for (size_t v = MomentIndex::kProbabilityParameters; v < index.variables().size(); v++) {
        out.free_moments.push_back(index.value(theta, static_cast<int>(v)));
    }
    out.theta = std::move(theta);
    return out;
}

std::vector<double> lift_to_joint(const Behavior &behavior, const std::array<double, kSettingPairs> &inputs) {
    std::vector<double> p(kFullEvents);
    for (int xy = 0; xy < kSettingPairs; xy++) {
        for (int ab = 0; ab < 4; ab++) {
            p[xy * 4 + ab] = behavior.conditional[xy][ab] * inputs[xy];
        }
    }
    return p;
}

HybridResult hybrid_estimate(const ConditionalFrequencies &f, const TomographyDesign &full_design,
                             const SolverConfig &solver, const MleConfig &mle) {
    if (full_design.kind != DesignKind::Full) {
        throw std::invalid_argument("hybrid estimation needs the full design");
    }
    RegularizedBehavior di = regularize(f, solver);
    std::vector<double> lifted = lift_to_joint(di.behavior, f.inputs);
    MleResult stage2 = mle_estimate(lifted, full_design, mle);
    return HybridResult{std::move(stage2), std::move(di), std::move(lifted)};
}

HybridResult hybrid_estimate(const CountTable &counts, const TomographyDesign &full_design,
                             const SolverConfig &solver, const MleConfig &mle) {
    return hybrid_estimate(conditional_frequencies(counts), full_design, solver, mle);
}

}  // namespace ditomo
