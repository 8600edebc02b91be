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

#include "ditomo/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ditomo {

namespace {

constexpr double kStateTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-10;

}  // namespace

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix &m) {
    if (m.rows() != 4 || m.cols() != 4) {
        throw StructuralError("density matrix must be 4x4");
    }
    if (!is_hermitian(m, kStateTolerance)) {
        throw StructuralError("density matrix is not Hermitian");
    }
    if (std::abs(m.trace() - Complex(1)) > kStateTolerance) {
        throw StructuralError("density matrix trace is not 1");
    }
    if (min_eigenvalue(m) < -kPsdTolerance) {
        throw StructuralError("density matrix is not positive semidefinite");
    }
    return DensityMatrix(hermitize(m));
}

DensityMatrix DensityMatrix::maximally_mixed() {
    return DensityMatrix(ComplexMatrix::identity(4) * Complex(0.25));
}

DensityMatrix DensityMatrix::pure(const std::vector<Complex> &psi) {
    if (psi.size() != 4) {
        throw StructuralError("pure state must have 4 amplitudes");
    }
    double norm = 0;
    for (Complex c : psi) {
        norm += std::norm(c);
    }
    if (std::abs(norm - 1) > kStateTolerance) {
        throw StructuralError("pure state is not normalized");
    }
    ComplexMatrix m(4, 4);
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            m(r, c) = psi[r] * std::conj(psi[c]);
        }
    }
    return DensityMatrix(std::move(m));
}

std::string to_string(StateKind kind) {
    switch (kind) {
        case StateKind::Tau1:
            return "tau1";
        case StateKind::Tau2:
            return "tau2";
        case StateKind::Tau3:
            return "tau3";
    }
    return "?";
}

StateKind parse_state_kind(const std::string &name) {
    if (name == "tau1") {
        return StateKind::Tau1;
    }
    if (name == "tau2") {
        return StateKind::Tau2;
    }
    if (name == "tau3") {
        return StateKind::Tau3;
    }
    throw std::invalid_argument("unknown state '" + name + "' (expected tau1, tau2 or tau3)");
}

double noise_weight(StateKind kind) {
    return kind == StateKind::Tau1 ? 0.52 : 0.995;
}

std::vector<Complex> target_vector(StateKind kind) {
    double c00 = 1 / std::sqrt(2.0);
    double c11 = 1 / std::sqrt(2.0);
    if (kind == StateKind::Tau3) {
        double norm = std::hypot(0.961, 0.276);
        c00 = 0.961 / norm;
        c11 = 0.276 / norm;
    }
    return {c00, 0, 0, c11};
}

DensityMatrix make_test_state(StateKind kind) {
    double lambda = noise_weight(kind);
    ComplexMatrix pure = DensityMatrix::pure(target_vector(kind)).matrix();
    return DensityMatrix::from_matrix(pure * Complex(lambda) +
                                      ComplexMatrix::identity(4) * Complex((1 - lambda) / 4));
}

std::vector<double> born_probabilities(const ComplexMatrix &rho, const TomographyDesign &design) {
    std::vector<double> p;
    p.reserve(design.size());
    for (const auto &e : design.elements) {
        p.push_back(trace_of_product(e.op, rho).real());
    }
    return p;
}

uint64_t CountTable::total() const {
    uint64_t acc = 0;
    for (const auto &e : entries) {
        acc += e.count;
    }
    return acc;
}

uint64_t CountTable::count(const EventLabel &label) const {
    for (const auto &e : entries) {
        if (e.label == label) {
            return e.count;
        }
    }
    throw std::out_of_range("count table has no event " + label.str());
}

CountTable sample_counts(Prng &rng, const DensityMatrix &rho, const TomographyDesign &design, double mean_total) {
    if (!(mean_total > 0)) {
        throw std::invalid_argument("sample_counts: mean total must be positive");
    }
    std::vector<double> p = born_probabilities(rho, design);
    CountTable table;
    table.kind = design.kind;
    for (size_t mu = 0; mu < design.size(); mu++) {
        if (!design.elements[mu].label) {
            continue;
        }
        table.entries.push_back({*design.elements[mu].label, poisson_sample(rng, mean_total * std::max(p[mu], 0.0))});
    }
    return table;
}

CountTable expected_counts(const DensityMatrix &rho, const TomographyDesign &design, double mean_total) {
    std::vector<double> p = born_probabilities(rho, design);
    CountTable table;
    table.kind = design.kind;
    for (size_t mu = 0; mu < design.size(); mu++) {
        if (design.elements[mu].label) {
            table.entries.push_back(
                {*design.elements[mu].label, static_cast<uint64_t>(std::llround(mean_total * std::max(p[mu], 0.0)))});
        }
    }
    return table;
}

FrequencyVector estimate_frequencies(const CountTable &counts, const TomographyDesign &design,
                                     const EventSubset *subset) {
    if (counts.kind != design.kind) {
        throw std::invalid_argument("count table is " + to_string(counts.kind) + " but design is " +
                                    to_string(design.kind));
    }
    if (counts.entries.size() != design.observed_count()) {
        throw std::invalid_argument("count table size does not match the design");
    }
    FrequencyVector out;
    out.values.assign(design.size(), 0.0);

    if (design.kind == DesignKind::Full) {
        uint64_t total = counts.total();
        if (total == 0) {
            throw DegenerateDataError("count table is empty");
        }
        out.total_estimate = static_cast<double>(total);
        for (size_t mu = 0; mu < design.size(); mu++) {
            out.values[mu] = static_cast<double>(counts.count(*design.elements[mu].label)) / out.total_estimate;
        }
        return out;
    }

    if (subset == nullptr) {
        throw std::invalid_argument("partial design needs its event subset");
    }
    uint64_t normalizer_counts = 0;
    for (const auto &label : subset->normalization) {
        normalizer_counts += counts.count(label);
    }
    if (normalizer_counts == 0) {
        throw DegenerateDataError("normalization events have zero counts");
    }
    out.total_estimate = static_cast<double>(normalizer_counts) / subset->alpha;
    double observed = 0;
    size_t complement = design.size();
    for (size_t mu = 0; mu < design.size(); mu++) {
        if (!design.elements[mu].label) {
            complement = mu;
            continue;
        }
        out.values[mu] = static_cast<double>(counts.count(*design.elements[mu].label)) / out.total_estimate;
        observed += out.values[mu];
    }
    out.raw_complement = 1 - observed;
    out.values[complement] = out.raw_complement;
    if (out.raw_complement < 0) {
        out.values[complement] = 0;
        out.clamp_events = 1;
        for (double &v : out.values) {
            v /= observed;
        }
    }
    return out;
}

ConditionalFrequencies conditional_frequencies(const CountTable &counts) {
    if (counts.kind != DesignKind::Full || counts.entries.size() != kFullEvents) {
        throw std::invalid_argument("conditional frequencies need a full count table");
    }
    std::array<std::array<uint64_t, 4>, kSettingPairs> n{};
    for (const auto &e : counts.entries) {
        n[setting_pair_index(e.label.x, e.label.y)][e.label.a * 2 + e.label.b] += e.count;
    }
    uint64_t total = counts.total();
    ConditionalFrequencies out;
    for (int xy = 0; xy < kSettingPairs; xy++) {
        uint64_t pair_total = std::accumulate(n[xy].begin(), n[xy].end(), uint64_t{0});
        if (pair_total == 0) {
            throw DegenerateDataError("setting pair " + std::to_string(xy / kSettings + 1) + "," +
                                      std::to_string(xy % kSettings + 1) + " has no events");
        }
        for (int ab = 0; ab < 4; ab++) {
            out.conditional[xy][ab] = static_cast<double>(n[xy][ab]) / static_cast<double>(pair_total);
        }
        out.inputs[xy] = static_cast<double>(pair_total) / static_cast<double>(total);
    }
    return out;
}

ConditionalFrequencies exact_conditional(const DensityMatrix &rho, const BellScenario &scenario) {
    ConditionalFrequencies out;
    for (int x = 1; x <= kSettings; x++) {
        for (int y = 1; y <= kSettings; y++) {
            int xy = setting_pair_index(x, y);
            for (int a = 0; a < kOutcomes; a++) {
                for (int b = 0; b < kOutcomes; b++) {
                    ComplexMatrix op =
                        kron(build_local_projector(Party::A, a, x), build_local_projector(Party::B, b, y));
                    out.conditional[xy][a * 2 + b] = trace_of_product(op, rho.matrix()).real();
                }
            }
            out.inputs[xy] = scenario.input_probability(x, y);
        }
    }
    return out;
}

}  // namespace ditomo
