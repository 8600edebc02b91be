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

#include <gtest/gtest.h>

#include <cmath>

#include "ditomo/estimators.hpp"
#include "ditomo/simulation.hpp"
#include "test_util.hpp"

namespace ditomo {
namespace {

using testing::max_abs_diff;

const BellScenario kScenario = BellScenario::uniform();

CountTable table_from(const TomographyDesign &design, const std::vector<uint64_t> &counts) {
    CountTable t;
    t.kind = design.kind;
    size_t k = 0;
    for (const PovmElement &e : design.elements) {
        if (e.label) {
            t.entries.push_back({*e.label, counts.at(k++)});
        }
    }
    return t;
}

TEST(DensityMatrix, Validation) {
    EXPECT_NO_THROW(DensityMatrix::maximally_mixed());
    EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::identity(4)), StructuralError);
    EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::diagonal({1.5, -0.5, 0, 0})), StructuralError);
    EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::identity(2) * Complex(0.5)), StructuralError);
    ComplexMatrix m = ComplexMatrix::identity(4) * Complex(0.25);
    m(0, 1) = Complex(0, 0.1);
    EXPECT_THROW(DensityMatrix::from_matrix(m), StructuralError);
}

TEST(TestStates, Parameters) {
    EXPECT_DOUBLE_EQ(noise_weight(StateKind::Tau1), 0.52);
    EXPECT_DOUBLE_EQ(noise_weight(StateKind::Tau2), 0.995);
    EXPECT_DOUBLE_EQ(noise_weight(StateKind::Tau3), 0.995);
    std::vector<Complex> chi3 = target_vector(StateKind::Tau3);
    double norm = std::hypot(0.961, 0.276);
    EXPECT_NEAR(chi3[0].real(), 0.961 / norm, 1e-15);
    EXPECT_NEAR(chi3[3].real(), 0.276 / norm, 1e-15);
    EXPECT_EQ(chi3[1], Complex(0));
    EXPECT_EQ(parse_state_kind("tau2"), StateKind::Tau2);
    EXPECT_THROW(parse_state_kind("tau4"), std::invalid_argument);
}

TEST(TestStates, TraceAndSpectrumFloor) {
    for (StateKind kind : {StateKind::Tau1, StateKind::Tau2, StateKind::Tau3}) {
        DensityMatrix rho = make_test_state(kind);
        EXPECT_NEAR(rho.matrix().trace().real(), 1, 1e-12);
        EXPECT_GE(min_eigenvalue(rho.matrix()), (1 - noise_weight(kind)) / 4 - 1e-12);
    }
}

TEST(TestStates, Tau2Overlap) {
    DensityMatrix rho = make_test_state(StateKind::Tau2);
    std::vector<Complex> psi = target_vector(StateKind::Tau2);
    std::vector<Complex> r = rho.matrix() * psi;
    Complex overlap = 0;
    for (size_t k = 0; k < 4; k++) {
        overlap += std::conj(psi[k]) * r[k];
    }
    EXPECT_NEAR(overlap.real(), 0.99625, 1e-14);
}

TEST(BornProbabilities, MaximallyMixed) {
    TomographyDesign full = build_joint_povm(kScenario);
    for (double p : born_probabilities(DensityMatrix::maximally_mixed(), full)) {
        EXPECT_NEAR(p, 1.0 / 36, 1e-16);
    }
}

TEST(BornProbabilities, BellStateEvent) {
    TomographyDesign full = build_joint_povm(kScenario);
    DensityMatrix psi = DensityMatrix::pure(target_vector(StateKind::Tau2));
    std::vector<double> p = born_probabilities(psi, full);
    EXPECT_NEAR(p[full_event_index({0, 0, 3, 3})], 1.0 / 18, 1e-15);
    EXPECT_NEAR(p[full_event_index({0, 1, 3, 3})], 0, 1e-16);
}

TEST(BornProbabilities, BMatrixConsistency) {
    Prng rng(12);
    TomographyDesign full = build_joint_povm(kScenario);
    PartialDesign partial = build_partial_design(kScenario);
    for (int trial = 0; trial < 10; trial++) {
        DensityMatrix rho = testing::random_state(rng);
        std::vector<double> t(16);
        for (size_t i = 0; i < 16; i++) {
            t[i] = trace_of_product(rho.matrix(), full.pauli_basis[i]).real();
        }
        for (const TomographyDesign *d : {&full, &partial.design}) {
            std::vector<double> via_b = d->b_matrix * t;
            std::vector<double> direct = born_probabilities(rho, *d);
            for (size_t k = 0; k < direct.size(); k++) {
                EXPECT_NEAR(via_b[k], direct[k], 1e-12);
            }
        }
    }
}

TEST(SampleCounts, MeanConvergesForMaximallyMixed) {
    TomographyDesign full = build_joint_povm(kScenario);
    Prng rng(21);
    std::vector<double> sums(36);
    constexpr int kRuns = 2000;
    for (int run = 0; run < kRuns; run++) {
        CountTable t = sample_counts(rng, DensityMatrix::maximally_mixed(), full, 1000);
        ASSERT_EQ(t.entries.size(), 36u);
        for (size_t k = 0; k < 36; k++) {
            sums[k] += static_cast<double>(t.entries[k].count);
        }
    }
    for (double s : sums) {
        EXPECT_NEAR(s / kRuns, 1000.0 / 36, 0.6);
    }
}

TEST(SampleCounts, ZeroProbabilityEventsNeverFire) {
    TomographyDesign full = build_joint_povm(kScenario);
    DensityMatrix psi = DensityMatrix::pure(target_vector(StateKind::Tau2));
    Prng rng(3);
    for (int run = 0; run < 200; run++) {
        CountTable t = sample_counts(rng, psi, full, 1000);
        EXPECT_EQ(t.count({0, 1, 3, 3}), 0u);
        EXPECT_EQ(t.count({1, 0, 3, 3}), 0u);
    }
}

TEST(SampleCounts, DeterministicAndPartialSkipsComplement) {
    TomographyDesign full = build_joint_povm(kScenario);
    PartialDesign partial = build_partial_design(kScenario);
    DensityMatrix rho = make_test_state(StateKind::Tau3);
    Prng a(8);
    Prng b(8);
    CountTable ta = sample_counts(a, rho, full, 1000);
    CountTable tb = sample_counts(b, rho, full, 1000);
    for (size_t k = 0; k < ta.entries.size(); k++) {
        EXPECT_EQ(ta.entries[k].count, tb.entries[k].count);
    }
    CountTable tp = sample_counts(a, rho, partial.design, 1000);
    EXPECT_EQ(tp.kind, DesignKind::Partial);
    EXPECT_EQ(tp.entries.size(), 16u);
}

TEST(SampleCounts, ChiSquareAgainstBornMeans) {
    TomographyDesign full = build_joint_povm(kScenario);
    DensityMatrix rho = make_test_state(StateKind::Tau2);
    std::vector<double> p = born_probabilities(rho, full);
    Prng rng(2718);
    constexpr int kRuns = 10000;
    std::vector<double> sums(36);
    for (int run = 0; run < kRuns; run++) {
        CountTable t = sample_counts(rng, rho, full, 1000);
        for (size_t k = 0; k < 36; k++) {
            sums[k] += static_cast<double>(t.entries[k].count);
        }
    }
    double chi2 = 0;
    int dof = 0;
    for (size_t k = 0; k < 36; k++) {
        double expected = kRuns * 1000 * p[k];
        if (expected > 0) {
            chi2 += (sums[k] - expected) * (sums[k] - expected) / expected;
            dof++;
        }
    }
    // Wilson-Hilferty upper 1e-3 point.
    double z = 3.090232;
    double h = 2.0 / (9 * dof);
    double critical = dof * std::pow(1 - h + z * std::sqrt(h), 3);
    EXPECT_LT(chi2, critical);
}

TEST(EstimateFrequencies, UniformFullCounts) {
    TomographyDesign full = build_joint_povm(kScenario);
    FrequencyVector f = estimate_frequencies(table_from(full, std::vector<uint64_t>(36, 7)), full);
    EXPECT_EQ(f.total_estimate, 252);
    for (double v : f.values) {
        EXPECT_DOUBLE_EQ(v, 1.0 / 36);
    }
}

TEST(EstimateFrequencies, PartialNormalizationFromSubset) {
    PartialDesign p = build_partial_design(kScenario);
    std::vector<uint64_t> counts(16, 0);
    CountTable t = table_from(p.design, counts);
    for (auto &e : t.entries) {
        if (e.label.x == 1 && e.label.y == 1) {
            e.count = e.label.a == 0 ? (e.label.b == 0 ? 30 : 20) : 25;
        }
    }
    FrequencyVector f = estimate_frequencies(t, p.design, &p.subset);
    EXPECT_NEAR(f.total_estimate, 900, 1e-12);
    EXPECT_NEAR(f.values[*p.design.index_of({0, 0, 1, 1})], 30.0 / 900, 1e-15);
    EXPECT_NEAR(f.values.back(), 1 - 100.0 / 900, 1e-15);
    EXPECT_EQ(f.clamp_events, 0);
    double sum = 0;
    for (double v : f.values) {
        sum += v;
    }
    EXPECT_NEAR(sum, 1, 1e-12);
}

TEST(EstimateFrequencies, NegativeComplementIsClampedAndRenormalized) {
    PartialDesign p = build_partial_design(kScenario);
    CountTable t = table_from(p.design, std::vector<uint64_t>(16, 0));
    for (auto &e : t.entries) {
        e.count = (e.label.x == 1 && e.label.y == 1) ? 1 : 50;
    }
    FrequencyVector f = estimate_frequencies(t, p.design, &p.subset);
    EXPECT_LT(f.raw_complement, 0);
    EXPECT_EQ(f.clamp_events, 1);
    EXPECT_EQ(f.values.back(), 0);
    double sum = 0;
    for (double v : f.values) {
        EXPECT_GE(v, 0);
        sum += v;
    }
    EXPECT_NEAR(sum, 1, 1e-12);
}

TEST(EstimateFrequencies, DegenerateTotals) {
    TomographyDesign full = build_joint_povm(kScenario);
    PartialDesign p = build_partial_design(kScenario);
    EXPECT_THROW(estimate_frequencies(table_from(full, std::vector<uint64_t>(36, 0)), full), DegenerateDataError);
    CountTable t = table_from(p.design, std::vector<uint64_t>(16, 3));
    for (auto &e : t.entries) {
        if (e.label.x == 1 && e.label.y == 1) {
            e.count = 0;
        }
    }
    EXPECT_THROW(estimate_frequencies(t, p.design, &p.subset), DegenerateDataError);
}

TEST(EstimateFrequencies, ExactCountsApproachProbabilities) {
    TomographyDesign full = build_joint_povm(kScenario);
    PartialDesign partial = build_partial_design(kScenario);
    DensityMatrix rho = make_test_state(StateKind::Tau3);
    constexpr double kN = 1e7;
    for (const TomographyDesign *d : {&full, &partial.design}) {
        FrequencyVector f = estimate_frequencies(expected_counts(rho, *d, kN), *d, &partial.subset);
        std::vector<double> p = born_probabilities(rho, *d);
        for (size_t k = 0; k < p.size(); k++) {
            EXPECT_NEAR(f.values[k], p[k], 10 / kN);
        }
    }
}

TEST(EstimateFrequencies, FullSumsToOneFromIntegerCounts) {
    TomographyDesign full = build_joint_povm(kScenario);
    Prng rng(6);
    for (int run = 0; run < 50; run++) {
        FrequencyVector f = estimate_frequencies(sample_counts(rng, make_test_state(StateKind::Tau1), full, 1000), full);
        double sum = 0;
        for (double v : f.values) {
            sum += v;
        }
        EXPECT_NEAR(sum, 1, 1e-12);
    }
}

TEST(ConditionalFrequencies, UniformCounts) {
    TomographyDesign full = build_joint_povm(kScenario);
    ConditionalFrequencies c = conditional_frequencies(table_from(full, std::vector<uint64_t>(36, 5)));
    double input_sum = 0;
    for (int xy = 0; xy < kSettingPairs; xy++) {
        for (double v : c.conditional[xy]) {
            EXPECT_DOUBLE_EQ(v, 0.25);
        }
        input_sum += c.inputs[xy];
    }
    EXPECT_NEAR(input_sum, 1, 1e-15);
}

TEST(ConditionalFrequencies, SampledTablesNormalized) {
    TomographyDesign full = build_joint_povm(kScenario);
    Prng rng(13);
    ConditionalFrequencies c = conditional_frequencies(sample_counts(rng, make_test_state(StateKind::Tau2), full, 1000));
    double input_sum = 0;
    for (int xy = 0; xy < kSettingPairs; xy++) {
        double s = 0;
        for (double v : c.conditional[xy]) {
            s += v;
        }
        EXPECT_NEAR(s, 1, 1e-15);
        input_sum += c.inputs[xy];
    }
    EXPECT_NEAR(input_sum, 1, 1e-15);
}

TEST(ConditionalFrequencies, SingletZeroEventVanishes) {
    TomographyDesign full = build_joint_povm(kScenario);
    DensityMatrix psi = DensityMatrix::pure(target_vector(StateKind::Tau2));
    ConditionalFrequencies c = conditional_frequencies(expected_counts(psi, full, 1e6));
    EXPECT_EQ(c.conditional[setting_pair_index(3, 3)][1], 0);
    ConditionalFrequencies exact = exact_conditional(psi, kScenario);
    EXPECT_NEAR(exact.conditional[setting_pair_index(3, 3)][1], 0, 1e-16);
}

TEST(ConditionalFrequencies, MissingSettingPairIsDegenerate) {
    TomographyDesign full = build_joint_povm(kScenario);
    std::vector<uint64_t> counts(36, 4);
    for (int ab = 0; ab < 4; ab++) {
        counts[setting_pair_index(2, 3) * 4 + ab] = 0;
    }
    EXPECT_THROW(conditional_frequencies(table_from(full, counts)), DegenerateDataError);
}

}  // namespace
}  // namespace ditomo
