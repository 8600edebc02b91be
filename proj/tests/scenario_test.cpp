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

#include <set>

#include "ditomo/scenario.hpp"
#include "ditomo/simulation.hpp"
#include "test_util.hpp"

namespace ditomo {
namespace {

using testing::max_abs_diff;

TEST(Scenario, UniformInputDistribution) {
    BellScenario s = BellScenario::uniform();
    double sum = 0;
    for (double p : s.input_distribution) {
        EXPECT_DOUBLE_EQ(p, 1.0 / 9);
        sum += p;
    }
    EXPECT_NEAR(sum, 1, 1e-15);
}

TEST(Scenario, EventIndexRoundTrip) {
    std::set<int> seen;
    for (int k = 0; k < kFullEvents; k++) {
        EventLabel e = full_event_label(k);
        EXPECT_EQ(full_event_index(e), k);
        seen.insert(k);
    }
    EXPECT_EQ(seen.size(), 36u);
    EXPECT_EQ(full_event_index({0, 0, 1, 1}), 0);
    EXPECT_EQ(full_event_index({1, 1, 3, 3}), 35);
}

TEST(LocalProjector, Examples) {
    EXPECT_EQ(build_local_projector(Party::A, 0, 3), ComplexMatrix::diagonal({1, 0}));
    EXPECT_EQ(build_local_projector(Party::A, 1, 3), ComplexMatrix::diagonal({0, 1}));
    EXPECT_LE(max_abs_diff(build_local_projector(Party::B, 0, 1), ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}), 1e-16);
}

TEST(LocalProjector, IdempotentAndComplete) {
    for (Party party : {Party::A, Party::B}) {
        for (int x = 1; x <= 3; x++) {
            ComplexMatrix p0 = build_local_projector(party, 0, x);
            ComplexMatrix p1 = build_local_projector(party, 1, x);
            EXPECT_LE(max_abs_diff(p0 * p0, p0), 1e-15);
            EXPECT_LE(max_abs_diff(p0 + p1, ComplexMatrix::identity(2)), 1e-15);
        }
    }
}

TEST(LocalProjector, RejectsBadIndices) {
    EXPECT_THROW(build_local_projector(Party::A, 2, 1), std::out_of_range);
    EXPECT_THROW(build_local_projector(Party::A, 0, 0), std::out_of_range);
    EXPECT_THROW(build_local_projector(Party::B, 0, 4), std::out_of_range);
}

TEST(PauliBasis, Examples) {
    std::vector<ComplexMatrix> g = build_pauli_basis();
    ASSERT_EQ(g.size(), 16u);
    EXPECT_EQ(g[0], ComplexMatrix::identity(4));
    EXPECT_EQ(g[15], ComplexMatrix::diagonal({1, -1, -1, 1}));
    EXPECT_EQ(g[4 * 1 + 2], kron(pauli(1), pauli(2)));
    for (size_t i = 0; i < 16; i++) {
        for (size_t j = 0; j < 16; j++) {
            Complex t = trace_of_product(g[i], g[j]);
            EXPECT_NEAR(std::abs(t - Complex(i == j ? 4.0 : 0.0)), 0, 1e-12);
        }
    }
}

void expect_valid_design(const TomographyDesign &design) {
    DesignCheck check = check_design(design);
    EXPECT_GE(check.min_element_eigenvalue, -1e-12);
    EXPECT_LE(check.completeness_defect, 1e-12);
    for (const PovmElement &e : design.elements) {
        EXPECT_TRUE(is_hermitian(e.op));
    }
}

TEST(JointPovm, CompleteAndInformationallyComplete) {
    TomographyDesign d = build_joint_povm(BellScenario::uniform());
    ASSERT_EQ(d.size(), 36u);
    EXPECT_EQ(d.observed_count(), 36u);
    expect_valid_design(d);
    ComplexMatrix sum(4, 4);
    for (const PovmElement &e : d.elements) {
        sum += e.op;
    }
    EXPECT_LE(max_abs_diff(sum, ComplexMatrix::identity(4)), 1e-12);
    EXPECT_EQ(d.b_matrix.rows(), 36u);
    EXPECT_EQ(d.b_matrix.cols(), 16u);
    EXPECT_EQ(numerical_rank(d.b_matrix), 16u);
}

TEST(JointPovm, ElementTraceAndOrdering) {
    TomographyDesign d = build_joint_povm(BellScenario::uniform());
    size_t k = *d.index_of({0, 0, 3, 3});
    EXPECT_NEAR(d.elements[k].op.trace().real(), 1.0 / 9, 1e-15);
    for (size_t i = 0; i < d.size(); i++) {
        EXPECT_EQ(full_event_index(*d.elements[i].label), static_cast<int>(i));
        const EventLabel &e = *d.elements[i].label;
        ComplexMatrix expected = kron(build_local_projector(Party::A, e.a, e.x), build_local_projector(Party::B, e.b, e.y));
        expected *= Complex(1.0 / 9);
        EXPECT_LE(max_abs_diff(d.elements[i].op, expected), 1e-16);
    }
}

TEST(JointPovm, BMatrixEntriesAreScaledPauliTraces) {
    TomographyDesign d = build_joint_povm(BellScenario::uniform());
    for (size_t mu = 0; mu < d.size(); mu++) {
        for (size_t i = 0; i < 16; i++) {
            EXPECT_NEAR(d.b_matrix(mu, i), trace_of_product(d.elements[mu].op, d.pauli_basis[i]).real() / 4, 1e-15);
        }
    }
}

TEST(PartialDesign, Structure) {
    PartialDesign p = build_partial_design(BellScenario::uniform());
    EXPECT_EQ(p.design.kind, DesignKind::Partial);
    ASSERT_EQ(p.design.size(), 17u);
    EXPECT_EQ(p.design.observed_count(), 16u);
    EXPECT_EQ(p.subset.kept.size(), 16u);
    EXPECT_DOUBLE_EQ(p.subset.alpha, 1.0 / 9);
    EXPECT_FALSE(p.design.elements.back().label.has_value());
    expect_valid_design(p.design);
    EXPECT_GE(min_eigenvalue(p.design.elements.back().op), -1e-12);
    EXPECT_EQ(p.design.b_matrix.rows(), 17u);
    EXPECT_EQ(numerical_rank(p.design.b_matrix), 16u);
}

TEST(PartialDesign, KeptEventsArePerPartyProduct) {
    PartialDesign p = build_partial_design(BellScenario::uniform());
    const std::set<std::pair<int, int>> per_party{{0, 1}, {1, 1}, {0, 2}, {0, 3}};
    std::set<EventLabel> kept(p.subset.kept.begin(), p.subset.kept.end());
    EXPECT_EQ(kept.size(), 16u);
    for (const EventLabel &e : kept) {
        EXPECT_TRUE(per_party.count({e.a, e.x}));
        EXPECT_TRUE(per_party.count({e.b, e.y}));
    }
}

TEST(PartialDesign, NormalizationSubsetSumsToAlphaIdentity) {
    PartialDesign p = build_partial_design(BellScenario::uniform());
    ASSERT_EQ(p.subset.normalization.size(), 4u);
    TomographyDesign full = build_joint_povm(BellScenario::uniform());
    ComplexMatrix sum(4, 4);
    for (const EventLabel &e : p.subset.normalization) {
        EXPECT_EQ(e.x, 1);
        EXPECT_EQ(e.y, 1);
        EXPECT_TRUE(p.subset.is_normalizer(e));
        EXPECT_TRUE(std::find(p.subset.kept.begin(), p.subset.kept.end(), e) != p.subset.kept.end());
        sum += full.elements[full_event_index(e)].op;
    }
    EXPECT_LE(max_abs_diff(sum, ComplexMatrix::identity(4) * Complex(p.subset.alpha)), 1e-12);
    EXPECT_FALSE(p.subset.is_normalizer({0, 0, 2, 2}));
}

TEST(Designs, RandomStateProbabilities) {
    Prng rng(100);
    TomographyDesign full = build_joint_povm(BellScenario::uniform());
    PartialDesign partial = build_partial_design(BellScenario::uniform());
    for (int trial = 0; trial < 100; trial++) {
        DensityMatrix rho = testing::random_state(rng);
        std::vector<double> pf = born_probabilities(rho, full);
        double sum = 0;
        for (double v : pf) {
            EXPECT_GE(v, -1e-12);
            sum += v;
        }
        EXPECT_NEAR(sum, 1, 1e-12);
        std::vector<double> pp = born_probabilities(rho, partial.design);
        for (size_t k = 0; k < partial.design.size(); k++) {
            const auto &label = partial.design.elements[k].label;
            if (label) {
                EXPECT_EQ(pp[k], pf[full_event_index(*label)]);
            }
        }
    }
}

}  // namespace
}  // namespace ditomo
