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

#ifndef DITOMO_SCENARIO_HPP
#define DITOMO_SCENARIO_HPP

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "ditomo/numerics.hpp"

namespace ditomo {

enum class Party { A, B };

constexpr int kSettings = 3;
constexpr int kOutcomes = 2;
constexpr int kSettingPairs = kSettings * kSettings;
constexpr int kFullEvents = kSettingPairs * kOutcomes * kOutcomes;  // 36
constexpr int kPauliCount = 16;

/// Joint event (a, b, x, y); outcomes are 0/1 and settings 1..3.
struct EventLabel {
    int a = 0;
    int b = 0;
    int x = 1;
    int y = 1;

    auto operator<=>(const EventLabel &) const = default;
    std::string str() const;
};

/// Position of the setting pair (x, y) in 0..8, x-major.
constexpr int setting_pair_index(int x, int y) {
    return (x - 1) * kSettings + (y - 1);
}

/// Position of an event in the full 36-element design: setting pair major, then (a, b).
constexpr int full_event_index(const EventLabel &e) {
    return setting_pair_index(e.x, e.y) * 4 + e.a * 2 + e.b;
}

EventLabel full_event_label(int index);

struct BellScenario {
    /// P(xy), indexed by setting_pair_index.
    std::array<double, kSettingPairs> input_distribution{};

    static BellScenario uniform();
    double input_probability(int x, int y) const {
        return input_distribution[setting_pair_index(x, y)];
    }
};

enum class DesignKind { Full, Partial };

std::string to_string(DesignKind kind);

struct PovmElement {
    std::optional<EventLabel> label;  // nullopt for the complement of the observed events
    ComplexMatrix op;
};

struct TomographyDesign {
    DesignKind kind = DesignKind::Full;
    std::vector<PovmElement> elements;
    std::vector<ComplexMatrix> pauli_basis;
    /// n_M x 16, entries tr(M_mu Gamma_i) / 4.
    RealMatrix b_matrix;

    size_t size() const {
        return elements.size();
    }
    /// Elements carrying a label, i.e. the ones that produce counts.
    size_t observed_count() const;
    /// Index of a labeled element, or nullopt if the design does not observe it.
    std::optional<size_t> index_of(const EventLabel &label) const;
};

/// Observed events I, normalization subset J of I, and alpha with sum_J M = alpha * identity.
struct EventSubset {
    std::vector<EventLabel> kept;
    std::vector<EventLabel> normalization;
    double alpha = 0;

    bool is_normalizer(const EventLabel &e) const;
};

struct PartialDesign {
    TomographyDesign design;
    EventSubset subset;
};

/// Pauli sigma_n, n = 0 (identity) .. 3.
ComplexMatrix pauli(int n);

/// (1 + (-1)^outcome sigma_setting) / 2. Throws std::out_of_range on bad indices.
ComplexMatrix build_local_projector(Party party, int outcome, int setting);

/// Gamma_i = sigma_j (x) sigma_k stored at position 4j + k (one-based i = 4j + k + 1).
std::vector<ComplexMatrix> build_pauli_basis();

/// M_abxy = P(xy) (M^A_{a|x} (x) M^B_{b|y}), 36 elements in full_event_index order.
TomographyDesign build_joint_povm(const BellScenario &scenario);

/// 16 kept joint events plus the complement element. Per party the kept
/// (outcome, setting) pairs are (0,1), (1,1), (0,2), (0,3); J is the four
/// outcomes of setting pair (1,1).
PartialDesign build_partial_design(const BellScenario &scenario);

/// tr(M Gamma_i) / 4 for every element.
RealMatrix build_b_matrix(const std::vector<PovmElement> &elements, const std::vector<ComplexMatrix> &pauli_basis);

/// Largest violation of: elements PSD, sum to identity. Used by tests and at construction.
struct DesignCheck {
    double min_element_eigenvalue = 0;
    double completeness_defect = 0;
};
DesignCheck check_design(const TomographyDesign &design);

}  // namespace ditomo

#endif
