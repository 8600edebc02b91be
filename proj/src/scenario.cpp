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

#include "ditomo/scenario.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ditomo {

namespace {

constexpr double kConstructionTolerance = 1e-12;

// Per party: (outcome, setting) pairs that stay observed in the partial design.
constexpr std::array<std::pair<int, int>, 4> kKeptLocalEvents{{{0, 1}, {1, 1}, {0, 2}, {0, 3}}};

ComplexMatrix joint_element(const BellScenario &scenario, const EventLabel &e) {
    return scenario.input_probability(e.x, e.y) *
           kron(build_local_projector(Party::A, e.a, e.x), build_local_projector(Party::B, e.b, e.y));
}

}  // namespace

std::string EventLabel::str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(x) + "," + std::to_string(y) + ")";
}

EventLabel full_event_label(int index) {
    if (index < 0 || index >= kFullEvents) {
        throw std::out_of_range("full_event_label: index out of range");
    }
    int pair = index / 4;
    int ab = index % 4;
    return EventLabel{ab / 2, ab % 2, pair / kSettings + 1, pair % kSettings + 1};
}

BellScenario BellScenario::uniform() {
    BellScenario s;
    s.input_distribution.fill(1.0 / kSettingPairs);
    return s;
}

std::string to_string(DesignKind kind) {
    return kind == DesignKind::Full ? "full" : "partial";
}

size_t TomographyDesign::observed_count() const {
    return static_cast<size_t>(
        std::count_if(elements.begin(), elements.end(), [](const PovmElement &e) { return e.label.has_value(); }));
}

std::optional<size_t> TomographyDesign::index_of(const EventLabel &label) const {
    for (size_t k = 0; k < elements.size(); k++) {
        if (elements[k].label == label) {
            return k;
        }
    }
    return std::nullopt;
}

bool EventSubset::is_normalizer(const EventLabel &e) const {
    return std::find(normalization.begin(), normalization.end(), e) != normalization.end();
}

ComplexMatrix pauli(int n) {
    const Complex i{0, 1};
    switch (n) {
        case 0:
            return {{1, 0}, {0, 1}};
        case 1:
            return {{0, 1}, {1, 0}};
        case 2:
            return {{0, -i}, {i, 0}};
        case 3:
            return {{1, 0}, {0, -1}};
        default:
            throw std::out_of_range("pauli: index must be 0..3");
    }
}

ComplexMatrix build_local_projector(Party, int outcome, int setting) {
    if (outcome < 0 || outcome >= kOutcomes) {
        throw std::out_of_range("build_local_projector: outcome must be 0 or 1");
    }
    if (setting < 1 || setting > kSettings) {
        throw std::out_of_range("build_local_projector: setting must be 1..3");
    }
    double sign = outcome == 0 ? 1.0 : -1.0;
    return 0.5 * (pauli(0) + Complex(sign) * pauli(setting));
}

std::vector<ComplexMatrix> build_pauli_basis() {
    std::vector<ComplexMatrix> basis;
    basis.reserve(kPauliCount);
    for (int j = 0; j < 4; j++) {
        for (int k = 0; k < 4; k++) {
            basis.push_back(kron(pauli(j), pauli(k)));
        }
    }
    return basis;
}

RealMatrix build_b_matrix(const std::vector<PovmElement> &elements, const std::vector<ComplexMatrix> &pauli_basis) {
    RealMatrix b(elements.size(), pauli_basis.size());
    for (size_t mu = 0; mu < elements.size(); mu++) {
        for (size_t i = 0; i < pauli_basis.size(); i++) {
            b(mu, i) = trace_of_product(elements[mu].op, pauli_basis[i]).real() / 4;
        }
    }
    return b;
}

TomographyDesign build_joint_povm(const BellScenario &scenario) {
    TomographyDesign design;
    design.kind = DesignKind::Full;
    design.elements.reserve(kFullEvents);
    for (int k = 0; k < kFullEvents; k++) {
        EventLabel e = full_event_label(k);
        design.elements.push_back({e, joint_element(scenario, e)});
    }
    design.pauli_basis = build_pauli_basis();
    design.b_matrix = build_b_matrix(design.elements, design.pauli_basis);
    return design;
}

PartialDesign build_partial_design(const BellScenario &scenario) {
    PartialDesign out;
    EventSubset &subset = out.subset;
    for (auto [a, x] : kKeptLocalEvents) {
        for (auto [b, y] : kKeptLocalEvents) {
            subset.kept.push_back({a, b, x, y});
        }
    }
    for (int a = 0; a < kOutcomes; a++) {
        for (int b = 0; b < kOutcomes; b++) {
            subset.normalization.push_back({a, b, 1, 1});
        }
    }

    TomographyDesign &design = out.design;
    design.kind = DesignKind::Partial;
    ComplexMatrix kept_sum(4, 4);
    for (const EventLabel &e : subset.kept) {
        ComplexMatrix m = joint_element(scenario, e);
        kept_sum += m;
        design.elements.push_back({e, std::move(m)});
    }
    design.elements.push_back({std::nullopt, ComplexMatrix::identity(4) - kept_sum});

    ComplexMatrix normalizer_sum(4, 4);
    for (const EventLabel &e : subset.normalization) {
        normalizer_sum += joint_element(scenario, e);
    }
    subset.alpha = normalizer_sum(0, 0).real();
    ComplexMatrix defect = normalizer_sum - Complex(subset.alpha) * ComplexMatrix::identity(4);
    if (defect.max_abs() > kConstructionTolerance) {
        throw std::logic_error("build_partial_design: normalization subset does not sum to a multiple of identity");
    }

    design.pauli_basis = build_pauli_basis();
    design.b_matrix = build_b_matrix(design.elements, design.pauli_basis);
    return out;
}

DesignCheck check_design(const TomographyDesign &design) {
    DesignCheck check;
    check.min_element_eigenvalue = std::numeric_limits<double>::infinity();
    ComplexMatrix total(4, 4);
    for (const auto &e : design.elements) {
        check.min_element_eigenvalue = std::min(check.min_element_eigenvalue, min_eigenvalue(e.op));
        total += e.op;
    }
    check.completeness_defect = (total - ComplexMatrix::identity(4)).max_abs();
    return check;
}

}  // namespace ditomo
