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

#ifndef DITOMO_SIMULATION_HPP
#define DITOMO_SIMULATION_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ditomo/numerics.hpp"
#include "ditomo/rng.hpp"
#include "ditomo/scenario.hpp"

namespace ditomo {

/// Data that cannot be turned into frequencies (empty table, unobserved setting pair).
struct DegenerateDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Physical two-qubit state: Hermitian, unit trace, PSD.
class DensityMatrix {
   public:
    /// Validates and wraps; throws StructuralError if the matrix is not a physical 4x4 state.
    static DensityMatrix from_matrix(const ComplexMatrix &m);
    static DensityMatrix maximally_mixed();
    static DensityMatrix pure(const std::vector<Complex> &psi);

    const ComplexMatrix &matrix() const {
        return matrix_;
    }

   private:
    explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
    }
    ComplexMatrix matrix_;
};

enum class StateKind { Tau1, Tau2, Tau3 };

std::string to_string(StateKind kind);
/// Accepts "tau1".."tau3"; throws std::invalid_argument otherwise.
StateKind parse_state_kind(const std::string &name);

/// Mixing weight of the pure component.
double noise_weight(StateKind kind);

/// Pure state |chi> the test state is built from (normalized).
std::vector<Complex> target_vector(StateKind kind);

/// lambda |chi><chi| + (1 - lambda) / 4 * identity.
DensityMatrix make_test_state(StateKind kind);

/// tr(M_mu rho) per design element. Works for unphysical estimates too.
std::vector<double> born_probabilities(const ComplexMatrix &rho, const TomographyDesign &design);
inline std::vector<double> born_probabilities(const DensityMatrix &rho, const TomographyDesign &design) {
    return born_probabilities(rho.matrix(), design);
}

struct EventCount {
    EventLabel label;
    uint64_t count = 0;
};

/// Counts of the observed events, in design element order.
struct CountTable {
    DesignKind kind = DesignKind::Full;
    std::vector<EventCount> entries;

    uint64_t total() const;
    uint64_t count(const EventLabel &label) const;
};

/// One independent Poisson draw with mean N * P_mu per labeled element. The
/// complement element of a partial design is never observed.
CountTable sample_counts(Prng &rng, const DensityMatrix &rho, const TomographyDesign &design, double mean_total);

/// Counts rounded from mean_total * P_mu; used for noiseless round-trips.
CountTable expected_counts(const DensityMatrix &rho, const TomographyDesign &design, double mean_total);

/// Frequencies aligned with a design's element order.
struct FrequencyVector {
    std::vector<double> values;
    /// N for a full design, N-hat = sum_J N / alpha for a partial one.
    double total_estimate = 0;
    /// Complement frequency 1 - sum_I f before clamping (partial only).
    double raw_complement = 0;
    /// Number of clamp-to-zero corrections applied (0 or 1).
    int clamp_events = 0;
};

/// Full design: f = N(abxy) / N. Partial design: f = N(abxy) / N-hat for kept
/// events plus the complement 1 - sum f, clamped at zero with renormalization.
/// `subset` is required for partial designs. Throws DegenerateDataError when
/// the (estimated) total is zero.
FrequencyVector estimate_frequencies(const CountTable &counts, const TomographyDesign &design,
                                     const EventSubset *subset = nullptr);

/// f(ab|xy) and f(xy) from a full count table.
struct ConditionalFrequencies {
    /// [setting_pair_index][2a + b]
    std::array<std::array<double, 4>, kSettingPairs> conditional{};
    std::array<double, kSettingPairs> inputs{};
};

/// Throws DegenerateDataError if some setting pair has no events.
ConditionalFrequencies conditional_frequencies(const CountTable &counts);

/// Exact P(ab|xy) and P(xy) of a state under the canonical measurements.
ConditionalFrequencies exact_conditional(const DensityMatrix &rho, const BellScenario &scenario);

}  // namespace ditomo

#endif
