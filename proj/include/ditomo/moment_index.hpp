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

#ifndef DITOMO_MOMENT_INDEX_HPP
#define DITOMO_MOMENT_INDEX_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ditomo/numerics.hpp"
#include "ditomo/simulation.hpp"

namespace ditomo {

/// Product of outcome-0 projectors A_x and B_y, A letters first.
///
/// A letters commute with B letters; each letter is Hermitian and idempotent, so
/// a canonical word has no equal adjacent letters within either party's word.
struct Monomial {
    std::vector<int> a_word;
    std::vector<int> b_word;

    bool is_identity() const {
        return a_word.empty() && b_word.empty();
    }
    auto operator<=>(const Monomial &) const = default;
    std::string str() const;
};

/// Reverses both words; the adjoint since every letter is Hermitian.
Monomial adjoint(const Monomial &m);

/// Collapses equal adjacent letters in each party's word.
Monomial canonicalize(Monomial m);

/// Canonical form of u† v.
Monomial reduce_word(const Monomial &u, const Monomial &v);

/// Reference from a moment-matrix cell to a free variable.
struct CellRef {
    int variable = -1;  // -1: the constant 1
    bool conjugated = false;
};

struct MomentVariable {
    Monomial word;  // representative, the smaller of w and w†
    bool is_real = false;
    /// Position of the real part (and the imaginary part after it) in the parameter vector.
    int offset = 0;
};

/// One (row, col) contribution of a real parameter to the moment matrix.
struct SparseEntry {
    int row = 0;
    int col = 0;
    Complex coefficient;
};

/// Level {1, A_x, B_y, A_x B_y} moment matrix layout.
///
/// The parameter vector starts with the 15 real probability moments in the
/// order <A_1..A_3>, <B_1..B_3>, <A_x B_y> (x-major); free moments follow as
/// (re, im) pairs.
class MomentIndex {
   public:
    static constexpr int kDimension = 16;
    static constexpr int kProbabilityParameters = 15;

    static const MomentIndex &canonical();

    MomentIndex();

    const std::vector<Monomial> &basis() const {
        return basis_;
    }
    const std::vector<MomentVariable> &variables() const {
        return variables_;
    }
    const CellRef &cell(int row, int col) const {
        return cells_[row * kDimension + col];
    }
    int parameter_count() const {
        return parameter_count_;
    }
    /// Nonzero entries of dM / dtheta_k.
    const std::vector<SparseEntry> &derivative(int parameter) const {
        return derivatives_[parameter];
    }
    int find_variable(const Monomial &word) const;

    static constexpr int a_parameter(int x) {
        return x - 1;
    }
    static constexpr int b_parameter(int y) {
        return 3 + (y - 1);
    }
    static constexpr int ab_parameter(int x, int y) {
        return 6 + (x - 1) * 3 + (y - 1);
    }

    /// M(theta). Always Hermitian by construction.
    ComplexMatrix assemble(std::span<const double> theta) const;

    /// Value of a variable from the parameter vector.
    Complex value(std::span<const double> theta, int variable) const;

   private:
    int add_variable(const Monomial &word);

    std::vector<Monomial> basis_;
    std::vector<MomentVariable> variables_;
    std::vector<CellRef> cells_;
    std::vector<std::vector<SparseEntry>> derivatives_;
    int parameter_count_ = 0;
};

/// Operator of a word built from the canonical qubit measurements.
ComplexMatrix monomial_operator(const Monomial &m);

/// tr(rho u† v) over the basis. PSD for every state.
ComplexMatrix quantum_moment_matrix(const DensityMatrix &rho, const MomentIndex &index = MomentIndex::canonical());

/// Parameter vector realized by rho with the canonical measurements.
std::vector<double> quantum_moments(const DensityMatrix &rho, const MomentIndex &index = MomentIndex::canonical());

}  // namespace ditomo

#endif
