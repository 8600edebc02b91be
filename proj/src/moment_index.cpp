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

#include "ditomo/moment_index.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ditomo/scenario.hpp"

namespace ditomo {

namespace {

std::vector<int> collapse(const std::vector<int> &word) {
    std::vector<int> out;
    out.reserve(word.size());
    for (int letter : word) {
        if (out.empty() || out.back() != letter) {
            out.push_back(letter);
        }
    }
    return out;
}

std::vector<int> concat_reversed(const std::vector<int> &reversed_part, const std::vector<int> &tail) {
    std::vector<int> out(reversed_part.rbegin(), reversed_part.rend());
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

}  // namespace

std::string Monomial::str() const {
    if (is_identity()) {
        return "1";
    }
    std::string s;
    for (int x : a_word) {
        s += "A" + std::to_string(x);
    }
    for (int y : b_word) {
        s += "B" + std::to_string(y);
    }
    return s;
}

Monomial adjoint(const Monomial &m) {
    return Monomial{{m.a_word.rbegin(), m.a_word.rend()}, {m.b_word.rbegin(), m.b_word.rend()}};
}

Monomial canonicalize(Monomial m) {
    return Monomial{collapse(m.a_word), collapse(m.b_word)};
}

Monomial reduce_word(const Monomial &u, const Monomial &v) {
    return canonicalize(Monomial{concat_reversed(u.a_word, v.a_word), concat_reversed(u.b_word, v.b_word)});
}

const MomentIndex &MomentIndex::canonical() {
    static const MomentIndex index;
    return index;
}

MomentIndex::MomentIndex() {
    basis_.push_back({});
    for (int x = 1; x <= kSettings; x++) {
        basis_.push_back({{x}, {}});
    }
    for (int y = 1; y <= kSettings; y++) {
        basis_.push_back({{}, {y}});
    }
    for (int x = 1; x <= kSettings; x++) {
        for (int y = 1; y <= kSettings; y++) {
            basis_.push_back({{x}, {y}});
        }
    }

    // Probability moments come first so their parameter offsets are fixed.
    for (int k = 1; k < kDimension; k++) {
        add_variable(basis_[k]);
    }

    cells_.assign(kDimension * kDimension, CellRef{});
    for (int r = 0; r < kDimension; r++) {
        for (int c = r; c < kDimension; c++) {
            Monomial w = reduce_word(basis_[r], basis_[c]);
            if (w.is_identity()) {
                continue;
            }
            Monomial w_dag = adjoint(w);
            const Monomial &key = std::min(w, w_dag);
            int var = find_variable(key);
            if (var < 0) {
                var = add_variable(key);
            }
            bool conj = w != key;
            cells_[r * kDimension + c] = {var, conj};
            cells_[c * kDimension + r] = {var, variables_[var].is_real ? false : !conj};
        }
    }

    derivatives_.assign(parameter_count_, {});
    for (int r = 0; r < kDimension; r++) {
        for (int c = 0; c < kDimension; c++) {
            const CellRef &ref = cells_[r * kDimension + c];
            if (ref.variable < 0) {
                continue;
            }
            const MomentVariable &v = variables_[ref.variable];
            derivatives_[v.offset].push_back({r, c, Complex(1)});
            if (!v.is_real) {
                derivatives_[v.offset + 1].push_back({r, c, Complex(0, ref.conjugated ? -1 : 1)});
            }
        }
    }
}

int MomentIndex::add_variable(const Monomial &word) {
    MomentVariable v;
    v.word = word;
    v.is_real = word == adjoint(word);
    v.offset = parameter_count_;
    parameter_count_ += v.is_real ? 1 : 2;
    variables_.push_back(std::move(v));
    return static_cast<int>(variables_.size()) - 1;
}

int MomentIndex::find_variable(const Monomial &word) const {
    for (size_t k = 0; k < variables_.size(); k++) {
        if (variables_[k].word == word) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

Complex MomentIndex::value(std::span<const double> theta, int variable) const {
    const MomentVariable &v = variables_[variable];
    return v.is_real ? Complex(theta[v.offset]) : Complex(theta[v.offset], theta[v.offset + 1]);
}

ComplexMatrix MomentIndex::assemble(std::span<const double> theta) const {
    if (static_cast<int>(theta.size()) != parameter_count_) {
        throw std::invalid_argument("moment parameter vector has the wrong length");
    }
    ComplexMatrix m(kDimension, kDimension);
    for (int r = 0; r < kDimension; r++) {
        for (int c = 0; c < kDimension; c++) {
            const CellRef &ref = cell(r, c);
            if (ref.variable < 0) {
                m(r, c) = 1;
                continue;
            }
            Complex z = value(theta, ref.variable);
            m(r, c) = ref.conjugated ? std::conj(z) : z;
        }
    }
    return m;
}

ComplexMatrix monomial_operator(const Monomial &m) {
    ComplexMatrix id2 = ComplexMatrix::identity(2);
    ComplexMatrix a_part = id2;
    for (int x : m.a_word) {
        a_part = a_part * build_local_projector(Party::A, 0, x);
    }
    ComplexMatrix b_part = id2;
    for (int y : m.b_word) {
        b_part = b_part * build_local_projector(Party::B, 0, y);
    }
    return kron(a_part, b_part);
}

ComplexMatrix quantum_moment_matrix(const DensityMatrix &rho, const MomentIndex &index) {
    const auto &basis = index.basis();
    std::vector<ComplexMatrix> ops;
    ops.reserve(basis.size());
    for (const auto &u : basis) {
        ops.push_back(monomial_operator(u));
    }
    ComplexMatrix m(basis.size(), basis.size());
    for (size_t r = 0; r < basis.size(); r++) {
        ComplexMatrix left = ops[r].adjoint();
        for (size_t c = 0; c < basis.size(); c++) {
            m(r, c) = trace_of_product(left * ops[c], rho.matrix());
        }
    }
    return m;
}

std::vector<double> quantum_moments(const DensityMatrix &rho, const MomentIndex &index) {
    std::vector<double> theta(index.parameter_count());
    for (const auto &v : index.variables()) {
        Complex z = trace_of_product(monomial_operator(v.word), rho.matrix());
        theta[v.offset] = z.real();
        if (!v.is_real) {
            theta[v.offset + 1] = z.imag();
        }
    }
    return theta;
}

}  // namespace ditomo
