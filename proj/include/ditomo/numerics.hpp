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

#ifndef DITOMO_NUMERICS_HPP
#define DITOMO_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ditomo {

using Complex = std::complex<double>;

/// Raised when a matrix argument has the wrong shape or symmetry.
struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {
inline double conj_of(double v) {
    return v;
}
inline Complex conj_of(Complex v) {
    return std::conj(v);
}
}  // namespace detail

/// Dense row-major matrix. Small sizes only (n <= 128 in practice).
template <typename T>
class Matrix {
   public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }
    Matrix(size_t rows, size_t cols, std::vector<T> entries) : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows * cols) {
            throw StructuralError("matrix entry count does not match its shape");
        }
    }
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw StructuralError("ragged matrix literal");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t k = 0; k < n; k++) {
            m(k, k) = T(1);
        }
        return m;
    }

    static Matrix diagonal(const std::vector<T> &diag) {
        Matrix m(diag.size(), diag.size());
        for (size_t k = 0; k < diag.size(); k++) {
            m(k, k) = diag[k];
        }
        return m;
    }

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }
    bool empty() const {
        return data_.empty();
    }

    T &operator()(size_t r, size_t c) {
        return data_[r * cols_ + c];
    }
    const T &operator()(size_t r, size_t c) const {
        return data_[r * cols_ + c];
    }

    const std::vector<T> &entries() const {
        return data_;
    }
    T *data() {
        return data_.data();
    }
    const T *data() const {
        return data_.data();
    }

    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (size_t r = 0; r < rows_; r++) {
            for (size_t c = 0; c < cols_; c++) {
                out(c, r) = detail::conj_of((*this)(r, c));
            }
        }
        return out;
    }

    T trace() const {
        T acc{};
        for (size_t k = 0; k < std::min(rows_, cols_); k++) {
            acc += (*this)(k, k);
        }
        return acc;
    }

    double max_abs() const {
        double best = 0;
        for (const auto &v : data_) {
            best = std::max(best, std::abs(v));
        }
        return best;
    }

    double frobenius_norm() const {
        double acc = 0;
        for (const auto &v : data_) {
            acc += std::norm(v);
        }
        return std::sqrt(acc);
    }

    Matrix &operator+=(const Matrix &other) {
        check_same_shape(other);
        for (size_t k = 0; k < data_.size(); k++) {
            data_[k] += other.data_[k];
        }
        return *this;
    }
    Matrix &operator-=(const Matrix &other) {
        check_same_shape(other);
        for (size_t k = 0; k < data_.size(); k++) {
            data_[k] -= other.data_[k];
        }
        return *this;
    }
    Matrix &operator*=(T scale) {
        for (auto &v : data_) {
            v *= scale;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) {
        a += b;
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix &b) {
        a -= b;
        return a;
    }
    friend Matrix operator*(Matrix a, T scale) {
        a *= scale;
        return a;
    }
    friend Matrix operator*(T scale, Matrix a) {
        a *= scale;
        return a;
    }
    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols_ != b.rows_) {
            throw StructuralError("matrix product shape mismatch");
        }
        Matrix out(a.rows_, b.cols_);
        for (size_t r = 0; r < a.rows_; r++) {
            for (size_t k = 0; k < a.cols_; k++) {
                T lhs = a(r, k);
                if (lhs == T{}) {
                    continue;
                }
                for (size_t c = 0; c < b.cols_; c++) {
                    out(r, c) += lhs * b(k, c);
                }
            }
        }
        return out;
    }
    friend std::vector<T> operator*(const Matrix &a, const std::vector<T> &v) {
        if (a.cols_ != v.size()) {
            throw StructuralError("matrix-vector shape mismatch");
        }
        std::vector<T> out(a.rows_);
        for (size_t r = 0; r < a.rows_; r++) {
            T acc{};
            for (size_t c = 0; c < a.cols_; c++) {
                acc += a(r, c) * v[c];
            }
            out[r] = acc;
        }
        return out;
    }

    bool operator==(const Matrix &other) const = default;

   private:
    void check_same_shape(const Matrix &other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw StructuralError("matrix shape mismatch");
        }
    }

    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<T> data_;
};

using ComplexMatrix = Matrix<Complex>;
using RealMatrix = Matrix<double>;

/// Largest deviation from Hermiticity, max |M[i][j] - conj(M[j][i])|.
double hermitian_defect(const ComplexMatrix &m);

/// True when hermitian_defect(m) <= tolerance * max(1, m.max_abs()).
bool is_hermitian(const ComplexMatrix &m, double tolerance = 1e-12);

/// (M + M†) / 2.
ComplexMatrix hermitize(const ComplexMatrix &m);

/// tr(A B) without forming the product.
Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexMatrix to_complex(const RealMatrix &m);

RealMatrix transpose(const RealMatrix &m);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns
};

/// Cyclic complex Jacobi. Throws StructuralError on non-square or non-Hermitian input.
EigenDecomposition hermitian_eig(const ComplexMatrix &m);

/// Eigenvalues only, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m);

double min_eigenvalue(const ComplexMatrix &m);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix &m);

/// Moore-Penrose pseudoinverse through the eigendecomposition of the Gram matrix.
///
/// Singular values at or below relative_tolerance * sigma_max are dropped, as are
/// those the Gram route cannot resolve from rounding noise.
RealMatrix pseudoinverse(const RealMatrix &a, double relative_tolerance = 1e-12);

/// Singular values, descending.
std::vector<double> singular_values(const RealMatrix &a);

size_t numerical_rank(const RealMatrix &a, double relative_tolerance = 1e-10);

/// In-place Cholesky factor L (lower) with M = L L†. Returns false if M is not
/// numerically positive definite.
bool cholesky(ComplexMatrix &m);
bool cholesky(RealMatrix &m);

/// Solves (L L^T) x = b given the lower factor produced by cholesky().
std::vector<double> cholesky_solve(const RealMatrix &lower, std::vector<double> b);

}  // namespace ditomo

#endif
