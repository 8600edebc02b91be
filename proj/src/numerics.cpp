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

#include "ditomo/numerics.hpp"

#include <cfloat>
#include <numeric>

namespace ditomo {

namespace {

constexpr double kJacobiRelativeTolerance = 1e-13;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix &a) {
    double acc = 0;
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = 0; c < a.cols(); c++) {
            if (r != c) {
                acc += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(acc);
}

void require_hermitian(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw StructuralError("expected a square matrix, got " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()));
    }
    if (!is_hermitian(m)) {
        throw StructuralError("expected a Hermitian matrix (defect " + std::to_string(hermitian_defect(m)) + ")");
    }
}

// Applies A <- U† A U and V <- V U for the 2x2 unitary acting on indices p, q.
void apply_rotation(ComplexMatrix &a, ComplexMatrix &v, size_t p, size_t q, Complex upp, Complex upq, Complex uqp,
                    Complex uqq) {
    size_t n = a.rows();
    for (size_t k = 0; k < n; k++) {
        Complex akp = a(k, p);
        Complex akq = a(k, q);
        a(k, p) = akp * upp + akq * uqp;
        a(k, q) = akp * upq + akq * uqq;
    }
    for (size_t k = 0; k < n; k++) {
        Complex apk = a(p, k);
        Complex aqk = a(q, k);
        a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
        a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
    }
    for (size_t k = 0; k < n; k++) {
        Complex vkp = v(k, p);
        Complex vkq = v(k, q);
        v(k, p) = vkp * upp + vkq * uqp;
        v(k, q) = vkp * upq + vkq * uqq;
    }
    a(p, q) = 0;
    a(q, p) = 0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

// Eigenvalues of a real symmetric Gram matrix, with the ones indistinguishable
// from rounding noise reported as exactly zero.
struct GramSpectrum {
    EigenDecomposition eig;
    std::vector<double> sigma;  // aligned with eig.eigenvalues
    double sigma_max = 0;
};

GramSpectrum gram_spectrum(const RealMatrix &gram) {
    GramSpectrum out;
    out.eig = hermitian_eig(to_complex(gram));
    double lambda_max = 0;
    for (double l : out.eig.eigenvalues) {
        lambda_max = std::max(lambda_max, l);
    }
    double noise_floor = static_cast<double>(gram.rows()) * 4 * DBL_EPSILON * lambda_max;
    out.sigma.reserve(out.eig.eigenvalues.size());
    for (double l : out.eig.eigenvalues) {
        out.sigma.push_back(l > noise_floor ? std::sqrt(l) : 0.0);
    }
    out.sigma_max = std::sqrt(std::max(lambda_max, 0.0));
    return out;
}

RealMatrix gram(const RealMatrix &a) {
    // A^T A
    RealMatrix g(a.cols(), a.cols());
    for (size_t i = 0; i < a.cols(); i++) {
        for (size_t j = i; j < a.cols(); j++) {
            double acc = 0;
            for (size_t r = 0; r < a.rows(); r++) {
                acc += a(r, i) * a(r, j);
            }
            g(i, j) = acc;
            g(j, i) = acc;
        }
    }
    return g;
}

}  // namespace

double hermitian_defect(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw StructuralError("hermitian_defect needs a square matrix");
    }
    double worst = 0;
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = r; c < m.cols(); c++) {
            worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
        }
    }
    return worst;
}

bool is_hermitian(const ComplexMatrix &m, double tolerance) {
    return m.is_square() && hermitian_defect(m) <= tolerance * std::max(1.0, m.max_abs());
}

ComplexMatrix hermitize(const ComplexMatrix &m) {
    ComplexMatrix out = m;
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            out(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
        }
    }
    return out;
}

Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw StructuralError("trace_of_product shape mismatch");
    }
    Complex acc = 0;
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t k = 0; k < a.cols(); k++) {
            acc += a(r, k) * b(k, r);
        }
    }
    return acc;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t ra = 0; ra < a.rows(); ra++) {
        for (size_t ca = 0; ca < a.cols(); ca++) {
            Complex s = a(ra, ca);
            for (size_t rb = 0; rb < b.rows(); rb++) {
                for (size_t cb = 0; cb < b.cols(); cb++) {
                    out(ra * b.rows() + rb, ca * b.cols() + cb) = s * b(rb, cb);
                }
            }
        }
    }
    return out;
}

ComplexMatrix to_complex(const RealMatrix &m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

RealMatrix transpose(const RealMatrix &m) {
    return m.adjoint();
}

EigenDecomposition hermitian_eig(const ComplexMatrix &m) {
    require_hermitian(m);
    size_t n = m.rows();
    ComplexMatrix a = hermitize(m);
    ComplexMatrix v = ComplexMatrix::identity(n);

    double target = kJacobiRelativeTolerance * a.frobenius_norm();
    for (int sweep = 0; sweep < kJacobiMaxSweeps; sweep++) {
        if (off_diagonal_norm(a) <= target) {
            break;
        }
        for (size_t p = 0; p + 1 < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                Complex apq = a(p, q);
                double r = std::abs(apq);
                if (r == 0) {
                    continue;
                }
                Complex phase = apq / r;
                double tau = (a(q, q).real() - a(p, p).real()) / (2 * r);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                double c = 1 / std::sqrt(1 + t * t);
                double s = t * c;
                Complex unphase = std::conj(phase);
                apply_rotation(a, v, p, q, c, s, -s * unphase, c * unphase);
            }
        }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t i, size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (size_t k = 0; k < n; k++) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (size_t r = 0; r < n; r++) {
            out.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m) {
    return hermitian_eig(m).eigenvalues;
}

double min_eigenvalue(const ComplexMatrix &m) {
    return hermitian_eig(m).eigenvalues.front();
}

double trace_norm(const ComplexMatrix &m) {
    double acc = 0;
    for (double l : hermitian_eigenvalues(m)) {
        acc += std::abs(l);
    }
    return acc;
}

RealMatrix pseudoinverse(const RealMatrix &a, double relative_tolerance) {
    if (a.empty()) {
        throw StructuralError("pseudoinverse of an empty matrix");
    }
    if (a.rows() < a.cols()) {
        return transpose(pseudoinverse(transpose(a), relative_tolerance));
    }
    GramSpectrum spec = gram_spectrum(gram(a));
    size_t n = a.cols();
    // (A^T A)^+ restricted to the retained singular subspace.
    RealMatrix gram_inv(n, n);
    for (size_t k = 0; k < n; k++) {
        double sigma = spec.sigma[k];
        if (sigma == 0 || sigma <= relative_tolerance * spec.sigma_max) {
            continue;
        }
        double w = 1 / (sigma * sigma);
        for (size_t i = 0; i < n; i++) {
            Complex vi = spec.eig.eigenvectors(i, k);
            for (size_t j = 0; j < n; j++) {
                gram_inv(i, j) += w * (vi * std::conj(spec.eig.eigenvectors(j, k))).real();
            }
        }
    }
    return gram_inv * transpose(a);
}

std::vector<double> singular_values(const RealMatrix &a) {
    if (a.empty()) {
        return {};
    }
    RealMatrix g = a.rows() >= a.cols() ? gram(a) : gram(transpose(a));
    std::vector<double> sigma = gram_spectrum(g).sigma;
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    return sigma;
}

size_t numerical_rank(const RealMatrix &a, double relative_tolerance) {
    std::vector<double> sigma = singular_values(a);
    if (sigma.empty() || sigma.front() == 0) {
        return 0;
    }
    return static_cast<size_t>(std::count_if(sigma.begin(), sigma.end(), [&](double s) {
        return s > relative_tolerance * sigma.front();
    }));
}

bool cholesky(ComplexMatrix &m) {
    size_t n = m.rows();
    for (size_t j = 0; j < n; j++) {
        double diag = m(j, j).real();
        for (size_t k = 0; k < j; k++) {
            diag -= std::norm(m(j, k));
        }
        if (!(diag > 0)) {
            return false;
        }
        double ljj = std::sqrt(diag);
        m(j, j) = ljj;
        for (size_t i = j + 1; i < n; i++) {
            Complex acc = m(i, j);
            for (size_t k = 0; k < j; k++) {
                acc -= m(i, k) * std::conj(m(j, k));
            }
            m(i, j) = acc / ljj;
        }
        for (size_t c = j + 1; c < n; c++) {
            m(j, c) = 0;
        }
    }
    return true;
}

bool cholesky(RealMatrix &m) {
    size_t n = m.rows();
    for (size_t j = 0; j < n; j++) {
        double diag = m(j, j);
        for (size_t k = 0; k < j; k++) {
            diag -= m(j, k) * m(j, k);
        }
        if (!(diag > 0)) {
            return false;
        }
        double ljj = std::sqrt(diag);
        m(j, j) = ljj;
        for (size_t i = j + 1; i < n; i++) {
            double acc = m(i, j);
            for (size_t k = 0; k < j; k++) {
                acc -= m(i, k) * m(j, k);
            }
            m(i, j) = acc / ljj;
        }
        for (size_t c = j + 1; c < n; c++) {
            m(j, c) = 0;
        }
    }
    return true;
}

std::vector<double> cholesky_solve(const RealMatrix &lower, std::vector<double> b) {
    size_t n = lower.rows();
    for (size_t i = 0; i < n; i++) {
        double acc = b[i];
        for (size_t k = 0; k < i; k++) {
            acc -= lower(i, k) * b[k];
        }
        b[i] = acc / lower(i, i);
    }
    for (size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (size_t k = i + 1; k < n; k++) {
            acc -= lower(k, i) * b[k];
        }
        b[i] = acc / lower(i, i);
    }
    return b;
}

}  // namespace ditomo
