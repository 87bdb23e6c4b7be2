// Copyright 2026 The geig Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file reference.hpp
 * Exact dense generalized eigensolver used as the oracle for the
 * variational and iterative solvers.
 *
 * A v = lambda B v is reduced with the Cholesky factor B = L L^H to the
 * Hermitian problem (L^-1 A L^-H) y = lambda y, solved by cyclic complex
 * Jacobi rotations, and mapped back with v = L^-H y. The eigenvectors come
 * out B-orthonormal.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "dense.hpp"
#include "pencil.hpp"

namespace geig {

class NotPositiveDefinite : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class NoConvergence : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Lower-triangular L with L L^H = b. Fails on the first non-positive pivot.
inline Matrix cholesky(const Matrix &b) {
    if (!b.square()) {
        throw std::invalid_argument("cholesky: matrix must be square");
    }
    if (b.hermiticity_error() > 1e-10 * std::max(1.0, b.max_abs())) {
        throw std::invalid_argument("cholesky: matrix is not Hermitian");
    }
    const std::size_t n = b.rows();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = b(j, j).real();
        for (std::size_t k = 0; k < j; ++k) {
            pivot -= std::norm(l(j, k));
        }
        if (!(pivot > 0.0) || !std::isfinite(pivot)) {
            throw NotPositiveDefinite("cholesky: non-positive pivot " +
                                      std::to_string(pivot) + " at column " +
                                      std::to_string(j));
        }
        const double ljj = std::sqrt(pivot);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = b(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                s -= l(i, k) * std::conj(l(j, k));
            }
            l(i, j) = s / ljj;
        }
    }
    return l;
}

/// Solves L X = rhs for lower-triangular L.
inline Matrix solve_lower(const Matrix &l, const Matrix &rhs) {
    const std::size_t n = l.rows();
    Matrix x(n, rhs.cols());
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = rhs(i, c);
            for (std::size_t k = 0; k < i; ++k) {
                s -= l(i, k) * x(k, c);
            }
            x(i, c) = s / l(i, i);
        }
    }
    return x;
}

/// Solves L^H X = rhs for lower-triangular L.
inline Matrix solve_lower_adjoint(const Matrix &l, const Matrix &rhs) {
    const std::size_t n = l.rows();
    Matrix x(n, rhs.cols());
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
        for (std::size_t ii = n; ii-- > 0;) {
            cplx s = rhs(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k) {
                s -= std::conj(l(k, ii)) * x(k, c);
            }
            x(ii, c) = s / std::conj(l(ii, ii));
        }
    }
    return x;
}

struct HermitianEigen {
    std::vector<double> values; ///< ascending
    Matrix vectors;             ///< orthonormal columns
    int sweeps = 0;
};

struct JacobiOptions {
    double off_tolerance = 1e-12; ///< relative to max(1, ||M||_F)
    int max_sweeps = 30;
};

/// Cyclic Jacobi eigensolver for a dense Hermitian matrix.
inline HermitianEigen hermitian_eig(const Matrix &m, JacobiOptions opts = {}) {
    if (!m.square()) {
        throw std::invalid_argument("hermitian_eig: matrix must be square");
    }
    if (m.hermiticity_error() > 1e-10 * std::max(1.0, m.max_abs())) {
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian (error " +
                                    std::to_string(m.hermiticity_error()) + ")");
    }
    const std::size_t n = m.rows();
    Matrix a = m;
    Matrix v = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
    }

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                s += 2 * std::norm(a(i, j));
            }
        }
        return std::sqrt(s);
    };
    const double threshold = opts.off_tolerance * std::max(1.0, a.frobenius_norm());

    int sweep = 0;
    while (off_norm() > threshold) {
        if (sweep == opts.max_sweeps) {
            throw NoConvergence("hermitian_eig: no convergence after " +
                                std::to_string(opts.max_sweeps) + " sweeps");
        }
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r == 0.0) {
                    continue;
                }
                const cplx phase = a(p, q) / r; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2 * r);
                double t = 0.0;
                if (std::abs(theta) > 1e150) {
                    t = 1.0 / (2 * theta);
                } else {
                    t = (theta >= 0 ? 1.0 : -1.0) /
                        (std::abs(theta) + std::sqrt(theta * theta + 1));
                }
                const double c = 1.0 / std::sqrt(t * t + 1);
                const double s = t * c;
                // V = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) plane.
                const cplx vpp = c;
                const cplx vpq = s;
                const cplx vqp = -s * std::conj(phase);
                const cplx vqq = c * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * vpp + akq * vqp;
                    a(k, q) = akp * vpq + akq * vqq;
                    const cplx ekp = v(k, p);
                    const cplx ekq = v(k, q);
                    v(k, p) = ekp * vpp + ekq * vqp;
                    v(k, q) = ekp * vpq + ekq * vqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
                    a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });
    HermitianEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    out.sweeps = sweep;
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, c) = v(r, order[c]);
        }
    }
    return out;
}

struct EigenDecomposition {
    std::vector<double> values; ///< ascending generalized eigenvalues
    Matrix vectors;             ///< B-orthonormal columns
    double eta1 = 0.0;          ///< smallest eigenvalue of B
};

/// Solves A v = lambda B v for Hermitian A and positive definite B.
inline EigenDecomposition generalized_eig(const Matrix &a, const Matrix &b) {
    if (!a.square() || !b.square() || a.rows() != b.rows()) {
        throw std::invalid_argument("generalized_eig: A and B must be square and equal size");
    }
    const Matrix l = cholesky(b);
    // C = L^-1 A L^-H = L^-1 (L^-1 A)^H for Hermitian A.
    const Matrix x = solve_lower(l, a);
    Matrix c = solve_lower(l, x.adjoint());
    const Matrix ch = c.adjoint();
    c = (c + ch) * cplx{0.5};
    const HermitianEigen reduced = hermitian_eig(c);

    EigenDecomposition out;
    out.values = reduced.values;
    out.vectors = solve_lower_adjoint(l, reduced.vectors);
    out.eta1 = hermitian_eig(b).values.front();
    return out;
}

inline EigenDecomposition generalized_eig(const Pencil &pencil,
                                          std::size_t cap = kDefaultDenseCap) {
    return generalized_eig(dense_matrix(pencil.a, cap), dense_matrix(pencil.b, cap));
}

/// Collapses an ascending list into distinct values; neighbours closer
/// than `gap` are merged (the first representative is kept).
inline std::vector<double> distinct_eigenvalues(const std::vector<double> &ascending,
                                                double gap = 1e-6) {
    std::vector<double> out;
    for (double v : ascending) {
        if (out.empty() || v - out.back() > gap) {
            out.push_back(v);
        }
    }
    return out;
}

/// max_j ||A v_j - lambda_j B v_j||_inf.
inline double pair_residual(const Matrix &a, const Matrix &b, const EigenDecomposition &e) {
    double worst = 0.0;
    for (std::size_t j = 0; j < e.values.size(); ++j) {
        const auto v = e.vectors.column(j);
        const auto av = a * std::span<const cplx>(v);
        const auto bv = b * std::span<const cplx>(v);
        for (std::size_t i = 0; i < v.size(); ++i) {
            worst = std::max(worst, std::abs(av[i] - e.values[j] * bv[i]));
        }
    }
    return worst;
}

/// max_{i,j} |<v_i|B|v_j> - delta_ij|.
inline double b_orthonormality_error(const Matrix &b, const EigenDecomposition &e) {
    const Matrix gram = e.vectors.adjoint() * b * e.vectors;
    return max_abs_diff(gram, Matrix::identity(gram.rows()));
}

} // namespace geig
