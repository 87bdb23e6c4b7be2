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
// Shared generators and independent dense oracles for the test suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "geig/geig.hpp"

namespace geig::testing {

using Gen = std::mt19937_64;

inline double uniform(Gen &g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline StateVector random_state(std::size_t n, Gen &g) {
    std::normal_distribution<double> d;
    std::vector<cplx> amps(std::size_t{1} << n);
    for (auto &a : amps) {
        a = {d(g), d(g)};
    }
    return normalize(StateVector(n, std::move(amps), false));
}

inline std::string random_ops(std::size_t n, Gen &g) {
    static const char kOps[] = "IXYZ";
    std::string s;
    for (std::size_t q = 0; q < n; ++q) {
        s += kOps[std::uniform_int_distribution<int>(0, 3)(g)];
    }
    return s;
}

/// Up to `terms` distinct strings with coefficients in [-1, 1], excluding identity.
inline PauliSum random_sum(std::size_t n, std::size_t terms, Gen &g) {
    std::set<std::string> seen{std::string(n, 'I')};
    std::vector<PauliTerm> out;
    for (std::size_t k = 0; k < 8 * terms && out.size() < terms; ++k) {
        const std::string ops = random_ops(n, g);
        if (seen.insert(ops).second) {
            out.push_back({uniform(g, -1.0, 1.0), PauliString::parse(ops)});
        }
    }
    return {n, std::move(out)};
}

/// As random_sum, restricted to strings with an even number of Y (a real matrix).
inline PauliSum random_real_sum(std::size_t n, std::size_t terms, Gen &g) {
    std::set<std::string> seen{std::string(n, 'I')};
    std::vector<PauliTerm> out;
    for (std::size_t k = 0; k < 16 * terms && out.size() < terms; ++k) {
        const std::string ops = random_ops(n, g);
        if (std::count(ops.begin(), ops.end(), 'Y') % 2 == 0 && seen.insert(ops).second) {
            out.push_back({uniform(g, -1.0, 1.0), PauliString::parse(ops)});
        }
    }
    return {n, std::move(out)};
}

inline PauliSum with_identity(const PauliSum &s, double c) {
    std::vector<PauliTerm> terms(s.begin(), s.end());
    terms.push_back({c, PauliString(s.num_qubits())});
    return {s.num_qubits(), std::move(terms)};
}

/// A random Pauli pencil whose B is diagonally dominant in the Pauli basis.
inline Pencil random_pencil(std::size_t n, Gen &g) {
    const PauliSum a = with_identity(random_sum(n, 2 + n * 2, g), uniform(g, -1.0, 1.0));
    const PauliSum b_off = random_sum(n, 1 + n, g);
    return {a, with_identity(b_off, b_off.l1_norm() + uniform(g, 0.2, 1.0))};
}

// Dense Kronecker oracles, built without the bitmask machinery.

inline Matrix pauli_1q(char op) {
    Matrix m(2, 2);
    switch (op) {
    case 'I':
        m(0, 0) = 1;
        m(1, 1) = 1;
        break;
    case 'X':
        m(0, 1) = 1;
        m(1, 0) = 1;
        break;
    case 'Y':
        m(0, 1) = cplx(0, -1);
        m(1, 0) = cplx(0, 1);
        break;
    default:
        m(0, 0) = 1;
        m(1, 1) = -1;
    }
    return m;
}

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

inline Matrix kron_ops(const std::string &ops) {
    Matrix m = Matrix::identity(1);
    for (char c : ops) {
        m = kron(m, pauli_1q(c));
    }
    return m;
}

inline Matrix kron_sum(const PauliSum &s) {
    const std::size_t dim = std::size_t{1} << s.num_qubits();
    Matrix m(dim, dim);
    for (const auto &t : s) {
        m += kron_ops(t.string.to_string()) * cplx(t.coeff);
    }
    return m;
}

/// Single-qubit gate g on qubit q of n, qubit 0 leftmost.
inline Matrix embed(const Matrix &g, std::size_t q, std::size_t n) {
    Matrix m = Matrix::identity(1);
    for (std::size_t k = 0; k < n; ++k) {
        m = kron(m, k == q ? g : Matrix::identity(2));
    }
    return m;
}

inline Matrix dense_ry(std::size_t q, double angle, std::size_t n) {
    Matrix r(2, 2);
    r(0, 0) = std::cos(angle / 2);
    r(0, 1) = -std::sin(angle / 2);
    r(1, 0) = std::sin(angle / 2);
    r(1, 1) = std::cos(angle / 2);
    return embed(r, q, n);
}

/// CNOT = |0><0| (x) I + |1><1| (x) X on the control and target slots.
inline Matrix dense_cnot(std::size_t c, std::size_t t, std::size_t n) {
    Matrix p0(2, 2);
    p0(0, 0) = 1;
    Matrix p1(2, 2);
    p1(1, 1) = 1;
    Matrix a = Matrix::identity(1);
    Matrix b = Matrix::identity(1);
    for (std::size_t k = 0; k < n; ++k) {
        a = kron(a, k == c ? p0 : Matrix::identity(2));
        b = kron(b, k == c ? p1 : (k == t ? pauli_1q('X') : Matrix::identity(2)));
    }
    return a + b;
}

inline std::vector<cplx> amps(const StateVector &v) {
    return {v.amplitudes().begin(), v.amplitudes().end()};
}

inline double vec_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        m = std::max(m, std::abs(a[k] - b[k]));
    }
    return m;
}

inline Matrix random_hermitian(std::size_t dim, Gen &g) {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = uniform(g, -1, 1);
        for (std::size_t j = i + 1; j < dim; ++j) {
            m(i, j) = cplx(uniform(g, -1, 1), uniform(g, -1, 1));
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

inline Matrix random_pd(std::size_t dim, Gen &g) {
    Matrix m(dim, dim);
    for (auto &x : m.data()) {
        x = cplx(uniform(g, -1, 1), uniform(g, -1, 1));
    }
    Matrix b = m * m.adjoint();
    for (std::size_t i = 0; i < dim; ++i) {
        b(i, i) += 0.5;
    }
    return b;
}

/// Central differences of f over every parameter.
template <class F>
std::vector<double> finite_difference(const F &f, const AnsatzParams &p, double h = 1e-5) {
    std::vector<double> out(p.size());
    for (std::size_t t = 0; t < p.layers(); ++t) {
        for (std::size_t q = 0; q < p.num_qubits(); ++q) {
            out[p.index(t, q)] = (f(shift(p, t, q, h)) - f(shift(p, t, q, -h))) / (2 * h);
        }
    }
    return out;
}

inline double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        m = std::max(m, std::abs(a[k] - b[k]));
    }
    return m;
}

/// 1 I + 0.4 ZI + 0.4 IZ + 0.2 XX and 1 I + 0.3 ZI + 0.4 IZ + 0.2 ZZ.
inline Pencil demo_pencil() { return two_qubit_demo_pencil(); }

/// Oracle eigenvalues of the demo pencil.
inline constexpr double kDemoEigs[4] = {0.33161944, 0.97203709, 1.01574899, 1.56764545};

} // namespace geig::testing
