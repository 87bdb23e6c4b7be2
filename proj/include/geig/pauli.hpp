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
 * @file pauli.hpp
 * Pauli strings and real-weighted Pauli sums: text form, dense
 * reconstruction, sparse action on statevectors and Hilbert-Schmidt
 * decomposition of Hermitian matrices.
 *
 * A string is stored as an (x, z) bitmask pair over basis-index bits, so
 * that P|k> = i^{|x & z|} (-1)^{|k & z|} |k ^ x>. Text form "ZX" puts Z on
 * qubit 0 (leftmost tensor factor) and X on qubit 1.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dense.hpp"
#include "statevector.hpp"

namespace geig {

/// Default qubit cap for dense reconstruction (2^12 x 2^12).
inline constexpr std::size_t kDefaultDenseCap = 12;

/// Default threshold below which decomposition coefficients are dropped.
inline constexpr double kDefaultDecomposeTol = 1e-10;

class PauliString {
  public:
    PauliString() = default;

    /// Identity on n qubits.
    explicit PauliString(std::size_t n) : n_(n) { check_n(); }

    PauliString(std::size_t n, std::uint64_t x_mask, std::uint64_t z_mask)
        : n_(n), x_(x_mask), z_(z_mask) {
        check_n();
        const std::uint64_t full = n_ == 64 ? ~std::uint64_t{0}
                                            : (std::uint64_t{1} << n_) - 1;
        if ((x_ & ~full) != 0 || (z_ & ~full) != 0) {
            throw std::invalid_argument("PauliString: mask has bits beyond n");
        }
    }

    /// Parses text over {I, X, Y, Z}; character q acts on qubit q.
    static PauliString parse(std::string_view text) {
        if (text.empty()) {
            throw std::invalid_argument("PauliString: empty operator string");
        }
        const std::size_t n = text.size();
        std::uint64_t x = 0;
        std::uint64_t z = 0;
        for (std::size_t q = 0; q < n; ++q) {
            const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
            switch (text[q]) {
            case 'I':
                break;
            case 'X':
                x |= bit;
                break;
            case 'Y':
                x |= bit;
                z |= bit;
                break;
            case 'Z':
                z |= bit;
                break;
            default:
                throw std::invalid_argument(
                    std::string("PauliString: invalid character '") + text[q] +
                    "' at position " + std::to_string(q) + " in \"" +
                    std::string(text) + "\"");
            }
        }
        return {n, x, z};
    }

    [[nodiscard]] std::size_t num_qubits() const { return n_; }
    [[nodiscard]] std::uint64_t x_mask() const { return x_; }
    [[nodiscard]] std::uint64_t z_mask() const { return z_; }
    [[nodiscard]] bool is_identity() const { return x_ == 0 && z_ == 0; }

    /// Pauli letter on qubit q.
    [[nodiscard]] char op(std::size_t q) const {
        const std::uint64_t bit = std::uint64_t{1} << (n_ - 1 - q);
        const bool xb = (x_ & bit) != 0;
        const bool zb = (z_ & bit) != 0;
        if (xb && zb) {
            return 'Y';
        }
        if (xb) {
            return 'X';
        }
        return zb ? 'Z' : 'I';
    }

    [[nodiscard]] std::string to_string() const {
        std::string s(n_, 'I');
        for (std::size_t q = 0; q < n_; ++q) {
            s[q] = op(q);
        }
        return s;
    }

    /// Phase picked up by basis state |k>; the image is |k ^ x_mask()>.
    [[nodiscard]] cplx phase(std::uint64_t k) const {
        static constexpr cplx kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const int y_count = std::popcount(x_ & z_);
        const int z_parity = std::popcount(k & z_) & 1;
        const cplx p = kIPowers[y_count & 3];
        return z_parity != 0 ? -p : p;
    }

    friend auto operator<=>(const PauliString &, const PauliString &) = default;

  private:
    void check_n() const {
        if (n_ == 0 || n_ > 63) {
            throw std::invalid_argument("PauliString: qubit count must be in [1, 63]");
        }
    }

    std::size_t n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
};

struct PauliTerm {
    double coeff = 0.0;
    PauliString string;

    friend bool operator==(const PauliTerm &, const PauliTerm &) = default;
};

/// Hermitian operator sum_k coeff_k P_k with real coefficients.
///
/// Terms are merged by string and kept in canonical (x, z) order, so two
/// sums describing the same operator with the same terms compare equal.
class PauliSum {
  public:
    PauliSum() = default;

    PauliSum(std::size_t n, std::vector<PauliTerm> terms) : n_(n) {
        if (n_ == 0) {
            throw std::invalid_argument("PauliSum: qubit count must be >= 1");
        }
        std::map<std::pair<std::uint64_t, std::uint64_t>, PauliTerm> merged;
        for (auto &t : terms) {
            if (t.string.num_qubits() != n_) {
                throw std::invalid_argument(
                    "PauliSum: term \"" + t.string.to_string() + "\" has " +
                    std::to_string(t.string.num_qubits()) + " qubits, expected " +
                    std::to_string(n_));
            }
            if (!std::isfinite(t.coeff)) {
                throw std::invalid_argument("PauliSum: non-finite coefficient");
            }
            const auto key = std::make_pair(t.string.x_mask(), t.string.z_mask());
            auto [it, inserted] = merged.try_emplace(key, t);
            if (!inserted) {
                it->second.coeff += t.coeff;
            }
        }
        terms_.reserve(merged.size());
        for (auto &[key, term] : merged) {
            terms_.push_back(term);
        }
    }

    /// Convenience: {{1.0, "II"}, {0.4, "ZI"}}.
    static PauliSum from_text(
        std::initializer_list<std::pair<double, std::string_view>> items) {
        std::vector<PauliTerm> terms;
        std::size_t n = 0;
        for (const auto &[c, s] : items) {
            terms.push_back({c, PauliString::parse(s)});
            n = s.size();
        }
        return {n, std::move(terms)};
    }

    static PauliSum identity(std::size_t n, double coeff = 1.0) {
        return {n, {{coeff, PauliString(n)}}};
    }

    [[nodiscard]] std::size_t num_qubits() const { return n_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const { return terms_; }
    [[nodiscard]] auto begin() const { return terms_.begin(); }
    [[nodiscard]] auto end() const { return terms_.end(); }

    /// Coefficient of `s`, zero when absent.
    [[nodiscard]] double coeff_of(const PauliString &s) const {
        for (const auto &t : terms_) {
            if (t.string == s) {
                return t.coeff;
            }
        }
        return 0.0;
    }

    /// Sum of |coeff|.
    [[nodiscard]] double l1_norm() const {
        double s = 0.0;
        for (const auto &t : terms_) {
            s += std::abs(t.coeff);
        }
        return s;
    }

    friend bool operator==(const PauliSum &, const PauliSum &) = default;

  private:
    std::size_t n_ = 0;
    std::vector<PauliTerm> terms_;
};

namespace detail {
inline void require_dense_cap(std::size_t n, std::size_t cap) {
    if (n > cap) {
        throw std::length_error("dense_matrix: " + std::to_string(n) +
                                " qubits exceeds dense cap of " +
                                std::to_string(cap));
    }
}
} // namespace detail

inline Matrix dense_matrix(const PauliString &p, std::size_t cap = kDefaultDenseCap) {
    detail::require_dense_cap(p.num_qubits(), cap);
    const std::size_t dim = std::size_t{1} << p.num_qubits();
    Matrix m(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        m(k ^ p.x_mask(), k) = p.phase(k);
    }
    return m;
}

inline Matrix dense_matrix(const PauliSum &s, std::size_t cap = kDefaultDenseCap) {
    detail::require_dense_cap(s.num_qubits(), cap);
    const std::size_t dim = std::size_t{1} << s.num_qubits();
    Matrix m(dim, dim);
    for (const auto &t : s) {
        for (std::size_t k = 0; k < dim; ++k) {
            m(k ^ t.string.x_mask(), k) += t.coeff * t.string.phase(k);
        }
    }
    return m;
}

namespace detail {
inline void require_matching(std::size_t op_n, const StateVector &v, const char *what) {
    if (op_n != v.num_qubits()) {
        throw std::invalid_argument(std::string(what) + ": operator acts on " +
                                    std::to_string(op_n) + " qubits, state has " +
                                    std::to_string(v.num_qubits()));
    }
}
} // namespace detail

inline StateVector apply_string(const PauliString &p, const StateVector &v) {
    detail::require_matching(p.num_qubits(), v, "apply_string");
    std::vector<cplx> out(v.dim());
    for (std::size_t k = 0; k < v.dim(); ++k) {
        out[k ^ p.x_mask()] = p.phase(k) * v[k];
    }
    return {v.num_qubits(), std::move(out), v.normalized()};
}

/// sum_k c_k P_k v. The result is flagged unnormalized.
inline StateVector apply_sum(const PauliSum &s, const StateVector &v) {
    detail::require_matching(s.num_qubits(), v, "apply_sum");
    std::vector<cplx> out(v.dim());
    for (const auto &t : s) {
        for (std::size_t k = 0; k < v.dim(); ++k) {
            out[k ^ t.string.x_mask()] += t.coeff * t.string.phase(k) * v[k];
        }
    }
    return {v.num_qubits(), std::move(out), false};
}

/// <u|P|w> without materialising P|w>.
inline cplx matrix_element(const StateVector &u, const PauliString &p,
                           const StateVector &w) {
    detail::require_same_size(u, w, "matrix_element");
    detail::require_matching(p.num_qubits(), w, "matrix_element");
    cplx acc{};
    for (std::size_t k = 0; k < w.dim(); ++k) {
        acc += std::conj(u[k ^ p.x_mask()]) * p.phase(k) * w[k];
    }
    return acc;
}

/// <u|S|w>.
inline cplx matrix_element(const StateVector &u, const PauliSum &s,
                           const StateVector &w) {
    cplx acc{};
    for (const auto &t : s) {
        acc += t.coeff * matrix_element(u, t.string, w);
    }
    return acc;
}

/// Re <v|S|v> for a normalized v.
inline double expectation(const PauliSum &s, const StateVector &v) {
    detail::require_matching(s.num_qubits(), v, "expectation");
    if (!v.normalized()) {
        throw std::invalid_argument("expectation: state must be normalized");
    }
    const cplx e = matrix_element(v, s, v);
    if (std::abs(e.imag()) >= 1e-10) {
        throw std::logic_error("expectation: imaginary part " +
                               std::to_string(e.imag()) + " of a Hermitian expectation");
    }
    return e.real();
}

/// Tr[P m] / 2^n for every Pauli string, indexed by (x_mask << n) | z_mask.
inline std::vector<cplx> pauli_coefficients(const Matrix &m) {
    if (!m.square() || !is_power_of_two(m.rows()) || m.rows() < 2) {
        throw std::invalid_argument(
            "decompose: matrix must be square with power-of-two dimension >= 2");
    }
    const std::size_t dim = m.rows();
    const std::size_t n = log2_exact(dim);
    std::vector<cplx> coeffs(dim * dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        for (std::uint64_t z = 0; z < dim; ++z) {
            const PauliString p(n, x, z);
            cplx tr{};
            for (std::size_t k = 0; k < dim; ++k) {
                tr += p.phase(k) * m(k, k ^ x);
            }
            coeffs[(x << n) | z] = tr / static_cast<double>(dim);
        }
    }
    return coeffs;
}

/// Hilbert-Schmidt projection of a Hermitian matrix onto Pauli strings.
/// Terms with |coeff| <= tol are dropped.
inline PauliSum decompose(const Matrix &m, double tol = kDefaultDecomposeTol) {
    if (!m.square() || !is_power_of_two(m.rows()) || m.rows() < 2) {
        throw std::invalid_argument(
            "decompose: matrix must be square with power-of-two dimension >= 2");
    }
    const double herm = m.hermiticity_error();
    if (herm > std::max(tol, 1e-12)) {
        throw std::invalid_argument("decompose: matrix is not Hermitian (error " +
                                    std::to_string(herm) + ")");
    }
    const std::size_t dim = m.rows();
    const std::size_t n = log2_exact(dim);
    const auto coeffs = pauli_coefficients(m);
    std::vector<PauliTerm> terms;
    for (std::uint64_t x = 0; x < dim; ++x) {
        for (std::uint64_t z = 0; z < dim; ++z) {
            const cplx c = coeffs[(x << n) | z];
            if (std::abs(c.imag()) >= 1e-10) {
                throw std::logic_error("decompose: coefficient with imaginary part " +
                                       std::to_string(c.imag()));
            }
            if (std::abs(c.real()) > tol) {
                terms.push_back({c.real(), PauliString(n, x, z)});
            }
        }
    }
    if (terms.empty()) {
        // The zero matrix still needs a well-formed sum.
        terms.push_back({0.0, PauliString(n)});
    }
    return {n, std::move(terms)};
}

} // namespace geig
