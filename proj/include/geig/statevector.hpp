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
 * @file statevector.hpp
 * Dense n-qubit statevector with the R_y / CNOT gate set and the usual
 * sesquilinear helpers.
 *
 * Basis ordering: qubit 0 is the most significant bit of the basis index,
 * so the amplitude vector of |q0 q1 ... q_{n-1}> matches the textbook
 * Kronecker product with qubit 0 as the leftmost factor.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dense.hpp"

namespace geig {

/// Upper bound on qubits for anything that allocates 2^n amplitudes.
inline constexpr std::size_t kMaxQubits = 30;

/// Tolerance used to validate the normalized flag.
inline constexpr double kNormTolerance = 1e-10;

class StateVector {
  public:
    StateVector() = default;

    /// Wraps amplitudes; `normalized` asserts unit norm and is validated.
    StateVector(std::size_t n_qubits, std::vector<cplx> amps, bool normalized)
        : n_(n_qubits), amps_(std::move(amps)), normalized_(normalized) {
        if (n_ == 0 || n_ > kMaxQubits) {
            throw std::invalid_argument("StateVector: qubit count must be in [1, " +
                                        std::to_string(kMaxQubits) + "]");
        }
        if (amps_.size() != (std::size_t{1} << n_)) {
            throw std::invalid_argument("StateVector: expected " +
                                        std::to_string(std::size_t{1} << n_) +
                                        " amplitudes, got " +
                                        std::to_string(amps_.size()));
        }
        if (normalized_ && std::abs(norm_sq() - 1.0) > kNormTolerance) {
            throw std::invalid_argument(
                "StateVector: flagged normalized but squared norm is " +
                std::to_string(norm_sq()));
        }
    }

    /// Infers the qubit count from the amplitude count.
    static StateVector from_amplitudes(std::vector<cplx> amps, bool normalized) {
        if (!is_power_of_two(amps.size()) || amps.size() < 2) {
            throw std::invalid_argument(
                "StateVector: amplitude count must be a power of two >= 2");
        }
        const std::size_t n = log2_exact(amps.size());
        return {n, std::move(amps), normalized};
    }

    [[nodiscard]] std::size_t num_qubits() const { return n_; }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] bool normalized() const { return normalized_; }
    [[nodiscard]] std::span<const cplx> amplitudes() const { return amps_; }
    [[nodiscard]] const cplx &operator[](std::size_t k) const { return amps_[k]; }

    [[nodiscard]] double norm_sq() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    /// Basis-index bit holding qubit q.
    [[nodiscard]] std::size_t bit_of(std::size_t q) const {
        return std::size_t{1} << (n_ - 1 - q);
    }

  private:
    std::size_t n_ = 0;
    std::vector<cplx> amps_;
    bool normalized_ = false;
};

namespace detail {
inline void require_same_size(const StateVector &u, const StateVector &v,
                              const char *what) {
    if (u.num_qubits() != v.num_qubits()) {
        throw std::invalid_argument(std::string(what) + ": qubit count mismatch (" +
                                    std::to_string(u.num_qubits()) + " vs " +
                                    std::to_string(v.num_qubits()) + ")");
    }
}

inline void require_qubit(const StateVector &v, std::size_t q, const char *what) {
    if (q >= v.num_qubits()) {
        throw std::out_of_range(std::string(what) + ": qubit index " +
                                std::to_string(q) + " out of range for " +
                                std::to_string(v.num_qubits()) + " qubits");
    }
}
} // namespace detail

/// |0...0> on n qubits.
inline StateVector zero_state(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("zero_state: n must be >= 1");
    }
    if (n > kMaxQubits) {
        throw std::invalid_argument("zero_state: too many qubits");
    }
    std::vector<cplx> amps(std::size_t{1} << n);
    amps[0] = 1.0;
    return {n, std::move(amps), true};
}

/// Computational basis state |index>.
inline StateVector basis_state(std::size_t n, std::size_t index) {
    if (n == 0 || n > kMaxQubits || index >= (std::size_t{1} << n)) {
        throw std::invalid_argument("basis_state: invalid arguments");
    }
    std::vector<cplx> amps(std::size_t{1} << n);
    amps[index] = 1.0;
    return {n, std::move(amps), true};
}

/// R_y(angle) = exp(-i angle Y / 2) = [[cos, -sin], [sin, cos]] of angle/2.
inline StateVector apply_ry(std::size_t q, double angle, const StateVector &v) {
    detail::require_qubit(v, q, "apply_ry");
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    const std::size_t bit = v.bit_of(q);
    std::vector<cplx> out(v.amplitudes().begin(), v.amplitudes().end());
    for (std::size_t k = 0; k < out.size(); ++k) {
        if ((k & bit) != 0) {
            continue;
        }
        const cplx a0 = v[k];
        const cplx a1 = v[k | bit];
        out[k] = c * a0 - s * a1;
        out[k | bit] = s * a0 + c * a1;
    }
    return {v.num_qubits(), std::move(out), v.normalized()};
}

inline StateVector apply_cnot(std::size_t control, std::size_t target,
                              const StateVector &v) {
    detail::require_qubit(v, control, "apply_cnot");
    detail::require_qubit(v, target, "apply_cnot");
    if (control == target) {
        throw std::invalid_argument("apply_cnot: control equals target");
    }
    const std::size_t cbit = v.bit_of(control);
    const std::size_t tbit = v.bit_of(target);
    std::vector<cplx> out(v.amplitudes().begin(), v.amplitudes().end());
    for (std::size_t k = 0; k < out.size(); ++k) {
        if ((k & cbit) != 0 && (k & tbit) == 0) {
            std::swap(out[k], out[k | tbit]);
        }
    }
    return {v.num_qubits(), std::move(out), v.normalized()};
}

/// <u|v>, conjugate-linear in u.
inline cplx inner(const StateVector &u, const StateVector &v) {
    detail::require_same_size(u, v, "inner");
    cplx acc{};
    for (std::size_t k = 0; k < u.dim(); ++k) {
        acc += std::conj(u[k]) * v[k];
    }
    return acc;
}

inline double norm(const StateVector &v) { return std::sqrt(v.norm_sq()); }

/// u + c v, flagged unnormalized.
inline StateVector add_scaled(const StateVector &u, cplx c, const StateVector &v) {
    detail::require_same_size(u, v, "add_scaled");
    std::vector<cplx> out(u.dim());
    for (std::size_t k = 0; k < u.dim(); ++k) {
        out[k] = u[k] + c * v[k];
    }
    return {u.num_qubits(), std::move(out), false};
}

inline StateVector scale(const StateVector &v, cplx c) {
    std::vector<cplx> out(v.dim());
    for (std::size_t k = 0; k < v.dim(); ++k) {
        out[k] = c * v[k];
    }
    return {v.num_qubits(), std::move(out), false};
}

inline StateVector normalize(const StateVector &v) {
    const double nrm = norm(v);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) {
        throw std::domain_error("normalize: state has zero or non-finite norm");
    }
    std::vector<cplx> out(v.dim());
    for (std::size_t k = 0; k < v.dim(); ++k) {
        out[k] = v[k] / nrm;
    }
    return {v.num_qubits(), std::move(out), true};
}

/// |<u|v>|^2. Lies in [0, 1] for normalized inputs.
inline double fidelity(const StateVector &u, const StateVector &v) {
    return std::norm(inner(u, v));
}

/// Euclidean distance between amplitude vectors.
inline double distance(const StateVector &u, const StateVector &v) {
    detail::require_same_size(u, v, "distance");
    double s = 0.0;
    for (std::size_t k = 0; k < u.dim(); ++k) {
        s += std::norm(u[k] - v[k]);
    }
    return std::sqrt(s);
}

} // namespace geig
