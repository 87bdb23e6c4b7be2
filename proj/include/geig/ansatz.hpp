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
 * @file ansatz.hpp
 * Layered hardware-efficient circuit
 *
 *     U(theta) = U_ent R^L(theta_L) ... U_ent R^1(theta_1),
 *
 * where R^t applies R_y(theta_i^t) to every qubit i and U_ent is a fixed
 * sequence of CNOTs. Because R_y(a + pi) = -iY R_y(a), the derivative with
 * respect to any single angle is exactly half the circuit with that angle
 * shifted by pi.
 */
#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "statevector.hpp"

namespace geig {

/// Ordered list of (control, target) CNOT pairs applied after each layer.
class Entangler {
  public:
    Entangler() = default;
    explicit Entangler(std::vector<std::pair<std::size_t, std::size_t>> pairs)
        : pairs_(std::move(pairs)) {}

    /// CNOT(0,1), CNOT(1,2), ..., CNOT(n-2,n-1).
    static Entangler linear(std::size_t n) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t q = 0; q + 1 < n; ++q) {
            pairs.emplace_back(q, q + 1);
        }
        return Entangler(std::move(pairs));
    }

    /// Linear chain closed by CNOT(n-1, 0) when n >= 3.
    static Entangler ring(std::size_t n) {
        Entangler e = linear(n);
        if (n >= 3) {
            e.pairs_.emplace_back(n - 1, 0);
        }
        return e;
    }

    /// "linear" or "ring".
    static Entangler from_name(const std::string &name, std::size_t n) {
        if (name == "linear") {
            return linear(n);
        }
        if (name == "ring") {
            return ring(n);
        }
        throw std::invalid_argument("Entangler: unknown topology \"" + name +
                                    "\" (expected linear or ring)");
    }

    [[nodiscard]] const auto &pairs() const { return pairs_; }

    void validate(std::size_t n) const {
        for (const auto &[c, t] : pairs_) {
            if (c >= n || t >= n || c == t) {
                throw std::invalid_argument("Entangler: invalid pair (" +
                                            std::to_string(c) + ", " +
                                            std::to_string(t) + ") for " +
                                            std::to_string(n) + " qubits");
            }
        }
    }

    [[nodiscard]] StateVector apply(const StateVector &v) const {
        StateVector out = v;
        for (const auto &[c, t] : pairs_) {
            out = apply_cnot(c, t, out);
        }
        return out;
    }

  private:
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// n x L grid of R_y angles. Flat storage is layer-major:
/// index(layer, qubit) = layer * n + qubit.
class AnsatzParams {
  public:
    AnsatzParams() = default;

    AnsatzParams(std::size_t n_qubits, std::size_t layers)
        : n_(n_qubits), layers_(layers), theta_(n_qubits * layers, 0.0) {
        check_shape();
    }

    AnsatzParams(std::size_t n_qubits, std::size_t layers, std::vector<double> theta)
        : n_(n_qubits), layers_(layers), theta_(std::move(theta)) {
        check_shape();
        if (theta_.size() != n_ * layers_) {
            throw std::invalid_argument("AnsatzParams: expected " +
                                        std::to_string(n_ * layers_) +
                                        " angles, got " + std::to_string(theta_.size()));
        }
        for (double a : theta_) {
            if (!std::isfinite(a)) {
                throw std::invalid_argument("AnsatzParams: non-finite angle");
            }
        }
    }

    /// Uniform angles in [0, 2 pi).
    template <class Rng>
    static AnsatzParams random(std::size_t n_qubits, std::size_t layers, Rng &rng) {
        std::uniform_real_distribution<double> dist(0.0, 2 * std::numbers::pi);
        std::vector<double> theta(n_qubits * layers);
        for (auto &a : theta) {
            a = dist(rng);
        }
        return {n_qubits, layers, std::move(theta)};
    }

    [[nodiscard]] std::size_t num_qubits() const { return n_; }
    [[nodiscard]] std::size_t layers() const { return layers_; }
    [[nodiscard]] std::size_t size() const { return theta_.size(); }
    [[nodiscard]] const std::vector<double> &values() const { return theta_; }

    [[nodiscard]] std::size_t index(std::size_t layer, std::size_t qubit) const {
        if (layer >= layers_ || qubit >= n_) {
            throw std::out_of_range("AnsatzParams: (layer " + std::to_string(layer) +
                                    ", qubit " + std::to_string(qubit) +
                                    ") outside " + std::to_string(layers_) + "x" +
                                    std::to_string(n_) + " grid");
        }
        return layer * n_ + qubit;
    }

    [[nodiscard]] double at(std::size_t layer, std::size_t qubit) const {
        return theta_[index(layer, qubit)];
    }

    /// Angle reduced into [0, 2 pi); storage stays unreduced.
    [[nodiscard]] double reduced(std::size_t layer, std::size_t qubit) const {
        const double two_pi = 2 * std::numbers::pi;
        double a = std::fmod(at(layer, qubit), two_pi);
        return a < 0 ? a + two_pi : a;
    }

    friend bool operator==(const AnsatzParams &, const AnsatzParams &) = default;

  private:
    void check_shape() const {
        if (n_ == 0 || layers_ == 0) {
            throw std::invalid_argument("AnsatzParams: qubits and layers must be >= 1");
        }
    }

    std::size_t n_ = 0;
    std::size_t layers_ = 0;
    std::vector<double> theta_;
};

/// Circuit structure: the parameters live outside so one ansatz serves
/// every evaluation.
class Ansatz {
  public:
    Ansatz(std::size_t n_qubits, std::size_t layers, Entangler entangler)
        : n_(n_qubits), layers_(layers), entangler_(std::move(entangler)) {
        if (n_ == 0 || layers_ == 0) {
            throw std::invalid_argument("Ansatz: qubits and layers must be >= 1");
        }
        entangler_.validate(n_);
    }

    Ansatz(std::size_t n_qubits, std::size_t layers)
        : Ansatz(n_qubits, layers, Entangler::linear(n_qubits)) {}

    [[nodiscard]] std::size_t num_qubits() const { return n_; }
    [[nodiscard]] std::size_t layers() const { return layers_; }
    [[nodiscard]] std::size_t num_params() const { return n_ * layers_; }
    [[nodiscard]] const Entangler &entangler() const { return entangler_; }

    /// U(theta) v_in.
    [[nodiscard]] StateVector apply(const AnsatzParams &p, const StateVector &v_in) const {
        check(p, v_in);
        StateVector v = v_in;
        for (std::size_t t = 0; t < layers_; ++t) {
            for (std::size_t q = 0; q < n_; ++q) {
                v = apply_ry(q, p.at(t, q), v);
            }
            v = entangler_.apply(v);
        }
        return v;
    }

    /// dU/dtheta(layer, qubit) v_in = U(theta + pi e_(layer,qubit)) v_in / 2.
    [[nodiscard]] StateVector derivative_state(const AnsatzParams &p, std::size_t layer,
                                               std::size_t qubit,
                                               const StateVector &v_in) const;

  private:
    void check(const AnsatzParams &p, const StateVector &v_in) const {
        if (p.num_qubits() != n_ || p.layers() != layers_) {
            throw std::invalid_argument("Ansatz: parameter grid is " +
                                        std::to_string(p.num_qubits()) + "x" +
                                        std::to_string(p.layers()) + ", circuit is " +
                                        std::to_string(n_) + "x" +
                                        std::to_string(layers_));
        }
        if (v_in.num_qubits() != n_) {
            throw std::invalid_argument("Ansatz: input state qubit count mismatch");
        }
    }

    std::size_t n_;
    std::size_t layers_;
    Entangler entangler_;
};

/// Copy of p with theta(layer, qubit) += delta.
inline AnsatzParams shift(const AnsatzParams &p, std::size_t layer, std::size_t qubit,
                          double delta) {
    std::vector<double> theta = p.values();
    theta[p.index(layer, qubit)] += delta;
    return {p.num_qubits(), p.layers(), std::move(theta)};
}

inline StateVector Ansatz::derivative_state(const AnsatzParams &p, std::size_t layer,
                                            std::size_t qubit,
                                            const StateVector &v_in) const {
    const StateVector shifted = apply(shift(p, layer, qubit, std::numbers::pi), v_in);
    return scale(shifted, 0.5);
}

/// Free-function form with the default linear entangler.
inline StateVector apply_ansatz(const AnsatzParams &p, const StateVector &v_in) {
    return Ansatz(p.num_qubits(), p.layers()).apply(p, v_in);
}

inline StateVector derivative_state(const AnsatzParams &p, std::size_t layer,
                                    std::size_t qubit, const StateVector &v_in) {
    return Ansatz(p.num_qubits(), p.layers()).derivative_state(p, layer, qubit, v_in);
}

} // namespace geig
