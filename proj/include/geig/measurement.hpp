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
 * @file measurement.hpp
 * Hadamard-test emulation (exact or binomially sampled), the error bound
 * for the estimated Rayleigh quotient and Lagrange-optimal shot allocation.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pauli.hpp"
#include "statevector.hpp"

namespace geig {

using Rng = std::mt19937_64;

namespace detail {
/// Mean of `shots` +/-1 outcomes whose expectation is `value`.
inline double sample_pm1_mean(double value, std::uint64_t shots, Rng &rng) {
    const double p = std::clamp((1.0 + value) / 2.0, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> dist(shots, p);
    const auto ones = dist(rng);
    return 2.0 * static_cast<double>(ones) / static_cast<double>(shots) - 1.0;
}
} // namespace detail

/// Estimates <u|P|w>. With shots == 0 the exact value is returned; otherwise
/// the real and imaginary parts are each the empirical mean of `shots`
/// ancilla measurements with P(+1) = (1 + part) / 2.
inline cplx hadamard_test(const StateVector &u, const PauliString &p,
                          const StateVector &w, std::uint64_t shots, Rng *rng) {
    const cplx exact = matrix_element(u, p, w);
    if (shots == 0) {
        return exact;
    }
    if (rng == nullptr) {
        throw std::invalid_argument("hadamard_test: sampled mode needs a random stream");
    }
    const double re = detail::sample_pm1_mean(exact.real(), shots, *rng);
    const double im = detail::sample_pm1_mean(exact.imag(), shots, *rng);
    return {re, im};
}

inline cplx hadamard_test(const StateVector &u, const PauliString &p,
                          const StateVector &w) {
    return hadamard_test(u, p, w, 0, nullptr);
}

/// Evaluates expectations and transition amplitudes of Pauli sums either
/// exactly or term by term through sampled Hadamard tests.
class Estimator {
  public:
    Estimator() = default;
    Estimator(std::uint64_t shots, Rng *rng) : shots_(shots), rng_(rng) {
        if (shots_ > 0 && rng_ == nullptr) {
            throw std::invalid_argument("Estimator: sampled mode needs a random stream");
        }
    }

    static Estimator exact() { return {}; }

    [[nodiscard]] bool is_exact() const { return shots_ == 0; }
    [[nodiscard]] std::uint64_t shots() const { return shots_; }

    /// <v|S|v> (real part).
    [[nodiscard]] double expectation(const PauliSum &s, const StateVector &v) const {
        if (is_exact()) {
            return matrix_element(v, s, v).real();
        }
        double acc = 0.0;
        for (const auto &t : s) {
            if (t.string.is_identity()) {
                acc += t.coeff * v.norm_sq();
                continue;
            }
            acc += t.coeff * hadamard_test(v, t.string, v, shots_, rng_).real();
        }
        return acc;
    }

    /// <u|S|w>.
    [[nodiscard]] cplx transition(const StateVector &u, const PauliSum &s,
                                  const StateVector &w) const {
        if (is_exact()) {
            return matrix_element(u, s, w);
        }
        cplx acc{};
        for (const auto &t : s) {
            acc += t.coeff * hadamard_test(u, t.string, w, shots_, rng_);
        }
        return acc;
    }

  private:
    std::uint64_t shots_ = 0;
    Rng *rng_ = nullptr;
};

struct ErrorBudget {
    double eps_a = 0.0;
    double eps_b = 0.0;
    double eps_o = 0.0;
    double eta1 = 1.0;     ///< smallest eigenvalue of B
    double lambda_r = 0.0; ///< largest generalized eigenvalue
};

/// eta1^-1 (eps_A + |lambda_r| eps_B) + eps_O.
inline double error_bound(const ErrorBudget &b) {
    if (!(b.eta1 > 0.0)) {
        throw std::invalid_argument("error_bound: eta1 must be positive");
    }
    if (b.eps_a < 0 || b.eps_b < 0 || b.eps_o < 0) {
        throw std::invalid_argument("error_bound: precisions must be non-negative");
    }
    return (b.eps_a + std::abs(b.lambda_r) * b.eps_b) / b.eta1 + b.eps_o;
}

enum class TermGroup { A, B, Overlap };

inline const char *to_string(TermGroup g) {
    switch (g) {
    case TermGroup::A:
        return "A";
    case TermGroup::B:
        return "B";
    case TermGroup::Overlap:
        return "overlap";
    }
    return "?";
}

/// One estimated quantity: weight (|alpha_k|, |beta_l| or gamma_i) and the
/// single-shot variance of its estimator.
struct AllocationTerm {
    std::string label;
    TermGroup group = TermGroup::A;
    double coeff = 0.0;
    double sigma = 1.0;
};

struct PlannedTerm {
    AllocationTerm term;
    std::uint64_t shots = 0;
};

struct ShotPlan {
    std::vector<PlannedTerm> terms;
    std::uint64_t total = 0;
    double eps = 0.0;        ///< target pseudo-error
    double weight_sum = 0.0; ///< Lambda_k + Lambda_l + Lambda_i

    [[nodiscard]] std::uint64_t group_total(TermGroup g) const {
        std::uint64_t s = 0;
        for (const auto &t : terms) {
            if (t.term.group == g) {
                s += t.shots;
            }
        }
        return s;
    }
};

/// Pseudo-error sqrt(sum coeff^2 sigma / M) achieved by a set of counts.
inline double pseudo_error(std::span<const AllocationTerm> terms,
                           std::span<const double> shots) {
    if (terms.size() != shots.size()) {
        throw std::invalid_argument("pseudo_error: size mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        s += terms[i].coeff * terms[i].coeff * terms[i].sigma / shots[i];
    }
    return std::sqrt(s);
}

inline double pseudo_error(const ShotPlan &plan) {
    std::vector<AllocationTerm> terms;
    std::vector<double> shots;
    for (const auto &t : plan.terms) {
        terms.push_back(t.term);
        shots.push_back(static_cast<double>(t.shots));
    }
    return pseudo_error(terms, shots);
}

/// Minimises the total shot count subject to a pseudo-error of eps:
/// M_t = (sum_s coeff_s sqrt(sigma_s)) / eps^2 * coeff_t sqrt(sigma_t),
/// rounded up, at least one shot per term.
inline ShotPlan shot_allocation(std::span<const AllocationTerm> terms, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("shot_allocation: eps must be positive");
    }
    double weight = 0.0;
    for (const auto &t : terms) {
        if (t.coeff < 0.0) {
            throw std::invalid_argument("shot_allocation: coefficient of \"" + t.label +
                                        "\" is negative; pass magnitudes");
        }
        if (!(t.sigma > 0.0)) {
            throw std::invalid_argument("shot_allocation: variance of \"" + t.label +
                                        "\" must be positive");
        }
        weight += t.coeff * std::sqrt(t.sigma);
    }
    ShotPlan plan;
    plan.eps = eps;
    plan.weight_sum = weight;
    const double scale = weight / (eps * eps);
    for (const auto &t : terms) {
        const double ideal = scale * t.coeff * std::sqrt(t.sigma);
        // Guard against 200.00000000000003 rounding up to 201.
        const double rounded = std::ceil(ideal * (1.0 - 1e-12));
        const auto shots = static_cast<std::uint64_t>(std::max(1.0, rounded));
        plan.terms.push_back({t, shots});
        plan.total += shots;
    }
    return plan;
}

/// Convenience overload building terms from Pauli sums and penalty weights.
inline ShotPlan shot_allocation(const PauliSum &a, const PauliSum &b,
                                std::span<const double> gammas, double eps,
                                double sigma = 1.0) {
    std::vector<AllocationTerm> terms;
    for (const auto &t : a) {
        terms.push_back({"A:" + t.string.to_string(), TermGroup::A, std::abs(t.coeff), sigma});
    }
    for (const auto &t : b) {
        terms.push_back({"B:" + t.string.to_string(), TermGroup::B, std::abs(t.coeff), sigma});
    }
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        terms.push_back({"overlap:" + std::to_string(i + 1), TermGroup::Overlap,
                         gammas[i], sigma});
    }
    return shot_allocation(terms, eps);
}

/// Per-term precision split eps_i^2 = |a_i| eps^2 / sum |a_j|.
inline std::vector<double> per_term_precision(std::span<const double> coeffs,
                                              double eps_total) {
    if (!(eps_total > 0.0)) {
        throw std::invalid_argument("per_term_precision: eps must be positive");
    }
    double l1 = 0.0;
    for (double c : coeffs) {
        l1 += std::abs(c);
    }
    if (!(l1 > 0.0)) {
        throw std::invalid_argument("per_term_precision: all coefficients are zero");
    }
    std::vector<double> out;
    out.reserve(coeffs.size());
    for (double c : coeffs) {
        out.push_back(std::sqrt(std::abs(c) * eps_total * eps_total / l1));
    }
    return out;
}

} // namespace geig
