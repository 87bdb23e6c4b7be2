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
 * @file fqge.hpp
 * Iterative generalized eigensolver driven by the non-unitary operator
 *
 *     G_s = I - 2 delta (A - F(psi_s) B) / <psi_s|B|psi_s>,
 *
 * which is one gradient-descent step on the Rayleigh quotient. G_s is
 * expanded as a linear combination of the Pauli strings {I, A_k, B_l};
 * the post-selected ancilla circuit that realises it is emulated by the
 * direct linear combination together with its success probability
 * ||G_s psi||^2 / (C^2 d), C^2 = sum |g_i|^2.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "measurement.hpp"
#include "pencil.hpp"

namespace geig {

/// Search directions shorter than this count as convergence.
inline constexpr double kDirectionFloor = 1e-10;

/// Cap on |delta| when the line-search optimum is the pure direction.
inline constexpr double kMaxLineSearchDelta = 1e6;

enum class StepMode { Fixed, LineSearch };

struct FqgeConfig {
    StepMode mode = StepMode::Fixed;
    double delta = 0.1;
    double epsilon = 1e-8;
    int max_iters = 200;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

struct FqgeIterate {
    int s = 0;
    StateVector state;
    double value = 0.0;
    double residual = 0.0;
    cplx delta_used{};
    double success_prob = 1.0;
    double lcu_norm = 1.0; ///< C
    std::size_t terms = 1; ///< d
};

enum class FqgeStatus { Converged, MaxItersReached };

struct FqgeResult {
    std::vector<FqgeIterate> iterates;
    FqgeStatus status = FqgeStatus::MaxItersReached;

    [[nodiscard]] const FqgeIterate &last() const { return iterates.back(); }
    [[nodiscard]] double eigenvalue() const { return last().value; }
};

class ZeroState : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class DegenerateDirection : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

namespace detail {
inline double checked_b_expectation(const Pencil &pencil, const StateVector &state) {
    const double b = matrix_element(state, pencil.b, state).real();
    if (!(b >= 1e-12)) {
        throw std::domain_error("<B> = " + std::to_string(b) +
                                " is not positive; B must be positive definite");
    }
    return b;
}

inline void require_normalized(const StateVector &state, const char *what) {
    if (!state.normalized()) {
        throw std::invalid_argument(std::string(what) + ": state must be normalized");
    }
}
} // namespace detail

/// <psi|A|psi> / <psi|B|psi>.
inline double loss_state(const StateVector &state, const Pencil &pencil) {
    detail::require_normalized(state, "loss_state");
    return matrix_element(state, pencil.a, state).real() /
           detail::checked_b_expectation(pencil, state);
}

/// -(2/<B>) (A psi - F B psi), the search direction psi~.
inline StateVector gradient_direction(const StateVector &state, const Pencil &pencil,
                                      double f_value) {
    detail::require_normalized(state, "gradient_direction");
    const double b = detail::checked_b_expectation(pencil, state);
    const StateVector bracket =
        add_scaled(apply_sum(pencil.a, state), -f_value, apply_sum(pencil.b, state));
    return scale(bracket, -2.0 / b);
}

/// G = sum_i g_i P_i with merged strings.
struct Lcu {
    std::vector<cplx> coeffs;
    std::vector<PauliString> strings;
    double c_norm = 1.0;    ///< sqrt(sum |g_i|^2)
    std::size_t d = 1;      ///< number of terms
    std::size_t n_qubits = 0;

    /// Elementary-gate proxy d * ceil(log2 d) * (n + 1) for the controlled
    /// select; reported, not compiled.
    [[nodiscard]] std::size_t gate_estimate() const {
        const std::size_t log_d = std::max<std::size_t>(1, log2_exact(d));
        return d * log_d * (n_qubits + 1);
    }
};

inline Matrix dense_matrix(const Lcu &lcu, std::size_t cap = kDefaultDenseCap) {
    detail::require_dense_cap(lcu.n_qubits, cap);
    const std::size_t dim = std::size_t{1} << lcu.n_qubits;
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < lcu.coeffs.size(); ++i) {
        const auto &p = lcu.strings[i];
        for (std::size_t k = 0; k < dim; ++k) {
            m(k ^ p.x_mask(), k) += lcu.coeffs[i] * p.phase(k);
        }
    }
    return m;
}

/// Coefficients of G = I - 2 delta (A - F B)/<B> over {I, A_k, B_l}:
/// 1, -2 delta alpha_k/<B> and +2 delta F beta_l/<B>, merged by string.
inline Lcu build_lcu(const StateVector &state, const Pencil &pencil, cplx delta,
                     double f_value) {
    detail::require_normalized(state, "build_lcu");
    const double b = detail::checked_b_expectation(pencil, state);
    const std::size_t n = pencil.num_qubits();
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::pair<PauliString, cplx>> merged;
    auto add = [&](const PauliString &p, cplx g) {
        auto [it, inserted] = merged.try_emplace({p.x_mask(), p.z_mask()}, p, g);
        if (!inserted) {
            it->second.second += g;
        }
    };
    add(PauliString(n), 1.0);
    for (const auto &t : pencil.a) {
        add(t.string, -2.0 * delta * t.coeff / b);
    }
    for (const auto &t : pencil.b) {
        add(t.string, 2.0 * delta * f_value * t.coeff / b);
    }
    Lcu lcu;
    lcu.n_qubits = n;
    double c2 = 0.0;
    for (auto &[key, entry] : merged) {
        if (std::abs(entry.second) < 1e-15) {
            continue;
        }
        lcu.strings.push_back(entry.first);
        lcu.coeffs.push_back(entry.second);
        c2 += std::norm(entry.second);
    }
    if (lcu.coeffs.empty()) {
        throw ZeroState("build_lcu: G_s vanishes identically");
    }
    lcu.d = lcu.coeffs.size();
    lcu.c_norm = std::sqrt(c2);
    return lcu;
}

struct LcuApplication {
    StateVector state; ///< G psi, unnormalized
    double success_prob = 1.0;
};

/// G psi and the post-selection probability ||G psi||^2 / (C^2 d).
inline LcuApplication apply_g(const Lcu &lcu, const StateVector &state) {
    detail::require_normalized(state, "apply_g");
    if (state.num_qubits() != lcu.n_qubits) {
        throw std::invalid_argument("apply_g: qubit count mismatch");
    }
    std::vector<cplx> out(state.dim());
    for (std::size_t i = 0; i < lcu.coeffs.size(); ++i) {
        const auto &p = lcu.strings[i];
        for (std::size_t k = 0; k < state.dim(); ++k) {
            out[k ^ p.x_mask()] += lcu.coeffs[i] * p.phase(k) * state[k];
        }
    }
    StateVector g_psi(state.num_qubits(), std::move(out), false);
    const double nrm2 = g_psi.norm_sq();
    if (!(nrm2 > 0.0)) {
        throw ZeroState("apply_g: G_s annihilates the state (pathological delta)");
    }
    const double p_suc =
        nrm2 / (lcu.c_norm * lcu.c_norm * static_cast<double>(lcu.d));
    return {std::move(g_psi), p_suc};
}

/// Expected number of repetitions per successful step, C^2 d / ||G psi||^2.
inline double measurement_complexity(double success_prob) { return 1.0 / success_prob; }

struct LineSearchResult {
    cplx delta{};
    double predicted_value = 0.0;
    bool capped = false; ///< optimum lies along the pure direction
};

/// Smaller eigenpair of a 2x2 Hermitian pencil [[a11, a12], [a12*, a22]],
/// [[b11, b12], [b12*, b22]] with positive definite B.
struct Pencil2x2Min {
    double value = 0.0;
    cplx v0{};
    cplx v1{};
};

inline Pencil2x2Min smallest_eig_2x2(double a11, cplx a12, double a22, double b11, cplx b12,
                                     double b22) {
    // det(A - u B) = qa u^2 + qb u + qc.
    const double qa = b11 * b22 - std::norm(b12);
    const double qb = -(a11 * b22 + a22 * b11 - 2.0 * (a12 * std::conj(b12)).real());
    const double qc = a11 * a22 - std::norm(a12);
    if (!(qa > 0.0)) {
        throw DegenerateDirection("line_search: 2x2 B block is singular");
    }
    const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
    const double sq = std::sqrt(disc);
    // Stable root selection: smaller root of qa u^2 + qb u + qc.
    double u = 0.0;
    if (qb <= 0.0) {
        const double big = (-qb + sq) / (2.0 * qa); // larger root
        u = big != 0.0 ? qc / (qa * big) : (-qb - sq) / (2.0 * qa);
    } else {
        u = (-qb - sq) / (2.0 * qa);
    }
    // Null vector of (A - u B): use whichever row is better conditioned.
    const cplx r11 = a11 - u * b11;
    const cplx r12 = a12 - u * b12;
    const cplx r22 = a22 - u * b22;
    Pencil2x2Min out;
    out.value = u;
    const double row1 = std::norm(r11) + std::norm(r12);
    const double row2 = std::norm(r12) + std::norm(r22);
    if (row1 == 0.0 && row2 == 0.0) {
        // A = u B on the whole span: any vector works, keep psi.
        out.v0 = 1.0;
        out.v1 = 0.0;
    } else if (row1 >= row2) {
        out.v0 = r12;
        out.v1 = -r11;
    } else {
        out.v0 = r22;
        out.v1 = -std::conj(r12);
    }
    return out;
}

/// Exact minimisation of F(psi + delta psi~) over complex delta through the
/// 2x2 pencil on span{psi, psi~}; delta = v[1] / v[0].
inline LineSearchResult line_search(const StateVector &state, const StateVector &direction,
                                    const Pencil &pencil) {
    if (norm(direction) < kDirectionFloor) {
        throw DegenerateDirection("line_search: converged (search direction below floor)");
    }
    const StateVector a_psi = apply_sum(pencil.a, state);
    const StateVector a_dir = apply_sum(pencil.a, direction);
    const StateVector b_psi = apply_sum(pencil.b, state);
    const StateVector b_dir = apply_sum(pencil.b, direction);
    const double a11 = inner(state, a_psi).real();
    const cplx a12 = inner(state, a_dir);
    const double a22 = inner(direction, a_dir).real();
    const double b11 = inner(state, b_psi).real();
    const cplx b12 = inner(state, b_dir);
    const double b22 = inner(direction, b_dir).real();

    const Pencil2x2Min eig = smallest_eig_2x2(a11, a12, a22, b11, b12, b22);
    LineSearchResult out;
    out.predicted_value = eig.value;
    // Scale-invariant test for v[0] ~ 0.
    if (std::abs(eig.v0) <= 1e-14 * std::abs(eig.v1)) {
        out.capped = true;
        out.delta = kMaxLineSearchDelta * (eig.v1 / std::abs(eig.v1));
        return out;
    }
    out.delta = eig.v1 / eig.v0;
    if (std::abs(out.delta) > kMaxLineSearchDelta) {
        out.capped = true;
        out.delta *= kMaxLineSearchDelta / std::abs(out.delta);
    }
    return out;
}

/// ||A psi - F B psi|| / (||A psi|| + |F| ||B psi||).
inline double residual(const StateVector &state, const Pencil &pencil) {
    detail::require_normalized(state, "residual");
    const double f = loss_state(state, pencil);
    const StateVector a_psi = apply_sum(pencil.a, state);
    const StateVector b_psi = apply_sum(pencil.b, state);
    const double denom = norm(a_psi) + std::abs(f) * norm(b_psi);
    if (!(denom > 0.0)) {
        throw std::domain_error("residual: A and B both annihilate the state");
    }
    return norm(add_scaled(a_psi, -f, b_psi)) / denom;
}

/// tau * 2^{-n/2} (1, ..., 1) with tau ~ N(0, sigma^2).
inline StateVector draw_noise(std::size_t n, double sigma, Rng &rng) {
    if (sigma < 0.0) {
        throw std::invalid_argument("noise: sigma must be non-negative");
    }
    double tau = 0.0;
    if (sigma > 0.0) {
        std::normal_distribution<double> dist(0.0, sigma);
        tau = dist(rng);
    }
    const double amp = tau / std::sqrt(static_cast<double>(std::size_t{1} << n));
    return {n, std::vector<cplx>(std::size_t{1} << n, cplx{amp}), false};
}

/// psi + noise, renormalized.
inline StateVector noise_inject(const StateVector &state, double sigma, Rng &rng) {
    if (sigma == 0.0) {
        return state;
    }
    return normalize(add_scaled(state, 1.0, draw_noise(state.num_qubits(), sigma, rng)));
}

/// Iterates psi_{s+1} = normalize(G_s psi_s) until the residual drops to
/// epsilon or max_iters updates have been applied.
inline FqgeResult run_fqge(const Pencil &pencil, const StateVector &initial,
                           const FqgeConfig &cfg) {
    detail::require_normalized(initial, "run_fqge");
    if (initial.num_qubits() != pencil.num_qubits()) {
        throw std::invalid_argument("run_fqge: initial state qubit count mismatch");
    }
    if (!(cfg.epsilon > 0.0)) {
        throw std::invalid_argument("run_fqge: epsilon must be positive");
    }
    if (cfg.mode == StepMode::Fixed && !(cfg.delta > 0.0)) {
        throw std::invalid_argument("run_fqge: fixed delta must be positive");
    }
    if (cfg.max_iters < 0) {
        throw std::invalid_argument("run_fqge: max_iters must be non-negative");
    }
    Rng rng(cfg.seed);
    FqgeResult result;
    StateVector psi = initial;
    for (int s = 0;; ++s) {
        FqgeIterate it;
        it.s = s;
        it.state = psi;
        it.value = loss_state(psi, pencil);
        it.residual = residual(psi, pencil);
        if (it.residual <= cfg.epsilon) {
            result.iterates.push_back(std::move(it));
            result.status = FqgeStatus::Converged;
            return result;
        }
        if (s == cfg.max_iters) {
            result.iterates.push_back(std::move(it));
            result.status = FqgeStatus::MaxItersReached;
            return result;
        }
        const StateVector direction = gradient_direction(psi, pencil, it.value);
        if (norm(direction) < kDirectionFloor) {
            result.iterates.push_back(std::move(it));
            result.status = FqgeStatus::Converged;
            return result;
        }
        cplx delta = cfg.delta;
        if (cfg.mode == StepMode::LineSearch) {
            delta = line_search(psi, direction, pencil).delta;
        }
        const Lcu lcu = build_lcu(psi, pencil, delta, it.value);
        LcuApplication applied;
        try {
            applied = apply_g(lcu, psi);
        } catch (const ZeroState &e) {
            throw ZeroState(std::string(e.what()) + " at step " + std::to_string(s));
        }
        it.delta_used = delta;
        it.success_prob = applied.success_prob;
        it.lcu_norm = lcu.c_norm;
        it.terms = lcu.d;
        result.iterates.push_back(std::move(it));

        psi = normalize(applied.state);
        psi = noise_inject(psi, cfg.noise_sigma, rng);
    }
}

} // namespace geig
