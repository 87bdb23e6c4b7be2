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
 * @file vqge.hpp
 * Variational generalized eigensolver.
 *
 * The Rayleigh quotient F(theta) = <A>/<B> over psi(theta) = U(theta)|in>
 * is minimised with Adam; its maximum gives the top of the spectrum. The
 * interior levels come from the deflated loss
 *
 *     F_j(theta) = F(theta) + sum_{i<j} gamma_i |<psi|B|phi_i>|^2 / (<psi|B|psi> <phi_i|B|phi_i>),
 *
 * i.e. the overlap of the B-normalised trial state with the B-normalised
 * earlier eigenvectors phi_i. With gamma_i = lambda_r - lambda_1 the
 * minimum of F_j is lambda_j.
 *
 * All derivatives use the pi-shift identity dU/dtheta_k = U(theta + pi e_k)/2,
 * so every gradient entry is a real part of a transition amplitude between
 * the shifted and unshifted circuits.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ansatz.hpp"
#include "measurement.hpp"
#include "pencil.hpp"

namespace geig {

/// <B> below this is treated as a non positive definite B.
inline constexpr double kMinBExpectation = 1e-12;

/// A previously found eigenvector used as a deflation penalty.
struct DeflationEntry {
    double lambda = 0.0;
    double gamma = 0.0;
    std::optional<AnsatzParams> theta_star;
    StateVector state;         ///< phi_i, any nonzero scaling
    double b_expectation = 1.0; ///< <phi_i|B|phi_i>

    static DeflationEntry from_state(double lambda, double gamma, StateVector state,
                                     const PauliSum &b) {
        const double bb = matrix_element(state, b, state).real();
        if (!(bb > kMinBExpectation)) {
            throw std::domain_error("DeflationEntry: <phi|B|phi> is not positive");
        }
        return {lambda, gamma, std::nullopt, std::move(state), bb};
    }
};

using DeflationRecord = std::vector<DeflationEntry>;

struct ValueAndGradient {
    double value = 0.0;
    std::vector<double> gradient;
};

/// A pencil, a circuit, an input state and an estimator: everything needed
/// to evaluate the variational losses.
class VqgeModel {
  public:
    VqgeModel(Pencil pencil, Ansatz ansatz, StateVector v_in, Estimator est = {})
        : pencil_(std::move(pencil)), ansatz_(std::move(ansatz)), v_in_(std::move(v_in)),
          est_(est) {
        if (pencil_.num_qubits() != ansatz_.num_qubits() ||
            v_in_.num_qubits() != ansatz_.num_qubits()) {
            throw std::invalid_argument("VqgeModel: pencil, ansatz and input state sizes differ");
        }
    }

    [[nodiscard]] const Pencil &pencil() const { return pencil_; }
    [[nodiscard]] const Ansatz &ansatz() const { return ansatz_; }
    [[nodiscard]] const StateVector &input_state() const { return v_in_; }

    [[nodiscard]] StateVector state(const AnsatzParams &p) const {
        return ansatz_.apply(p, v_in_);
    }

    /// Rayleigh quotient <A>/<B> at U(p)|in>.
    [[nodiscard]] double loss_f(const AnsatzParams &p) const {
        const StateVector psi = state(p);
        return est_.expectation(pencil_.a, psi) / checked_b(est_.expectation(pencil_.b, psi));
    }

    /// Deflated loss; equals loss_f for an empty record.
    [[nodiscard]] double loss_fj(const AnsatzParams &p, const DeflationRecord &records) const {
        return loss_fj_state(state(p), records);
    }

    /// F + sum_i gamma_i |<psi|B|phi_i>|^2 / (<psi|B|psi> <phi_i|B|phi_i>) at any state.
    [[nodiscard]] double loss_fj_state(const StateVector &psi,
                                       const DeflationRecord &records) const {
        const double a = est_.expectation(pencil_.a, psi);
        const double b = checked_b(est_.expectation(pencil_.b, psi));
        double value = a / b;
        for (const auto &r : records) {
            const cplx o = est_.transition(psi, pencil_.b, r.state);
            value += r.gamma * std::norm(o) / (b * r.b_expectation);
        }
        return value;
    }

    /// |<psi(p)|B|psi(p_star)>|^2 built term-wise from transition amplitudes.
    [[nodiscard]] double overlap_sq(const AnsatzParams &p, const AnsatzParams &p_star) const {
        return std::norm(est_.transition(state(p), pencil_.b, state(p_star)));
    }

    [[nodiscard]] std::vector<double> grad_f(const AnsatzParams &p) const {
        return evaluate(p, {}).gradient;
    }

    [[nodiscard]] std::vector<double> grad_fj(const AnsatzParams &p,
                                              const DeflationRecord &records) const {
        return evaluate(p, records).gradient;
    }

    /// Value and parameter-shift gradient of F_j in one pass.
    [[nodiscard]] ValueAndGradient evaluate(const AnsatzParams &p,
                                            const DeflationRecord &records) const {
        const StateVector psi = state(p);
        const double a = est_.expectation(pencil_.a, psi);
        const double b = checked_b(est_.expectation(pencil_.b, psi));

        std::vector<cplx> overlaps;
        overlaps.reserve(records.size());
        double value = a / b;
        for (const auto &r : records) {
            overlaps.push_back(est_.transition(psi, pencil_.b, r.state));
            value += r.gamma * std::norm(overlaps.back()) / (b * r.b_expectation);
        }

        ValueAndGradient out{value, std::vector<double>(p.size())};
        for (std::size_t t = 0; t < p.layers(); ++t) {
            for (std::size_t q = 0; q < p.num_qubits(); ++q) {
                const StateVector plus = state(shift(p, t, q, std::numbers::pi));
                // d<H>/dtheta = Re <psi_+|H|psi>.
                const double da = est_.transition(plus, pencil_.a, psi).real();
                const double db = est_.transition(plus, pencil_.b, psi).real();
                double g = (da * b - a * db) / (b * b);
                for (std::size_t i = 0; i < records.size(); ++i) {
                    const auto &r = records[i];
                    const cplx o = overlaps[i];
                    // d|o|^2/dtheta = Re(conj(o) <psi_+|B|phi>).
                    const double dov =
                        (std::conj(o) * est_.transition(plus, pencil_.b, r.state)).real();
                    g += r.gamma / r.b_expectation *
                         (dov / b - std::norm(o) * db / (b * b));
                }
                out.gradient[p.index(t, q)] = g;
            }
        }
        return out;
    }

    /// Record entry for parameters found by the optimiser.
    [[nodiscard]] DeflationEntry make_entry(double lambda, double gamma,
                                            const AnsatzParams &p) const {
        DeflationEntry e = DeflationEntry::from_state(lambda, gamma, state(p), pencil_.b);
        e.theta_star = p;
        return e;
    }

  private:
    static double checked_b(double b) {
        if (!(b >= kMinBExpectation)) {
            throw std::domain_error("<B> = " + std::to_string(b) +
                                    " is not positive; B must be positive definite");
        }
        return b;
    }

    Pencil pencil_;
    Ansatz ansatz_;
    StateVector v_in_;
    Estimator est_;
};

// Free-function forms over the default linear-entangler circuit in exact mode.

inline VqgeModel default_model(const AnsatzParams &p, const Pencil &pencil,
                               const StateVector &v_in) {
    return {pencil, Ansatz(p.num_qubits(), p.layers()), v_in};
}

inline double loss_f(const AnsatzParams &p, const Pencil &pencil, const StateVector &v_in) {
    return default_model(p, pencil, v_in).loss_f(p);
}

inline double loss_fj(const AnsatzParams &p, const Pencil &pencil,
                      const DeflationRecord &records, const StateVector &v_in) {
    return default_model(p, pencil, v_in).loss_fj(p, records);
}

inline double loss_fj_state(const StateVector &psi, const Pencil &pencil,
                            const DeflationRecord &records) {
    const std::size_t n = pencil.num_qubits();
    return VqgeModel(pencil, Ansatz(n, 1), zero_state(n)).loss_fj_state(psi, records);
}

inline double overlap_sq(const AnsatzParams &p, const AnsatzParams &p_star,
                         const PauliSum &b, const StateVector &v_in) {
    const Pencil pencil(b, b);
    return default_model(p, pencil, v_in).overlap_sq(p, p_star);
}

inline std::vector<double> grad_f(const AnsatzParams &p, const Pencil &pencil,
                                  const StateVector &v_in) {
    return default_model(p, pencil, v_in).grad_f(p);
}

inline std::vector<double> grad_fj(const AnsatzParams &p, const Pencil &pencil,
                                   const DeflationRecord &records, const StateVector &v_in) {
    return default_model(p, pencil, v_in).grad_fj(p, records);
}

// ---------------------------------------------------------------------------
// Optimisation

enum class OptimizerMethod { Adam, GradientDescent };

struct OptimizerConfig {
    OptimizerMethod method = OptimizerMethod::Adam;
    double lr = 0.1;
    int iters = 200;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct TraceRow {
    int step = 0;
    double loss = 0.0;
    double grad_norm = 0.0;
    std::vector<double> params;
};

struct OptTrace {
    std::vector<TraceRow> rows;
    double best_value = std::numeric_limits<double>::infinity();
    AnsatzParams best_params;
    int best_step = -1;
};

class NonFiniteLoss : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Objective = std::function<ValueAndGradient(const AnsatzParams &)>;

/// Runs `iters` updates from p0 and records every evaluated point
/// (iters + 1 rows). The answer is the best point of the whole run.
inline OptTrace optimize(const Objective &objective, const AnsatzParams &p0,
                         const OptimizerConfig &cfg) {
    if (cfg.iters < 1) {
        throw std::invalid_argument("optimize: iters must be >= 1");
    }
    if (!(cfg.lr > 0.0)) {
        throw std::invalid_argument("optimize: learning rate must be positive");
    }
    OptTrace trace;
    std::vector<double> theta = p0.values();
    std::vector<double> m(theta.size(), 0.0);
    std::vector<double> v(theta.size(), 0.0);
    double b1_pow = 1.0;
    double b2_pow = 1.0;

    for (int step = 0;; ++step) {
        const AnsatzParams p(p0.num_qubits(), p0.layers(), theta);
        const ValueAndGradient vg = objective(p);
        double gnorm = 0.0;
        for (double g : vg.gradient) {
            gnorm += g * g;
        }
        gnorm = std::sqrt(gnorm);
        if (!std::isfinite(vg.value) || !std::isfinite(gnorm)) {
            std::ostringstream msg;
            msg << "optimize: non-finite loss " << vg.value << " (gradient norm " << gnorm
                << ") at step " << step;
            throw NonFiniteLoss(msg.str());
        }
        trace.rows.push_back({step, vg.value, gnorm, theta});
        if (vg.value < trace.best_value) {
            trace.best_value = vg.value;
            trace.best_params = p;
            trace.best_step = step;
        }
        if (step == cfg.iters) {
            break;
        }

        if (cfg.method == OptimizerMethod::GradientDescent) {
            for (std::size_t k = 0; k < theta.size(); ++k) {
                theta[k] -= cfg.lr * vg.gradient[k];
            }
            continue;
        }
        b1_pow *= cfg.beta1;
        b2_pow *= cfg.beta2;
        for (std::size_t k = 0; k < theta.size(); ++k) {
            const double g = vg.gradient[k];
            m[k] = cfg.beta1 * m[k] + (1 - cfg.beta1) * g;
            v[k] = cfg.beta2 * v[k] + (1 - cfg.beta2) * g * g;
            const double m_hat = m[k] / (1 - b1_pow);
            const double v_hat = v[k] / (1 - b2_pow);
            theta[k] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
        }
    }
    return trace;
}

// ---------------------------------------------------------------------------
// Spectrum pipeline

enum class LevelKind { Minimum, Maximum, Deflated };

inline const char *to_string(LevelKind k) {
    switch (k) {
    case LevelKind::Minimum:
        return "min";
    case LevelKind::Maximum:
        return "max";
    case LevelKind::Deflated:
        return "deflated";
    }
    return "?";
}

struct SpectrumConfig {
    std::size_t layers = 2;
    std::string entangler = "linear";
    std::vector<std::pair<std::size_t, std::size_t>> entangler_pairs; ///< overrides name
    OptimizerConfig optimizer;
    std::size_t restarts = 5;
    std::uint64_t seed = 7;
    std::uint64_t shots = 0; ///< 0 = exact expectations
};

struct SpectrumLevel {
    LevelKind kind = LevelKind::Minimum;
    double lambda = 0.0;
    AnsatzParams theta;
    StateVector state; ///< rescaled so <psi|B|psi> = 1
    std::vector<OptTrace> restarts;
    std::size_t best_restart = 0;
};

struct SpectrumResult {
    std::vector<SpectrumLevel> levels; ///< ascending lambda
    double gamma = 0.0;
};

namespace detail {
inline Rng level_rng(std::uint64_t seed, std::uint64_t level, std::uint64_t restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(level), static_cast<std::uint32_t>(restart)};
    return Rng(seq);
}

inline StateVector b_normalized(const StateVector &psi, const PauliSum &b) {
    const double bb = matrix_element(psi, b, psi).real();
    return scale(psi, 1.0 / std::sqrt(bb));
}
} // namespace detail

inline Ansatz make_ansatz(std::size_t n, const SpectrumConfig &cfg) {
    if (!cfg.entangler_pairs.empty()) {
        return {n, cfg.layers, Entangler(cfg.entangler_pairs)};
    }
    return {n, cfg.layers, Entangler::from_name(cfg.entangler, n)};
}

/// Finds r eigenvalues: the minimum of F, the maximum of F, then levels
/// 2..r-1 by minimising the deflated loss with gamma = lambda_r - lambda_1.
inline SpectrumResult solve_spectrum(const Pencil &pencil, std::size_t r,
                                     const SpectrumConfig &cfg,
                                     std::optional<StateVector> v_in = std::nullopt) {
    const std::size_t n = pencil.num_qubits();
    if (r < 1) {
        throw std::invalid_argument("solve_spectrum: r must be >= 1");
    }
    if (n < 63 && r > (std::size_t{1} << n)) {
        throw std::invalid_argument("solve_spectrum: r exceeds the Hilbert space dimension");
    }
    if (cfg.restarts < 1) {
        throw std::invalid_argument("solve_spectrum: restarts must be >= 1");
    }
    Rng shot_rng = detail::level_rng(cfg.seed, 0xffff, 0);
    const Estimator est = cfg.shots == 0 ? Estimator{} : Estimator{cfg.shots, &shot_rng};
    const VqgeModel model(pencil, make_ansatz(n, cfg), v_in ? *v_in : zero_state(n), est);

    // sign = +1 minimises F_j, -1 maximises F.
    auto run_level = [&](std::uint64_t level_id, double sign,
                         const DeflationRecord &records, LevelKind kind) {
        SpectrumLevel level;
        level.kind = kind;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < cfg.restarts; ++k) {
            Rng rng = detail::level_rng(cfg.seed, level_id, k);
            const AnsatzParams p0 = AnsatzParams::random(n, cfg.layers, rng);
            const Objective objective = [&](const AnsatzParams &p) {
                ValueAndGradient vg = model.evaluate(p, records);
                vg.value *= sign;
                for (auto &g : vg.gradient) {
                    g *= sign;
                }
                return vg;
            };
            level.restarts.push_back(optimize(objective, p0, cfg.optimizer));
            if (level.restarts.back().best_value < best) {
                best = level.restarts.back().best_value;
                level.best_restart = k;
            }
        }
        level.theta = level.restarts[level.best_restart].best_params;
        level.lambda = sign * best;
        level.state = detail::b_normalized(model.state(level.theta), pencil.b);
        return level;
    };

    SpectrumResult result;
    result.levels.push_back(run_level(1, 1.0, {}, LevelKind::Minimum));
    if (r == 1) {
        return result;
    }
    SpectrumLevel top = run_level(r, -1.0, {}, LevelKind::Maximum);
    result.gamma = top.lambda - result.levels.front().lambda;

    DeflationRecord records;
    records.push_back(model.make_entry(result.levels.front().lambda, result.gamma,
                                       result.levels.front().theta));
    for (std::size_t j = 2; j < r; ++j) {
        result.levels.push_back(run_level(j, 1.0, records, LevelKind::Deflated));
        records.push_back(
            model.make_entry(result.levels.back().lambda, result.gamma, result.levels.back().theta));
    }
    result.levels.push_back(std::move(top));
    std::stable_sort(result.levels.begin(), result.levels.end(),
                     [](const auto &x, const auto &y) { return x.lambda < y.lambda; });
    return result;
}

} // namespace geig
