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
 * @file commands.hpp
 * The experiment-runner commands behind the `geig` tool. Each returns a
 * summary JSON object and optionally writes a CSV trace.
 *
 * Trace columns:
 *   vqge:  level,kind,restart,step,loss,grad_norm
 *   fqge:  s,value,residual,delta_re,delta_im,success_prob,C,d
 */
#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fqge.hpp"
#include "measurement.hpp"
#include "problem.hpp"
#include "reference.hpp"
#include "vqge.hpp"

namespace geig {

/// Default dense-oracle cap in qubits; GEIG_DENSE_CAP overrides it.
inline constexpr std::size_t kDefaultOracleCap = 10;

inline std::size_t oracle_cap() {
    if (const char *env = std::getenv("GEIG_DENSE_CAP")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 0 && v <= 30) {
            return static_cast<std::size_t>(v);
        }
        throw std::invalid_argument("GEIG_DENSE_CAP must be an integer in [0, 30]");
    }
    return kDefaultOracleCap;
}

/// Shortest text that round-trips the double, for byte-stable traces.
inline std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct VqgeOptions {
    std::optional<std::size_t> r; ///< taken from the oracle when absent
    SpectrumConfig spectrum;
    std::optional<double> target_eps; ///< adds per-level shot plans
    double sigma = 1.0;
};

inline ojson cmd_vqge(const LoadedProblem &problem, const VqgeOptions &opts,
                      std::ostream *trace = nullptr,
                      std::size_t cap = oracle_cap()) {
    const Pencil &pencil = problem.pencil;
    const bool have_oracle = pencil.num_qubits() <= cap;
    std::optional<EigenDecomposition> oracle;
    std::vector<double> distinct;
    if (have_oracle) {
        oracle = generalized_eig(pencil, cap);
        distinct = distinct_eigenvalues(oracle->values);
    }
    std::size_t r = 0;
    if (opts.r) {
        r = *opts.r;
    } else if (have_oracle) {
        r = distinct.size();
    } else {
        throw std::invalid_argument("vqge: --r is required when n exceeds the dense cap");
    }

    const SpectrumResult res = solve_spectrum(pencil, r, opts.spectrum);

    if (trace != nullptr) {
        *trace << "level,kind,restart,step,loss,grad_norm\n";
        for (std::size_t li = 0; li < res.levels.size(); ++li) {
            const auto &lvl = res.levels[li];
            const double sign = lvl.kind == LevelKind::Maximum ? -1.0 : 1.0;
            for (std::size_t k = 0; k < lvl.restarts.size(); ++k) {
                for (const auto &row : lvl.restarts[k].rows) {
                    *trace << li + 1 << ',' << to_string(lvl.kind) << ',' << k << ','
                           << row.step << ',' << fmt_double(sign * row.loss) << ','
                           << fmt_double(row.grad_norm) << '\n';
                }
            }
        }
    }

    ojson out;
    out["command"] = "vqge";
    out["n"] = pencil.num_qubits();
    out["r"] = r;
    out["layers"] = opts.spectrum.layers;
    out["iters"] = opts.spectrum.optimizer.iters;
    out["restarts"] = opts.spectrum.restarts;
    out["seed"] = opts.spectrum.seed;
    out["shots"] = opts.spectrum.shots;
    out["gamma"] = res.gamma;
    ojson eigs = ojson::array();
    ojson levels = ojson::array();
    for (const auto &lvl : res.levels) {
        eigs.push_back(lvl.lambda);
        const auto &best = lvl.restarts[lvl.best_restart];
        levels.push_back({{"lambda", lvl.lambda},
                          {"kind", to_string(lvl.kind)},
                          {"best_restart", lvl.best_restart},
                          {"best_step", best.best_step},
                          {"theta", lvl.theta.values()}});
    }
    out["eigenvalues"] = eigs;
    out["levels"] = levels;

    if (opts.target_eps) {
        ojson plans = ojson::array();
        for (std::size_t j = 1; j <= res.levels.size(); ++j) {
            const std::size_t n_overlaps =
                res.levels[j - 1].kind == LevelKind::Deflated ? j - 1 : 0;
            const std::vector<double> gammas(n_overlaps, res.gamma);
            const ShotPlan plan =
                shot_allocation(pencil.a, pencil.b, gammas, *opts.target_eps, opts.sigma);
            plans.push_back({{"level", j}, {"total", plan.total}});
        }
        out["shot_plans"] = plans;
    }

    if (have_oracle) {
        ojson errs = ojson::array();
        double worst = 0.0;
        for (std::size_t j = 0; j < res.levels.size(); ++j) {
            // Compare level j with the oracle value of the same rank; the top
            // level is compared with the largest oracle value.
            const std::size_t k = res.levels[j].kind == LevelKind::Maximum
                                      ? distinct.size() - 1
                                      : std::min(j, distinct.size() - 1);
            const double e = std::abs(res.levels[j].lambda - distinct[k]);
            errs.push_back(e);
            worst = std::max(worst, e);
        }
        double b_orth = 0.0;
        for (std::size_t i = 0; i < res.levels.size(); ++i) {
            for (std::size_t j = i + 1; j < res.levels.size(); ++j) {
                b_orth = std::max(b_orth, std::abs(matrix_element(res.levels[i].state, pencil.b,
                                                                  res.levels[j].state)));
            }
        }
        out["oracle"] = {{"eigenvalues", distinct},
                         {"eta1", oracle->eta1},
                         {"abs_errors", errs},
                         {"max_abs_error", worst},
                         {"b_orthogonality_max", b_orth}};
    }
    return out;
}

struct FqgeOptions {
    FqgeConfig config;
    std::optional<StateVector> initial; ///< |0...0> when absent
};

inline ojson cmd_fqge(const LoadedProblem &problem, const FqgeOptions &opts,
                      std::ostream *trace = nullptr, std::size_t cap = oracle_cap()) {
    const Pencil &pencil = problem.pencil;
    const StateVector initial = opts.initial ? *opts.initial : zero_state(pencil.num_qubits());
    const FqgeResult res = run_fqge(pencil, initial, opts.config);

    if (trace != nullptr) {
        *trace << "s,value,residual,delta_re,delta_im,success_prob,C,d\n";
        for (const auto &it : res.iterates) {
            *trace << it.s << ',' << fmt_double(it.value) << ',' << fmt_double(it.residual)
                   << ',' << fmt_double(it.delta_used.real()) << ','
                   << fmt_double(it.delta_used.imag()) << ',' << fmt_double(it.success_prob)
                   << ',' << fmt_double(it.lcu_norm) << ',' << it.terms << '\n';
        }
    }

    double cumulative = 1.0;
    std::size_t max_terms = 1;
    for (const auto &it : res.iterates) {
        cumulative *= it.success_prob;
        max_terms = std::max(max_terms, it.terms);
    }
    Lcu shape;
    shape.d = max_terms;
    shape.n_qubits = pencil.num_qubits();

    const auto &last = res.last();
    ojson out;
    out["command"] = "fqge";
    out["n"] = pencil.num_qubits();
    out["mode"] = opts.config.mode == StepMode::Fixed ? "fixed" : "line_search";
    out["delta"] = opts.config.delta;
    out["epsilon"] = opts.config.epsilon;
    out["max_iters"] = opts.config.max_iters;
    out["noise_sigma"] = opts.config.noise_sigma;
    out["seed"] = opts.config.seed;
    out["status"] = res.status == FqgeStatus::Converged ? "converged" : "max_iters_reached";
    out["iterations"] = last.s;
    out["eigenvalue"] = last.value;
    out["residual"] = last.residual;
    out["cumulative_success_prob"] = cumulative;
    out["lcu_terms"] = max_terms;
    out["gate_estimate"] = shape.gate_estimate();

    if (pencil.num_qubits() <= cap) {
        const EigenDecomposition oracle = generalized_eig(pencil, cap);
        const StateVector ground =
            StateVector::from_amplitudes(oracle.vectors.column(0), false);
        out["oracle"] = {{"ground_eigenvalue", oracle.values.front()},
                         {"abs_error", std::abs(last.value - oracle.values.front())},
                         {"fidelity", fidelity(normalize(ground), last.state)}};
    }
    return out;
}

inline ojson cmd_reference(const LoadedProblem &problem, std::size_t cap = oracle_cap()) {
    const Pencil &pencil = problem.pencil;
    if (pencil.num_qubits() > cap) {
        throw std::length_error("reference: " + std::to_string(pencil.num_qubits()) +
                                " qubits exceeds the dense cap of " + std::to_string(cap));
    }
    const Matrix a = dense_matrix(pencil.a, cap);
    const Matrix b = dense_matrix(pencil.b, cap);
    const EigenDecomposition e = generalized_eig(a, b);
    ojson out;
    out["command"] = "reference";
    out["n"] = pencil.num_qubits();
    out["eigenvalues"] = e.values;
    out["distinct"] = distinct_eigenvalues(e.values);
    out["eta1"] = e.eta1;
    out["pair_residual"] = pair_residual(a, b, e);
    out["b_orthonormality_error"] = b_orthonormality_error(b, e);
    return out;
}

/// Decomposes "matrix" (or A_dense / B_dense of a problem file).
inline ojson cmd_decompose(const ojson &input, double tol = kDefaultDecomposeTol) {
    auto dense_of = [](const ojson &m, const std::string &field) {
        if (!m.is_array() || m.empty()) {
            throw ProblemError("field \"" + field + "\" must be a non-empty array of rows");
        }
        if (!is_power_of_two(m.size()) || m.size() < 2) {
            throw ProblemError("field \"" + field + "\" dimension must be a power of two >= 2");
        }
        return detail::parse_dense(m, field, log2_exact(m.size()));
    };
    auto one = [&](const ojson &m, const std::string &field) {
        const PauliSum s = decompose(dense_of(m, field), tol);
        return ojson{{"n", s.num_qubits()}, {"terms", to_json(s)}};
    };
    ojson out;
    out["command"] = "decompose";
    if (input.contains("matrix")) {
        out["matrix"] = one(input["matrix"], "matrix");
    }
    if (input.contains("A_dense")) {
        out["A"] = one(input["A_dense"], "A_dense");
    }
    if (input.contains("B_dense")) {
        out["B"] = one(input["B_dense"], "B_dense");
    }
    if (out.size() == 1) {
        throw ProblemError("decompose: expected a \"matrix\", \"A_dense\" or \"B_dense\" field");
    }
    return out;
}

inline ojson to_json(const ShotPlan &plan) {
    ojson terms = ojson::array();
    for (const auto &t : plan.terms) {
        terms.push_back({{"label", t.term.label},
                         {"coeff", t.term.coeff},
                         {"sigma", t.term.sigma},
                         {"shots", t.shots}});
    }
    return {{"terms", terms}, {"total", plan.total}, {"eps", plan.eps}};
}

inline ojson cmd_allocate(const LoadedProblem &problem, double target_eps,
                          const std::vector<double> &gammas, double sigma = 1.0) {
    const ShotPlan plan =
        shot_allocation(problem.pencil.a, problem.pencil.b, gammas, target_eps, sigma);
    ojson out;
    out["command"] = "allocate";
    out.update(to_json(plan));
    out["achieved_eps"] = pseudo_error(plan);
    return out;
}

} // namespace geig
