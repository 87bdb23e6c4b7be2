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
// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "geig/commands.hpp"
#include "support.hpp"

namespace {

using namespace geig;
using testing::Gen;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

LoadedProblem demo_problem() {
    return load_problem(std::string(GEIG_PROBLEMS_DIR) + "/demo_2q.json", 10);
}

StateVector column_state(const EigenDecomposition &e, std::size_t j) {
    return StateVector::from_amplitudes(e.vectors.column(j), false);
}

void spectrum_recovery(Outcome &o) {
    const auto t0 = Clock::now();
    VqgeOptions opts;
    opts.r = 4;
    opts.spectrum.layers = 2;
    opts.spectrum.optimizer.iters = 200;
    opts.spectrum.restarts = 5;
    opts.spectrum.seed = 7;
    const ojson s = cmd_vqge(demo_problem(), opts, nullptr, 10);
    const double secs = seconds_since(t0);
    const double worst = s["oracle"]["max_abs_error"].get<double>();
    o.detail << "max |error| = " << worst << ", " << secs << " s";
    o.require(s["eigenvalues"].size() == 4, "four eigenvalues");
    o.require(worst <= 1e-2, "errors <= 1e-2");
    o.require(secs <= 30.0, "runtime <= 30 s");
}

void fqge_fidelity(Outcome &o) {
    const auto t0 = Clock::now();
    FqgeOptions opts;
    opts.config.delta = 0.1;
    opts.config.epsilon = 1e-8;
    opts.config.max_iters = 200;
    const ojson s = cmd_fqge(demo_problem(), opts, nullptr, 10);
    const double secs = seconds_since(t0);
    const double fid = s["oracle"]["fidelity"].get<double>();
    const double err = s["oracle"]["abs_error"].get<double>();
    const int iters = s["iterations"].get<int>();
    o.detail << "fidelity = " << fid << ", |error| = " << err << ", " << iters
             << " iterations, " << secs << " s";
    o.require(fid >= 0.9999, "fidelity >= 0.9999");
    o.require(err <= 1e-4, "error <= 1e-4");
    o.require(iters <= 200, "within 200 iterations");
    o.require(secs <= 5.0, "runtime <= 5 s");
}

void noise_robustness(Outcome &o) {
    const Pencil p = demo_problem().pencil;
    const EigenDecomposition e = generalized_eig(p);
    const double lo = e.values.front() - 0.2;
    const double hi = e.values.back() + 0.2;
    std::vector<double> finals;
    bool bounded = true;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        FqgeConfig cfg;
        cfg.noise_sigma = 0.01;
        cfg.seed = seed;
        const FqgeResult r = run_fqge(p, zero_state(2), cfg);
        for (const auto &it : r.iterates) {
            bounded = bounded && it.value >= lo && it.value <= hi;
        }
        finals.push_back(r.eigenvalue());
    }
    std::sort(finals.begin(), finals.end());
    const double median = (finals[9] + finals[10]) / 2;
    const double dev = std::abs(median - e.values.front());
    const double worst = std::max(std::abs(finals.front() - e.values.front()),
                                  std::abs(finals.back() - e.values.front()));
    o.detail << "median |error| = " << dev << ", worst |error| = " << worst;
    o.require(dev <= 0.05, "median within 0.05");
    o.require(bounded, "all losses within [lambda_1 - 0.2, lambda_r + 0.2]");
}

void parameter_shift(Outcome &o) {
    Gen g(404);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const std::size_t n = 1 + k % 3;
        const Pencil p = testing::random_pencil(n, g);
        const StateVector v = zero_state(n);
        const AnsatzParams th = AnsatzParams::random(n, 1 + k % 3, g);
        DeflationRecord rec;
        for (int i = 0; i < 1 + k % 2; ++i) {
            rec.push_back(DeflationEntry::from_state(0.0, testing::uniform(g, 0.1, 2.0),
                                                     testing::random_state(n, g), p.b));
        }
        const auto fd_f = testing::finite_difference(
            [&](const AnsatzParams &x) { return loss_f(x, p, v); }, th);
        const auto fd_fj = testing::finite_difference(
            [&](const AnsatzParams &x) { return loss_fj(x, p, rec, v); }, th);
        worst = std::max(worst, testing::max_abs_diff(grad_f(th, p, v), fd_f));
        worst = std::max(worst, testing::max_abs_diff(grad_fj(th, p, rec, v), fd_fj));
    }
    o.detail << "max component deviation = " << worst;
    o.require(worst <= 1e-7, "gradients within 1e-7 of finite differences");
}

void rayleigh_bounds(Outcome &o) {
    Gen g(505);
    double f_violation = 0.0;
    double fj_violation = 0.0;
    int checks = 0;
    for (std::size_t n : {1u, 2u, 3u}) {
        const Pencil p = testing::random_pencil(n, g);
        const EigenDecomposition e = generalized_eig(p);
        const double l1 = e.values.front();
        const double lr = e.values.back();
        const double gamma = lr - l1;
        for (int k = 0; k < 1000; ++k) {
            const StateVector psi = testing::random_state(n, g);
            const double f = loss_state(psi, p);
            f_violation = std::max({f_violation, (l1 - 1e-9) - f, f - (lr + 1e-9)});
            const std::size_t j = 1 + static_cast<std::size_t>(k) % (e.values.size() - 1);
            DeflationRecord rec;
            for (std::size_t i = 0; i < j; ++i) {
                rec.push_back(
                    DeflationEntry::from_state(e.values[i], gamma, column_state(e, i), p.b));
            }
            fj_violation =
                std::max(fj_violation, (e.values[j] - 1e-8) - loss_fj_state(psi, p, rec));
            ++checks;
        }
    }
    o.detail << checks << " states, F bound slack " << -f_violation << ", F_j bound slack "
             << -fj_violation;
    o.require(f_violation <= 0.0, "lambda_1 <= F <= lambda_r");
    o.require(fj_violation <= 0.0, "F_j >= lambda_j");
}

void fqge_structure(Outcome &o) {
    Gen g(606);
    double lcu_err = 0.0;
    double ascent = 0.0;
    double fixed_point = 0.0;
    double psuc_err = 0.0;
    int steps = 0;
    auto check_run = [&](const Pencil &p, const FqgeResult &r, bool monotone) {
        const Matrix a = testing::kron_sum(p.a);
        const Matrix b = testing::kron_sum(p.b);
        for (std::size_t s = 0; s + 1 < r.iterates.size(); ++s) {
            const FqgeIterate &it = r.iterates[s];
            const Lcu lcu = build_lcu(it.state, p, it.delta_used, it.value);
            const double bexp = expectation(p.b, it.state);
            const Matrix g_dense = Matrix::identity(a.rows()) -
                                   (a - b * cplx(it.value)) * (2.0 * it.delta_used / bexp);
            lcu_err = std::max(lcu_err, max_abs_diff(dense_matrix(lcu), g_dense));
            const auto g_psi = g_dense * it.state.amplitudes();
            double nrm2 = 0.0;
            for (const auto &x : g_psi) {
                nrm2 += std::norm(x);
            }
            const double psuc = nrm2 / (lcu.c_norm * lcu.c_norm * static_cast<double>(lcu.d));
            psuc_err = std::max(psuc_err, std::abs(psuc - it.success_prob));
            if (monotone) {
                ascent = std::max(ascent, r.iterates[s + 1].value - it.value);
            }
            ++steps;
        }
    };
    for (int k = 0; k < 20; ++k) {
        const std::size_t n = 1 + k % 3;
        const Pencil p = testing::random_pencil(n, g);
        const StateVector start = testing::random_state(n, g);
        FqgeConfig cfg;
        cfg.max_iters = 60;
        check_run(p, run_fqge(p, start, cfg), false);
        cfg.mode = StepMode::LineSearch;
        check_run(p, run_fqge(p, start, cfg), true);

        const EigenDecomposition e = generalized_eig(p);
        for (std::size_t j = 0; j < e.values.size(); ++j) {
            const StateVector v = normalize(column_state(e, j));
            if (residual(v, p) > 1e-12) {
                continue;
            }
            const StateVector next = normalize(
                apply_g(build_lcu(v, p, 0.1, loss_state(v, p)), v).state);
            const cplx ov = inner(v, next);
            fixed_point = std::max(fixed_point, distance(next, scale(v, ov / std::abs(ov))));
        }
    }
    o.detail << steps << " steps, LCU error " << lcu_err << ", max ascent " << ascent
             << ", fixed-point drift " << fixed_point << ", P_suc error " << psuc_err;
    o.require(lcu_err <= 1e-12, "LCU reconstruction <= 1e-12");
    o.require(ascent <= 1e-10, "line search monotone");
    o.require(fixed_point <= 1e-9, "eigenvectors are fixed points");
    o.require(psuc_err <= 1e-12, "success probability matches");
}

void decomposition(Outcome &o) {
    const PauliSum s = decompose(dense_matrix(testing::demo_pencil().a));
    const PauliSum expected =
        PauliSum::from_text({{1.0, "II"}, {0.4, "ZI"}, {0.4, "IZ"}, {0.2, "XX"}});
    double demo_err = s.size() == expected.size() ? 0.0 : 1.0;
    for (const auto &t : expected) {
        demo_err = std::max(demo_err, std::abs(s.coeff_of(t.string) - t.coeff));
    }
    Gen g(707);
    double worst = 0.0;
    bool same_terms = true;
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int k = 0; k < 25; ++k) {
            const PauliSum r = testing::random_sum(n, 2 * n + 1, g);
            const PauliSum back = decompose(dense_matrix(r), 1e-12);
            same_terms = same_terms && back.size() == r.size();
            for (const auto &t : r) {
                worst = std::max(worst, std::abs(back.coeff_of(t.string) - t.coeff));
            }
        }
    }
    o.detail << "demo deviation " << demo_err << ", random round-trip deviation " << worst;
    o.require(demo_err <= 1e-15, "demo A terms");
    o.require(same_terms, "random term sets preserved");
    o.require(worst <= 1e-10, "round trip within 1e-10");
}

void shot_budget(Outcome &o) {
    const std::vector<AllocationTerm> unit{{"A:I", TermGroup::A, 1.0, 1.0},
                                           {"B:I", TermGroup::B, 1.0, 1.0}};
    const ShotPlan plan = shot_allocation(unit, 0.1);
    o.require(plan.terms[0].shots == 200 && plan.terms[1].shots == 200 && plan.total == 400,
              "200 + 200 shots");

    Gen g(808);
    int beaten = 0;
    int trials = 0;
    for (int k = 0; k < 10; ++k) {
        std::vector<AllocationTerm> terms;
        for (int i = 0; i < 3 + k % 5; ++i) {
            terms.push_back({"t", TermGroup::A, testing::uniform(g, 0.05, 2),
                             testing::uniform(g, 0.1, 2)});
        }
        const double eps = 0.01;
        const ShotPlan opt = shot_allocation(terms, eps);
        for (int t = 0; t < 100; ++t) {
            std::vector<double> w(terms.size());
            double s = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                w[i] = testing::uniform(g, 0.01, 1.0);
                s += terms[i].coeff * terms[i].coeff * terms[i].sigma / w[i];
            }
            double total = 0.0;
            for (auto &x : w) {
                x = std::ceil(x * s / (eps * eps));
                total += x;
            }
            ++trials;
            beaten += static_cast<double>(opt.total) <= total + static_cast<double>(terms.size())
                          ? 1
                          : 0;
        }
    }
    o.require(beaten == trials, "optimal plan no larger than random feasible plans");

    const double hand = error_bound({0.01, 0.01, 0.0, 0.5, 1.56764});
    const EigenDecomposition e = generalized_eig(testing::demo_pencil());
    const double oracle = error_bound({0.01, 0.01, 0.0, e.eta1, e.values.back()});
    o.detail << "plan " << plan.terms[0].shots << "+" << plan.terms[1].shots << ", beats "
             << beaten << "/" << trials << " random plans, bound " << oracle;
    o.require(std::abs(hand - 0.0513528) <= 1e-12, "bound arithmetic");
    o.require(std::abs(oracle - 0.0513528) <= 5e-7, "bound with oracle lambda_r and eta1");
}

void oracle_validation(Outcome &o) {
    Gen g(909);
    double res = 0.0;
    double orth = 0.0;
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = 1 + k % 4;
        const Pencil p = testing::random_pencil(n, g);
        const Matrix a = dense_matrix(p.a);
        const Matrix b = dense_matrix(p.b);
        const EigenDecomposition e = generalized_eig(a, b);
        res = std::max(res, pair_residual(a, b, e));
        orth = std::max(orth, b_orthonormality_error(b, e));
    }
    auto roots = [](double qa, double qb, double qc) {
        const double d = std::sqrt(qb * qb - 4 * qa * qc);
        return std::vector<double>{(-qb - d) / (2 * qa), (-qb + d) / (2 * qa)};
    };
    std::vector<double> quad = roots(0.95, -1.28, 0.32);
    const std::vector<double> other = roots(0.63, -1.6, 0.96);
    quad.insert(quad.end(), other.begin(), other.end());
    std::sort(quad.begin(), quad.end());
    const EigenDecomposition d = generalized_eig(testing::demo_pencil());
    double block = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        block = std::max(block, std::abs(d.values[j] - quad[j]));
    }
    o.detail << "residual " << res << ", B-orthonormality " << orth << ", block roots " << block;
    o.require(res <= 1e-9, "pair residuals");
    o.require(orth <= 1e-9, "B-orthonormality");
    o.require(block <= 1e-9, "block quadratic roots");
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome &)>>> criteria{
        {"spectrum recovery", spectrum_recovery},
        {"FQGE fidelity", fqge_fidelity},
        {"noise robustness", noise_robustness},
        {"parameter-shift gradients", parameter_shift},
        {"Rayleigh and deflation bounds", rayleigh_bounds},
        {"FQGE structure", fqge_structure},
        {"Pauli decomposition", decomposition},
        {"shot allocation and error bound", shot_budget},
        {"reference solver", oracle_validation},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), o.detail.str().c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
