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
// geig: command-line runner for the generalized eigensolvers.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geig/commands.hpp"

namespace {

int fail(const std::string &kind, const std::string &message) {
    geig::ojson err{{"error", kind}, {"message", message}};
    std::cerr << err.dump() << '\n';
    return 1;
}

std::unique_ptr<std::ofstream> open_trace(const std::string &path) {
    if (path.empty()) {
        return nullptr;
    }
    auto f = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*f) {
        throw std::runtime_error("cannot open trace file " + path);
    }
    return f;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Generalized eigenvalue solvers over Pauli-sum pencils"};
    app.require_subcommand(1);

    std::string problem_path;
    std::string trace_path;

    // vqge
    auto *vqge = app.add_subcommand("vqge", "Variational solver with deflation");
    geig::VqgeOptions vopts;
    std::size_t r = 0;
    int iters = 200;
    double lr = 0.1;
    double target_eps = 0.0;
    vqge->add_option("problem", problem_path, "Problem JSON")->required()->check(CLI::ExistingFile);
    vqge->add_option("--layers", vopts.spectrum.layers, "Ansatz layers")->check(CLI::Range(1, 64));
    vqge->add_option("--iters", iters, "Optimizer iterations")->check(CLI::Range(1, 1000000));
    vqge->add_option("--r", r, "Number of eigenvalues (default: all distinct)")
        ->check(CLI::Range(1, 1 << 20));
    vqge->add_option("--seed", vopts.spectrum.seed, "RNG seed");
    vqge->add_option("--restarts", vopts.spectrum.restarts, "Random restarts per level")
        ->check(CLI::Range(1, 1000));
    vqge->add_option("--lr", lr, "Adam learning rate")->check(CLI::PositiveNumber);
    vqge->add_option("--entangler", vopts.spectrum.entangler, "linear or ring")
        ->check(CLI::IsMember({"linear", "ring"}));
    vqge->add_option("--shots", vopts.spectrum.shots, "Shots per estimate (0 = exact)");
    vqge->add_option("--target-eps", target_eps, "Report shot plans for this precision")
        ->check(CLI::PositiveNumber);
    vqge->add_option("--trace", trace_path, "CSV trace output");

    // fqge
    auto *fqge = app.add_subcommand("fqge", "Iterative gradient-descent solver");
    geig::FqgeOptions fopts;
    bool line_search = false;
    auto *delta_opt = fqge->add_option("--delta", fopts.config.delta, "Fixed step size")
                          ->check(CLI::PositiveNumber);
    fqge->add_flag("--line-search", line_search, "Optimal step from a 2x2 pencil")
        ->excludes(delta_opt);
    fqge->add_option("problem", problem_path, "Problem JSON")->required()->check(CLI::ExistingFile);
    fqge->add_option("--epsilon", fopts.config.epsilon, "Residual tolerance")
        ->check(CLI::PositiveNumber);
    fqge->add_option("--max-iters", fopts.config.max_iters, "Iteration cap")
        ->check(CLI::Range(0, 100000000));
    fqge->add_option("--noise-sigma", fopts.config.noise_sigma, "Gaussian noise scale")
        ->check(CLI::NonNegativeNumber);
    fqge->add_option("--seed", fopts.config.seed, "Noise RNG seed");
    fqge->add_option("--trace", trace_path, "CSV trace output");

    // decompose
    auto *dec = app.add_subcommand("decompose", "Pauli decomposition of dense matrices");
    double tol = geig::kDefaultDecomposeTol;
    dec->add_option("input", problem_path, "JSON with matrix, A_dense or B_dense")
        ->required()
        ->check(CLI::ExistingFile);
    dec->add_option("--tol", tol, "Drop terms at or below this magnitude")
        ->check(CLI::NonNegativeNumber);

    // reference
    auto *ref = app.add_subcommand("reference", "Dense Cholesky/Jacobi oracle");
    ref->add_option("problem", problem_path, "Problem JSON")->required()->check(CLI::ExistingFile);

    // allocate
    auto *alloc = app.add_subcommand("allocate", "Optimal shot allocation");
    double alloc_eps = 1e-2;
    double sigma = 1.0;
    std::vector<double> gammas;
    alloc->add_option("problem", problem_path, "Problem JSON")->required()->check(CLI::ExistingFile);
    alloc->add_option("--target-eps", alloc_eps, "Pseudo-error target")->check(CLI::PositiveNumber);
    alloc->add_option("--sigma", sigma, "Single-shot variance")->check(CLI::PositiveNumber);
    alloc->add_option("--gammas", gammas, "Penalty weights of overlap terms")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return fail("usage", e.what());
    }

    try {
        const std::size_t cap = geig::oracle_cap();
        geig::ojson summary;
        if (*vqge) {
            vopts.spectrum.optimizer.iters = iters;
            vopts.spectrum.optimizer.lr = lr;
            if (r > 0) {
                vopts.r = r;
            }
            if (target_eps > 0) {
                vopts.target_eps = target_eps;
            }
            const auto problem = geig::load_problem(problem_path, cap);
            auto trace = open_trace(trace_path);
            summary = geig::cmd_vqge(problem, vopts, trace.get(), cap);
        } else if (*fqge) {
            fopts.config.mode = line_search ? geig::StepMode::LineSearch : geig::StepMode::Fixed;
            const auto problem = geig::load_problem(problem_path, cap);
            auto trace = open_trace(trace_path);
            summary = geig::cmd_fqge(problem, fopts, trace.get(), cap);
        } else if (*dec) {
            summary = geig::cmd_decompose(geig::read_json_file(problem_path), tol);
        } else if (*ref) {
            summary = geig::cmd_reference(geig::load_problem(problem_path, cap), cap);
        } else if (*alloc) {
            summary = geig::cmd_allocate(geig::load_problem(problem_path, cap), alloc_eps,
                                         gammas, sigma);
        }
        std::cout << summary.dump(2) << '\n';
    } catch (const geig::ProblemError &e) {
        return fail("problem", e.what());
    } catch (const std::invalid_argument &e) {
        return fail("invalid_argument", e.what());
    } catch (const std::domain_error &e) {
        return fail("domain_error", e.what());
    } catch (const std::length_error &e) {
        return fail("length_error", e.what());
    } catch (const std::exception &e) {
        return fail("runtime_error", e.what());
    }
    return 0;
}
