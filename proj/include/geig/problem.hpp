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
 * @file problem.hpp
 * JSON problem files: {"n": int, "A": [{"coeff": x, "ops": "ZI"}, ...],
 * "B": [...]} with optional dense "A_dense" / "B_dense" matrices (rows of
 * numbers or [re, im] pairs) used in place of the term lists.
 */
#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "pauli.hpp"
#include "pencil.hpp"
#include "reference.hpp"

namespace geig {

using ojson = nlohmann::ordered_json;

/// Schema or validation failure in a problem file.
class ProblemError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct TermSpec {
    double coeff = 0.0;
    std::string ops;
};

struct ProblemFile {
    std::size_t n = 0;
    std::optional<std::vector<TermSpec>> a;
    std::optional<std::vector<TermSpec>> b;
    std::optional<Matrix> a_dense;
    std::optional<Matrix> b_dense;
};

namespace detail {
inline std::vector<TermSpec> parse_terms(const ojson &j, const std::string &field,
                                         std::size_t n) {
    if (!j.is_array()) {
        throw ProblemError("field \"" + field + "\" must be an array of terms");
    }
    std::vector<TermSpec> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto &t = j[i];
        const std::string where = field + "[" + std::to_string(i) + "]";
        if (!t.is_object()) {
            throw ProblemError("field \"" + where + "\" must be an object");
        }
        if (!t.contains("coeff") || !t["coeff"].is_number()) {
            throw ProblemError("field \"" + where + ".coeff\" must be a number");
        }
        if (!t.contains("ops") || !t["ops"].is_string()) {
            throw ProblemError("field \"" + where + ".ops\" must be a string");
        }
        TermSpec spec{t["coeff"].get<double>(), t["ops"].get<std::string>()};
        if (spec.ops.size() != n) {
            throw ProblemError("field \"" + where + ".ops\" = \"" + spec.ops + "\" has " +
                               std::to_string(spec.ops.size()) + " characters, expected n = " +
                               std::to_string(n));
        }
        try {
            (void)PauliString::parse(spec.ops);
        } catch (const std::invalid_argument &e) {
            throw ProblemError("field \"" + where + ".ops\": " + e.what());
        }
        out.push_back(std::move(spec));
    }
    return out;
}

inline Matrix parse_dense(const ojson &j, const std::string &field, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    if (!j.is_array() || j.size() != dim) {
        throw ProblemError("field \"" + field + "\" must be an array of " +
                           std::to_string(dim) + " rows");
    }
    Matrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        if (!j[r].is_array() || j[r].size() != dim) {
            throw ProblemError("field \"" + field + "[" + std::to_string(r) +
                               "]\" must have " + std::to_string(dim) + " entries");
        }
        for (std::size_t c = 0; c < dim; ++c) {
            const auto &e = j[r][c];
            if (e.is_number()) {
                m(r, c) = e.get<double>();
            } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
            } else {
                throw ProblemError("field \"" + field + "[" + std::to_string(r) + "][" +
                                   std::to_string(c) + "]\" must be a number or [re, im]");
            }
        }
    }
    return m;
}

inline ojson dense_to_json(const Matrix &m) {
    ojson rows = ojson::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        ojson row = ojson::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const cplx x = m(r, c);
            row.push_back(x.imag() == 0.0 ? ojson(x.real()) : ojson::array({x.real(), x.imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ojson terms_to_json(const std::vector<TermSpec> &terms) {
    ojson arr = ojson::array();
    for (const auto &t : terms) {
        arr.push_back({{"coeff", t.coeff}, {"ops", t.ops}});
    }
    return arr;
}
} // namespace detail

inline ProblemFile parse_problem_json(const ojson &j) {
    if (!j.is_object()) {
        throw ProblemError("problem file must be a JSON object");
    }
    for (const auto &[key, value] : j.items()) {
        if (key != "n" && key != "A" && key != "B" && key != "A_dense" && key != "B_dense") {
            throw ProblemError("unknown field \"" + key + "\"");
        }
    }
    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1 ||
        j["n"].get<long long>() > 30) {
        throw ProblemError("field \"n\" must be an integer in [1, 30]");
    }
    ProblemFile pf;
    pf.n = j["n"].get<std::size_t>();
    if (j.contains("A")) {
        pf.a = detail::parse_terms(j["A"], "A", pf.n);
    }
    if (j.contains("B")) {
        pf.b = detail::parse_terms(j["B"], "B", pf.n);
    }
    if (j.contains("A_dense")) {
        pf.a_dense = detail::parse_dense(j["A_dense"], "A_dense", pf.n);
    }
    if (j.contains("B_dense")) {
        pf.b_dense = detail::parse_dense(j["B_dense"], "B_dense", pf.n);
    }
    if (pf.a.has_value() == pf.a_dense.has_value()) {
        throw ProblemError("exactly one of \"A\" and \"A_dense\" must be given");
    }
    if (pf.b.has_value() == pf.b_dense.has_value()) {
        throw ProblemError("exactly one of \"B\" and \"B_dense\" must be given");
    }
    if (pf.b && pf.b->empty()) {
        throw ProblemError("field \"B\" must contain at least one term");
    }
    return pf;
}

/// Canonical key order n, A, B, A_dense, B_dense.
inline ojson to_json(const ProblemFile &pf) {
    ojson j;
    j["n"] = pf.n;
    if (pf.a) {
        j["A"] = detail::terms_to_json(*pf.a);
    }
    if (pf.b) {
        j["B"] = detail::terms_to_json(*pf.b);
    }
    if (pf.a_dense) {
        j["A_dense"] = detail::dense_to_json(*pf.a_dense);
    }
    if (pf.b_dense) {
        j["B_dense"] = detail::dense_to_json(*pf.b_dense);
    }
    return j;
}

inline ojson read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ProblemError("cannot open \"" + path + "\"");
    }
    try {
        return ojson::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ProblemError("\"" + path + "\" is not valid JSON: " + e.what());
    }
}

struct LoadedProblem {
    ProblemFile file;
    Pencil pencil;
    bool a_from_dense = false;
    bool b_from_dense = false;
    bool pd_checked = false;
};

inline PauliSum to_pauli_sum(const std::vector<TermSpec> &terms, std::size_t n) {
    std::vector<PauliTerm> out;
    for (const auto &t : terms) {
        out.push_back({t.coeff, PauliString::parse(t.ops)});
    }
    return {n, std::move(out)};
}

/// Builds and validates the pencil. B is checked for positive definiteness
/// whenever n <= dense_cap.
inline LoadedProblem load_problem(const ProblemFile &pf, std::size_t dense_cap) {
    auto side = [&](const std::optional<std::vector<TermSpec>> &terms,
                    const std::optional<Matrix> &dense, const char *name) {
        if (terms) {
            return to_pauli_sum(*terms, pf.n);
        }
        try {
            return decompose(*dense);
        } catch (const std::exception &e) {
            throw ProblemError(std::string("field \"") + name + "_dense\": " + e.what());
        }
    };
    PauliSum a = side(pf.a, pf.a_dense, "A");
    PauliSum b = side(pf.b, pf.b_dense, "B");
    LoadedProblem lp{pf, Pencil(std::move(a), std::move(b)), !pf.a.has_value(),
                     !pf.b.has_value(), false};
    if (pf.n <= dense_cap) {
        try {
            (void)cholesky(dense_matrix(lp.pencil.b, dense_cap));
        } catch (const NotPositiveDefinite &) {
            throw ProblemError("B is not positive definite");
        }
        lp.pd_checked = true;
    }
    return lp;
}

inline LoadedProblem load_problem(const std::string &path, std::size_t dense_cap) {
    return load_problem(parse_problem_json(read_json_file(path)), dense_cap);
}

/// Reads a problem file and returns its validated pencil.
inline Pencil parse_problem(const std::string &path, std::size_t dense_cap = 10) {
    return load_problem(path, dense_cap).pencil;
}

inline ojson to_json(const PauliSum &s) {
    ojson arr = ojson::array();
    for (const auto &t : s) {
        arr.push_back({{"coeff", t.coeff}, {"ops", t.string.to_string()}});
    }
    return arr;
}

} // namespace geig
