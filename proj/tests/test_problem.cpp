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
#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "geig/commands.hpp"
#include "support.hpp"

namespace geig {
namespace {

const std::string kDir = GEIG_PROBLEMS_DIR;

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_ws(const std::string &s) {
    std::string out;
    for (char c : s) {
        if (c != ' ' && c != '\n' && c != '\t' && c != '\r') {
            out += c;
        }
    }
    return out;
}

std::string error_of(const ojson &j) {
    try {
        (void)load_problem(parse_problem_json(j), 10);
    } catch (const ProblemError &e) {
        return e.what();
    }
    return "";
}

ojson demo_json() { return read_json_file(kDir + "/demo_2q.json"); }

TEST(ParseProblem, BundledDemo) {
    const Pencil p = parse_problem(kDir + "/demo_2q.json");
    EXPECT_EQ(p.num_qubits(), 2u);
    EXPECT_EQ(p.a.size(), 4u);
    EXPECT_EQ(p.b.size(), 4u);
    EXPECT_EQ(p.a, testing::demo_pencil().a);
    EXPECT_EQ(p.b, testing::demo_pencil().b);
}

TEST(ParseProblem, DenseInputGivesSameA) {
    const LoadedProblem lp = load_problem(kDir + "/demo_2q_dense.json", 10);
    EXPECT_TRUE(lp.a_from_dense);
    EXPECT_FALSE(lp.b_from_dense);
    EXPECT_TRUE(lp.pd_checked);
    const Pencil ref = testing::demo_pencil();
    ASSERT_EQ(lp.pencil.a.size(), ref.a.size());
    for (const auto &t : ref.a) {
        EXPECT_NEAR(lp.pencil.a.coeff_of(t.string), t.coeff, 1e-15);
    }
}

TEST(ParseProblem, RoundTripsModuloWhitespace) {
    for (const char *name : {"/demo_2q.json", "/demo_2q_dense.json"}) {
        const std::string text = slurp(kDir + name);
        const ProblemFile pf = parse_problem_json(ojson::parse(text));
        EXPECT_EQ(strip_ws(to_json(pf).dump()), strip_ws(text)) << name;
    }
}

TEST(ParseProblem, ComplexDenseEntriesRoundTrip) {
    const ojson j = ojson::parse(
        R"({"n":1,"B":[{"coeff":1.0,"ops":"I"}],"A_dense":[[1.0,[0.0,-0.5]],[[0.0,0.5],2.0]]})");
    EXPECT_EQ(to_json(parse_problem_json(j)).dump(), j.dump());
    const LoadedProblem lp = load_problem(parse_problem_json(j), 10);
    EXPECT_NEAR(lp.pencil.a.coeff_of(PauliString::parse("Y")), 0.5, 1e-15);
}

TEST(ParseProblem, BadOpsNamesCharacter) {
    ojson j = demo_json();
    j["A"][1]["ops"] = "QX";
    const std::string msg = error_of(j);
    EXPECT_NE(msg.find("'Q'"), std::string::npos) << msg;
    EXPECT_NE(msg.find("A[1].ops"), std::string::npos) << msg;
}

TEST(ParseProblem, SchemaViolations) {
    ojson j = demo_json();
    j["extra"] = 1;
    EXPECT_NE(error_of(j).find("unknown field"), std::string::npos);

    j = demo_json();
    j.erase("B");
    EXPECT_NE(error_of(j).find("\"B\""), std::string::npos);

    j = demo_json();
    j["n"] = 3;
    EXPECT_NE(error_of(j).find("expected n = 3"), std::string::npos);

    j = demo_json();
    j["n"] = "2";
    EXPECT_NE(error_of(j).find("\"n\""), std::string::npos);

    j = demo_json();
    j["A"][0]["coeff"] = "one";
    EXPECT_NE(error_of(j).find("coeff"), std::string::npos);

    j = demo_json();
    j["B"] = ojson::array();
    EXPECT_NE(error_of(j).find("at least one"), std::string::npos);
}

TEST(ParseProblem, NonHermitianDense) {
    const ojson j = ojson::parse(
        R"({"n":1,"B":[{"coeff":1.0,"ops":"I"}],"A_dense":[[1.0,0.3],[0.0,1.0]]})");
    EXPECT_NE(error_of(j).find("A_dense"), std::string::npos);
}

TEST(ParseProblem, BNotPositiveDefinite) {
    ojson j = demo_json();
    j["B"] = ojson::parse(R"([{"coeff":0.5,"ops":"II"},{"coeff":1.0,"ops":"ZZ"}])");
    EXPECT_NE(error_of(j).find("positive definite"), std::string::npos);
    // Beyond the cap the check is skipped.
    EXPECT_NO_THROW((void)load_problem(parse_problem_json(j), 1));
}

TEST(ParseProblem, MissingFile) {
    EXPECT_THROW((void)parse_problem(kDir + "/does_not_exist.json"), ProblemError);
}

TEST(Commands, FqgeSummaryAndTrace) {
    const LoadedProblem lp = load_problem(kDir + "/demo_2q.json", 10);
    std::ostringstream trace;
    const ojson s = cmd_fqge(lp, FqgeOptions{}, &trace, 10);
    EXPECT_EQ(s["status"], "converged");
    EXPECT_GE(s["oracle"]["fidelity"].get<double>(), 0.9999);
    EXPECT_LE(s["oracle"]["abs_error"].get<double>(), 1e-4);

    std::istringstream in(trace.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "s,value,residual,delta_re,delta_im,success_prob,C,d");
    int expected = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(std::stoi(line.substr(0, line.find(','))), expected++);
    }
    EXPECT_EQ(expected, s["iterations"].get<int>() + 1);
}

TEST(Commands, VqgeTraceIsDeterministic) {
    const LoadedProblem lp = load_problem(kDir + "/demo_2q.json", 10);
    VqgeOptions o;
    o.r = 2;
    o.spectrum.restarts = 2;
    o.spectrum.optimizer.iters = 20;
    std::ostringstream t1;
    std::ostringstream t2;
    const ojson s1 = cmd_vqge(lp, o, &t1, 10);
    const ojson s2 = cmd_vqge(lp, o, &t2, 10);
    EXPECT_EQ(t1.str(), t2.str());
    EXPECT_EQ(s1.dump(), s2.dump());
    EXPECT_EQ(t1.str().substr(0, t1.str().find('\n')), "level,kind,restart,step,loss,grad_norm");
    // 2 levels x 2 restarts x 21 rows + header.
    const std::string text = t1.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2 * 2 * 21 + 1);
}

TEST(Commands, OracleFieldsOnlyWithinCap) {
    const LoadedProblem lp = load_problem(kDir + "/demo_2q.json", 10);
    VqgeOptions o;
    o.r = 1;
    o.spectrum.restarts = 1;
    o.spectrum.optimizer.iters = 5;
    EXPECT_TRUE(cmd_vqge(lp, o, nullptr, 2).contains("oracle"));
    EXPECT_FALSE(cmd_vqge(lp, o, nullptr, 1).contains("oracle"));
    EXPECT_TRUE(cmd_fqge(lp, FqgeOptions{}, nullptr, 2).contains("oracle"));
    EXPECT_FALSE(cmd_fqge(lp, FqgeOptions{}, nullptr, 1).contains("oracle"));
    EXPECT_THROW((void)cmd_reference(lp, 1), std::length_error);
    o.r.reset();
    EXPECT_THROW((void)cmd_vqge(lp, o, nullptr, 1), std::invalid_argument);
}

TEST(Commands, DecomposeAndAllocate) {
    const ojson d = cmd_decompose(read_json_file(kDir + "/demo_2q_dense.json"));
    EXPECT_EQ(d["A"]["terms"].size(), 4u);
    EXPECT_FALSE(d.contains("B"));
    EXPECT_THROW((void)cmd_decompose(ojson::object()), ProblemError);

    const LoadedProblem lp = load_problem(kDir + "/demo_2q.json", 10);
    const ojson a = cmd_allocate(lp, 0.1, {});
    std::uint64_t sum = 0;
    for (const auto &t : a["terms"]) {
        sum += t["shots"].get<std::uint64_t>();
    }
    EXPECT_EQ(sum, a["total"].get<std::uint64_t>());
    EXPECT_LE(a["achieved_eps"].get<double>(), 0.1 * (1 + 1e-12));
}

TEST(Commands, OracleCapFromEnvironment) {
    ::setenv("GEIG_DENSE_CAP", "4", 1);
    EXPECT_EQ(oracle_cap(), 4u);
    ::setenv("GEIG_DENSE_CAP", "x", 1);
    EXPECT_THROW((void)oracle_cap(), std::invalid_argument);
    ::unsetenv("GEIG_DENSE_CAP");
    EXPECT_EQ(oracle_cap(), kDefaultOracleCap);
}

} // namespace
} // namespace geig
