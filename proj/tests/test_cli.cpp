/**
 * @file test_cli.cpp
 * @brief End-to-end runs of the command-line tool.
 */
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hypertoric/cli.hpp"

using namespace hypertoric;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

/// Runs the tool with the given arguments; stderr is folded into the output only when asked.
Run run(const std::string& args, bool merge_stderr = false, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + std::string(HYPERTORIC_CLI) + " " + args +
                      (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string instance(const std::string& name) { return std::string(HYPERTORIC_INSTANCES) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& contents) {
    auto path = std::filesystem::temp_directory_path() / ("hypertoric_cli_" + name);
    std::ofstream(path) << contents;
    return path.string();
}

Json results_of(const Run& r) { return Json::parse(r.out).at("results"); }

}  // namespace

TEST(Cli, AnalyzeSumZeroThreeCounts) {
    auto r = run("analyze " + instance("sum_zero_3.json"));
    ASSERT_EQ(r.status, 0);
    auto res = results_of(r);
    EXPECT_EQ(res["counts"]["feasible"], 7);
    EXPECT_EQ(res["counts"]["bounded_feasible"], 3);
    EXPECT_EQ(res["bounded_feasible"], Json({"+++", "-++", "--+"}));
}

TEST(Cli, AlgebraOnNonRegularLineHasDimensionN) {
    auto r = run("algebra " + instance("diagonal_line_4.json"));
    ASSERT_EQ(r.status, 0);
    auto res = results_of(r);
    EXPECT_EQ(res["dimension"], 4);
    EXPECT_EQ(res["degree_dims"], Json({1, 0, 1, 0, 1, 0, 1}));
}

TEST(Cli, DualTwiceReturnsTheOriginalKey) {
    auto first = run("dual " + instance("sum_zero_3.json"));
    ASSERT_EQ(first.status, 0);
    auto r1 = results_of(first);
    auto path = temp_file("dual.json", r1["dual"].dump());
    auto second = run("dual " + path);
    ASSERT_EQ(second.status, 0);
    auto r2 = results_of(second);
    EXPECT_EQ(r2["dual_equivalence_key"], r1["equivalence_key"]);
    EXPECT_TRUE(r1["duality"]["all"].get<bool>());
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
    for (const char* cmd : {"analyze", "cells", "algebra --emit-algebra", "symmetry"}) {
        auto a = run(std::string(cmd) + " " + instance("sum_zero_3.json"));
        auto b = run(std::string(cmd) + " " + instance("sum_zero_3.json"));
        EXPECT_EQ(a.status, 0) << cmd;
        EXPECT_EQ(a.out, b.out) << cmd;
    }
}

TEST(Cli, TableRendersTheSameData) {
    auto r = run("analyze " + instance("sum_zero_3.json") + " --format table");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("results.counts.feasible: 7\n"), std::string::npos);
    EXPECT_NE(r.out.find("command: analyze\n"), std::string::npos);
}

TEST(Cli, EveryCommandRunsOnTheExample) {
    for (const char* cmd : {"cells", "koszul", "bimodules", "verify"}) {
        auto r = run(std::string(cmd) + " " + instance("sum_zero_3.json"));
        EXPECT_EQ(r.status, 0) << cmd;
        EXPECT_EQ(Json::parse(r.out)["command"], cmd);
    }
    auto k = results_of(run("koszul " + instance("sum_zero_3.json")));
    EXPECT_TRUE(k["koszul_check"]["koszul"].get<bool>());
    EXPECT_TRUE(k["quadratic_dual"]["matches_gale_dual"].get<bool>());
}

TEST(Cli, VerifyPassesOnExampleAndRandomSuite) {
    auto r = run("verify " + instance("sum_zero_3.json"));
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(results_of(r)["all_pass"].get<bool>());
    auto s = run("verify --seed 5 --count 5");
    EXPECT_EQ(s.status, 0);
    auto res = results_of(s);
    EXPECT_EQ(res["seed"], 5);
    EXPECT_EQ(res["failures"], Json::array());
}

TEST(Cli, VerifyOnNonRegularQuantizedInstance) {
    auto r = run("verify " + instance("diagonal_line_4.json"));
    EXPECT_EQ(r.status, 0);
}

TEST(Cli, SymmetryReport) {
    auto res = results_of(run("symmetry " + instance("sum_zero_3.json")));
    EXPECT_EQ(res["deligne_quiver"]["vertices"].size(), 2u);
    EXPECT_EQ(res["deligne_quiver"]["edges"].size(), 2u);
    EXPECT_EQ(res["weyl_groups"]["V_order"], 6);
    EXPECT_EQ(res["weyl_groups"]["W_order"], 1);
}

TEST(Cli, BudgetFromEnvironmentAndFlag) {
    auto env = results_of(run("symmetry " + instance("sum_zero_3.json"), false, "HYPO_BUDGET=2"));
    EXPECT_EQ(env["weyl_groups"]["error"], "BudgetExceeded");
    auto flag = results_of(run("symmetry " + instance("sum_zero_3.json") + " --budget 3", false, "HYPO_BUDGET=2"));
    EXPECT_EQ(flag["weyl_groups"]["V_order"], 6);
}

TEST(Cli, ParseErrorsReportPositionAndExitNonzero) {
    auto path = temp_file("bad.json", "{\n  \"n\": 3,\n  oops\n}");
    auto r = run("analyze " + path, true);
    EXPECT_EQ(r.status, 3);
    EXPECT_NE(r.out.find("ParseError"), std::string::npos);
    EXPECT_NE(r.out.find("line 3, column"), std::string::npos);
}

TEST(Cli, DomainErrorsAreSurfaced) {
    auto r = run("dual " + instance("diagonal_line_4.json"), true);
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.out.find("ParameterMismatch"), std::string::npos);
    auto bad = temp_file("lattice.json", R"({"n": 2, "lambda0_basis": [[1, 0]], "eta": [0, 0]})");
    auto s = run("analyze " + bad, true);
    EXPECT_EQ(s.status, 2);
    EXPECT_NE(s.out.find("InvalidLattice"), std::string::npos);
    EXPECT_NE(run("analyze /nonexistent.json").status, 0);
}

TEST(Cli, MissingInputIsAUsageError) {
    EXPECT_NE(run("analyze").status, 0);
    EXPECT_NE(run("").status, 0);
}

TEST(Cli, RenderTableFlattensNestedData) {
    Json j = Json::parse(R"({"a": {"b": [1, 2], "c": [{"d": "x"}]}, "e": []})");
    EXPECT_EQ(cli::render_table(j), "a.b: [1,2]\na.c[0].d: x\ne: []\n");
}
