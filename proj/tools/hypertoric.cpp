// Command-line front end: reads an instance file and prints a JSON or table report.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "hypertoric/cli.hpp"

using namespace hypertoric;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("IOError", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int exit_code_for(const Error& e) { return e.code() == "ParseError" ? 3 : 2; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for polarized and quantized hyperplane arrangements"};
    app.require_subcommand(1);
    app.fallthrough();
    cli::Options opt;
    std::string format = "json";
    std::string input;
    bool budget_given = false;
    app.add_option("--max-degree", opt.max_degree, "Degree budget for algebra computations");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--seed", opt.seed, "Seed for randomized suites");
    app.add_option("--budget", opt.budget, "Enumeration budget for symmetry searches")
        ->each([&](const std::string&) { budget_given = true; });
    app.add_option("--count", opt.count, "Instances in a randomized verify suite");
    app.add_flag("--emit-algebra", opt.emit_algebra, "Include the full algebra in algebra reports");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"analyze", "Chamber sets, regularity and counts"},
        {"dual", "Gale dual and duality checks"},
        {"cells", "Cell partitions, orders, BBD dimensions, Goldie ranks, h-vectors"},
        {"algebra", "Graded algebra, Cartan and decomposition matrices, centre"},
        {"koszul", "Quadratic dual and Koszul complex check"},
        {"bimodules", "Shuffling and twisting bimodules, cartesian check"},
        {"symmetry", "Circuits, walls, Deligne quiver and signed-permutation groups"},
        {"verify", "Structural checks on the instance, or a randomized suite without one"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        auto* in = sub->add_option("input", input, "Instance file (JSON)");
        if (name != "verify") in->required();
    }
    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();
    if (!budget_given) opt.budget = cli::budget_from_env(opt.budget);

    try {
        std::optional<Instance> inst;
        Json echo = nullptr;
        if (!input.empty()) {
            inst = parse_instance(read_file(input));
            echo = to_json(*inst);
        }
        Json results;
        if (command == "analyze") results = cli::analyze(*inst, opt);
        else if (command == "dual") results = cli::dual(*inst, opt);
        else if (command == "cells") results = cli::cells(*inst, opt);
        else if (command == "algebra") results = cli::algebra(*inst, opt);
        else if (command == "koszul") results = cli::koszul(*inst, opt);
        else if (command == "bimodules") results = cli::bimodules(*inst, opt);
        else if (command == "symmetry") results = cli::symmetry(*inst, opt);
        else results = cli::verify(inst, opt);
        auto rep = cli::report(command, echo, results);
        if (format == "json") std::cout << rep.dump(2) << "\n";
        else std::cout << cli::render_table(rep);
        if (command == "verify" && !results["all_pass"].get<bool>()) return 1;
        return 0;
    } catch (const Error& e) {
        Json err{{"error", e.code()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return exit_code_for(e);
    }
}
