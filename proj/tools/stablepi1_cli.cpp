// stablepi1: list, run and verify the scenario catalogue; Smith normal form of stdin.

#include "stablepi1/errors.hpp"
#include "stablepi1/scenarios.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#ifndef STABLEPI1_DEFAULT_CATALOGUE
#define STABLEPI1_DEFAULT_CATALOGUE "catalogue"
#endif

namespace {

using namespace stablepi1;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

std::size_t default_cosets() {
    if (const char* env = std::getenv("STABLEPI1_MAX_COSETS")) {
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        std::cerr << "ignoring invalid STABLEPI1_MAX_COSETS=" << env << "\n";
    }
    return default_max_cosets;
}

int cmd_list(const std::filesystem::path& dir) {
    for (const auto& file : catalogue_files(dir)) {
        try {
            Scenario s = load_scenario(file);
            std::cout << s.id << "\t" << to_string(s.kind) << "\t" << s.expected.describe() << "\n";
        } catch (const std::exception& e) {
            std::cerr << file.filename().string() << ": " << e.what() << "\n";
        }
    }
    return exit_ok;
}

int cmd_run(const std::filesystem::path& dir, const std::string& id, const std::string& format, const RunOptions& opts) {
    for (const auto& file : catalogue_files(dir)) {
        Scenario s;
        try {
            s = load_scenario(file);
        } catch (const std::exception& e) {
            if (file.stem().string() != id) continue;
            std::cerr << file.filename().string() << ": " << e.what() << "\n";
            return exit_usage;
        }
        if (s.id != id) continue;
        Report r = run_scenario(s, opts);
        std::cout << (format == "json" ? report_json(r) + "\n" : report_markdown(r));
        if (!r.passed && !r.error.empty()) std::cerr << r.id << ": " << r.error << "\n";
        return r.passed ? exit_ok : exit_failed;
    }
    std::cerr << "unknown scenario: " << id << "\n";
    return exit_usage;
}

int cmd_verify(const std::filesystem::path& dir, const std::string& format, const RunOptions& opts) {
    CatalogueResult c = verify_catalogue(dir, opts);
    std::cout << (format == "json" ? catalogue_json(c) + "\n" : catalogue_markdown(c));
    return c.all_passed() ? exit_ok : exit_failed;
}

int cmd_snf(const std::string& format) {
    std::vector<std::vector<Integer>> rows;
    std::string line;
    while (std::getline(std::cin, line)) {
        std::istringstream in(line);
        std::vector<Integer> row;
        std::string tok;
        while (in >> tok) {
            try {
                row.emplace_back(tok);
            } catch (const std::invalid_argument&) {
                std::cerr << "not an integer: " << tok << "\n";
                return exit_usage;
            }
        }
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows.front().size()) {
            std::cerr << "rows have different lengths\n";
            return exit_usage;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        std::cerr << "no matrix on standard input\n";
        return exit_usage;
    }
    IntMatrix a = IntMatrix::from_rows(rows);
    SnfResult snf = smith_normal_form(a);
    AbelianInvariants cok = cokernel_invariants(a, a.cols());
    if (format == "json") {
        std::cout << "{\"D\": " << snf.D.to_string() << ", \"U\": " << snf.U.to_string() << ", \"V\": " << snf.V.to_string()
                  << ", \"cokernel\": \"" << cok.to_string() << "\"}\n";
    } else {
        std::cout << "D = " << snf.D.to_string() << "\nU = " << snf.U.to_string() << "\nV = " << snf.V.to_string()
                  << "\ncokernel: " << cok.to_string() << "\n";
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fundamental groups of stable Godeaux surfaces from gluing and lattice data"};
    app.require_subcommand(1);

    std::string format = "md";
    std::size_t max_cosets = default_cosets();
    std::string catalogue = STABLEPI1_DEFAULT_CATALOGUE;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "md"}));
    app.add_option("--max-cosets", max_cosets, "Coset table limit for Todd-Coxeter")->check(CLI::PositiveNumber);
    app.add_option("--catalogue", catalogue, "Directory of .scn scenario files");

    auto* list = app.add_subcommand("list", "List scenario ids and expected groups");
    std::string id;
    auto* run = app.add_subcommand("run", "Run one scenario");
    run->add_option("id", id, "Scenario id")->required();
    auto* verify = app.add_subcommand("verify-all", "Run every scenario in the catalogue");
    auto* snf = app.add_subcommand("snf", "Smith normal form of a matrix read from stdin, one row per line");
    for (auto* sub : {list, run, verify, snf}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    RunOptions opts{max_cosets};
    try {
        if (*list) return cmd_list(catalogue);
        if (*run) return cmd_run(catalogue, id, format, opts);
        if (*verify) return cmd_verify(catalogue, format, opts);
        if (*snf) return cmd_snf(format);
    } catch (const stablepi1::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failed;
    }
    return exit_usage;
}
