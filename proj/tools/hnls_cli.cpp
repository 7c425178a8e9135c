#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hnls/errors.hpp"
#include "hnls/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Boundary value solver for higher-order dispersive equations on a finite interval"};
    app.require_subcommand(1);

    std::string config;
    std::string mode = "linear";
    std::string out;
    int refine_level = 0;
    auto* solve = app.add_subcommand("solve", "Solve a scenario and write field.csv, norms.csv and diagnostics.json");
    solve->add_option("--config", config, "Scenario JSON file")->required();
    solve->add_option("--mode", mode, "linear, nonlinear, reduced, oracle or compare");
    solve->add_option("--out", out, "Output directory (defaults to outputs.directory)");
    solve->add_option("--refine", refine_level, "Grid refinement level")->check(CLI::Range(0, 6));

    auto* compare = app.add_subcommand("compare", "Solve a scenario and compare with the finite-difference oracle");
    compare->add_option("--config", config, "Scenario JSON file")->required();
    compare->add_option("--out", out, "Output directory (defaults to outputs.directory)");
    compare->add_option("--refine", refine_level, "Grid refinement level")->check(CLI::Range(0, 6));

    auto* norms = app.add_subcommand("norms", "Write the norm table of a scenario's data");
    norms->add_option("--config", config, "Scenario JSON file")->required();
    norms->add_option("--out", out, "Output directory (defaults to outputs.directory)");

    std::string suite = "all";
    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "Run a property verification suite");
    verify->add_option("--suite", suite, "Suite name or all");
    verify->add_option("--seed", seed, "Sampling seed");
    verify->add_option("--out", out, "Directory for verify_<suite>.json (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return hnls::kExitInvalid;
    }

    try {
        if (*solve) return hnls::run_scenario(config, hnls::parse_mode(mode), out, refine_level, std::cerr);
        if (*compare) return hnls::run_scenario(config, hnls::RunMode::Compare, out, refine_level, std::cerr);
        if (*norms) return hnls::run_norms(config, out, std::cerr);
        if (*verify) return hnls::run_verify_command(suite, seed, out, out.empty() ? std::cout : std::cerr);
    } catch (const hnls::ConfigInvalid& e) {
        std::cerr << "ConfigInvalid: " << e.what() << '\n';
        return hnls::kExitInvalid;
    } catch (const hnls::Error& e) {
        std::cerr << e.name() << ": " << e.what() << '\n';
        return hnls::kExitSolverError;
    }
    return hnls::kExitInvalid;
}
