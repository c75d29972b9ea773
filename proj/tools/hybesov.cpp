#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hybesov/commands.hpp"
#include "hybesov/kernels.hpp"

int main(int argc, char** argv) {
    using namespace hybesov;

    CLI::App app{"Hybrid Besov toolkit: Littlewood-Paley analysis, damped Euler and porous medium solvers"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir;
    app.add_option("-c,--config", config_path, "TOML experiment configuration")->check(CLI::ExistingFile);
    app.add_option("-o,--out", out_dir, "output directory (overrides [output].dir)");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run invariant suites (lp, bony, spectral, solvers or all)");
    verify->add_option("suite", suite, "suite name")->check(CLI::IsMember({"lp", "bony", "spectral", "solvers", "all"}));

    std::string field_path;
    auto* decompose = app.add_subcommand("decompose", "dyadic decomposition and regime semi-norms of a field");
    decompose->add_option("--field", field_path, "binary field dump (default: configured initial c)")
        ->check(CLI::ExistingFile);

    app.add_subcommand("spectrum", "eigenvalues of the linearized symbol");
    app.add_subcommand("simulate", "damped Euler run with norm history");
    app.add_subcommand("simulate-pme", "porous medium run with norm history");
    app.add_subcommand("relax-limit", "eps sweep of the Euler to porous medium error");
    app.add_subcommand("damped-mode", "eps sweep of the damped mode norms");
    app.add_subcommand("sequence", "validate the configured integrability sequence");
    app.add_subcommand("frequency-map", "draw the frequency regime diagram");

    CLI11_PARSE(app, argc, argv);

    try {
        kernels::configure_threads_from_env();
        ExperimentConfig config = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
        if (!out_dir.empty()) config.dir = out_dir;
        config.validate();

        const std::string name = app.get_subcommands().front()->get_name();
        std::ostream& out = std::cout;
        if (name == "verify") return cmd_verify(config, suite, out);
        if (name == "decompose") {
            std::optional<std::filesystem::path> field;
            if (!field_path.empty()) field = field_path;
            return cmd_decompose(config, field, out);
        }
        if (name == "spectrum") return cmd_spectrum(config, out);
        if (name == "simulate") return cmd_simulate(config, out);
        if (name == "simulate-pme") return cmd_simulate_pme(config, out);
        if (name == "relax-limit") return cmd_relax_limit(config, out);
        if (name == "damped-mode") return cmd_damped_mode(config, out);
        if (name == "sequence") return cmd_sequence(config, out);
        if (name == "frequency-map") return cmd_frequency_map(config, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
