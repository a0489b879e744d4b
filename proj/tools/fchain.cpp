#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fchain/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"ground-state entanglement of quadratic fermion chains"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute the sweep described by a config file");
    std::string config_path;
    run->add_option("config", config_path, "path to the INI config")->required();
    int workers = 0;
    run->add_option("--workers", workers, "worker threads (overrides [compute] workers)")
        ->check(CLI::Range(1, 256));

    auto* validate =
        app.add_subcommand("validate", "cross-check the engine against dense diagonalization");
    int max_sites = 10;
    validate->add_option("--max-sites", max_sites, "largest chain size in the catalog")
        ->check(CLI::Range(4, 12));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return fchain::kExitConfigError;
    }

    try {
        if (run->parsed()) return fchain::run_from_config(config_path, workers, std::cerr);
        return fchain::run_validation(max_sites, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
