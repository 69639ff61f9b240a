#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fidgauss/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"fidgauss: constrained fiducial inference for parametric Gaussian models"};
    app.require_subcommand(1);

    std::string config_path;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"simulate", "draw replicates from a model and write data.csv (and sites.csv)"},
        {"fit", "run one fiducial MCMC chain, write chain.csv and summary.json"},
        {"mle", "maximum-likelihood fit, write mle.json"},
        {"split", "sliding-window composite split of a data file"},
        {"replicate", "repeated simulate+fit+mle study with coverage report"}};
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->allow_extras();  // trailing key.path=value pairs override config keys
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : fidgauss::cli::kExitConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        fidgauss::cli::json cfg = fidgauss::cli::load_config(config_path);
        fidgauss::cli::apply_overrides(cfg, sub->remaining());
        return fidgauss::cli::run_command(sub->get_name(), cfg);
    } catch (const fidgauss::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return fidgauss::cli::kExitConfig;
    }
}
