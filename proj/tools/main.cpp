#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sawtrap/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"SAW molecular-trap batch runner"};

    std::string config_path;
    std::string out_dir;
    std::string subcommand;
    std::string format;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool seed_given = false;

    app.add_option("--config", config_path, "Path to the JSON experiment config")
        ->required();
    app.add_option("--seed", seed, "Override the config seed")
        ->each([&](const std::string&) { seed_given = true; });
    app.add_option("--out", out_dir, "Output directory (overrides config)");
    app.add_option("--jobs", jobs, "Worker count hint for sweeps");
    app.add_option("--subcommand", subcommand, "Override the config subcommand");
    app.add_option("--format", format, "Output format: csv or json");

    CLI11_PARSE(app, argc, argv);

    try {
        auto config = sawtrap::cli::ExperimentConfig::from_file(config_path);
        if (seed_given) {
            config.seed = seed;
            config.raw["seed"] = seed;
        }
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (!subcommand.empty()) {
            config.subcommand = subcommand;
            config.validate();
        }
        if (!format.empty()) {
            if (format != "csv" && format != "json")
                throw sawtrap::ConfigError("format", "expected 'csv' or 'json'");
            config.format = format;
        }
        const auto path = sawtrap::cli::run_to_disk(config);
        std::cout << path.string() << "\n";
        return 0;
    } catch (const sawtrap::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 1;
    }
}
