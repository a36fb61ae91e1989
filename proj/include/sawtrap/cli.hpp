#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sawtrap/errors.hpp"

namespace sawtrap::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Rectangular result set with self-describing metadata.
struct ResultTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    bool had_errors = false;  // sweep points that failed and were recorded

    void add_row(std::vector<std::string> row);
    std::string to_csv() const;
    nlohmann::json to_json() const;
};

struct SweepAxis {
    std::string path;  // dotted JSON path, e.g. "hubbard.z"
    double start = 0.0;
    double stop = 0.0;
    int count = 1;
};

struct ExperimentConfig {
    nlohmann::json raw;
    std::string subcommand;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = ".";
    std::string format = "csv";  // or "json"
    std::vector<SweepAxis> axes;

    static ExperimentConfig from_file(const std::filesystem::path& path);
    static ExperimentConfig from_json(const nlohmann::json& j);
    void validate() const;
};

/// "%.17g" rendering used for every floating-point cell.
std::string format_double(double value);

/// FNV-1a over the canonical serialization.
std::uint64_t hash_config(const nlohmann::json& config);

/// Evaluate the configured subcommand once.
ResultTable run(const ExperimentConfig& config);

/// Cartesian product over the sweep axes, rows in axis order.
ResultTable sweep(const ExperimentConfig& config);

/// Run (or sweep, when axes are present) and write the table to the output
/// directory in the configured format. Returns the written path.
std::filesystem::path run_to_disk(const ExperimentConfig& config);

}  // namespace sawtrap::cli
