#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "costbound/common.hpp"

namespace costbound::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 1234567;

struct ExperimentConfig {
    std::string command;
    std::uint64_t seed = kDefaultSeed;
    std::filesystem::path out_dir = ".";
    std::optional<int> samples;
    std::optional<int> n;
    int d = 2;
    std::string model = "tfim";  // tfim | harmonic
    bool svg = false;

    // power
    std::string gate = "swap";  // identity | swap | cnot | exp-zz
    double angle = 0.1;
    std::filesystem::path matrix_file;

    // model parameters
    double J = 1.0;
    double g = 1.0;
    bool periodic = false;
    double omega = 1.0;
    double kappa = 0.45;

    // quench
    int time_points = 0;  // 0: model default
    double t_max = 0.0;   // 0: 1.5 n / v
    std::optional<double> fit_lo;
    std::optional<double> fit_hi;

    // sweeps
    std::vector<int> sizes;  // sie-sweep, cost-bound and scaling system sizes
    std::vector<int> steps = {16, 32, 64};
    int max_modes = 20;
    int bins = 8;

    NumericPolicy policy;
};

/// Applies one `key = value` setting. Unknown keys and malformed values
/// raise ParseError.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Reads a key-value file: one `key = value` per line, `#` starts a comment,
/// and `schema_version = 1` is required.
void load_config_file(ExperimentConfig& config, const std::filesystem::path& path);

std::map<std::string, std::string> parse_config_text(const std::string& text);

}  // namespace costbound::cli
