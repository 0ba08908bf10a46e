// costbound: entanglement bounds on circuit cost, from the command line.
//
//   costbound power --gate swap
//   costbound sie-sweep --samples 10000 --seed 7 --out results/
//   costbound quench --model tfim --n 12 --svg
//
// Settings come from defaults, then --config FILE (key = value lines), then
// flags. Exit status: 0 success, 1 usage or I/O error, 2 violated invariant.

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "costbound/cli/commands.hpp"
#include "costbound/cli/config.hpp"

int main(int argc, char** argv) {
    using namespace costbound::cli;

    CLI::App app{"Entanglement lower bounds on quantum circuit cost"};
    app.set_version_flag("--version", "costbound 1.0");

    std::string command;
    std::optional<std::string> config_path, out, model, gate, matrix_file;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples, n, d;
    std::optional<double> angle;
    bool svg = false;
    std::vector<std::string> overrides;

    app.add_option("command", command, "power | sie-sweep | cost-bound | gaussian-sweep | quench | scaling")
        ->required()
        ->check(CLI::IsMember({"power", "sie-sweep", "cost-bound", "gaussian-sweep", "quench", "scaling"}));
    app.add_option("--config", config_path, "key = value config file");
    app.add_option("--seed", seed, "64-bit run seed");
    app.add_option("--out", out, "output directory");
    app.add_option("--samples", samples, "ensemble size");
    app.add_option("--n", n, "sites or modes");
    app.add_option("--d", d, "local dimension");
    app.add_option("--model", model, "tfim | harmonic");
    app.add_flag("--svg", svg, "also write an SVG plot (quench)");
    app.add_option("--gate", gate, "identity | swap | cnot | exp-zz (power)");
    app.add_option("--angle", angle, "exp-zz angle (power)");
    app.add_option("--matrix-file", matrix_file, "unitary as text, one row per line (power)");
    app.add_option("--set", overrides, "extra key=value settings, as in a config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kSuccess : kUsageError;
    }

    try {
        ExperimentConfig config;
        if (config_path) load_config_file(config, *config_path);
        for (const auto& item : overrides) {
            const auto settings = parse_config_text(item);
            for (const auto& [key, value] : settings) apply_setting(config, key, value);
        }
        config.command = command;
        if (seed) config.seed = *seed;
        if (out) config.out_dir = *out;
        if (samples) config.samples = *samples;
        if (n) config.n = *n;
        if (d) config.d = *d;
        if (model) config.model = *model;
        if (svg) config.svg = true;
        if (gate) config.gate = *gate;
        if (angle) config.angle = *angle;
        if (matrix_file) config.matrix_file = *matrix_file;
        return run_command(config, std::cout);
    } catch (const costbound::Error& e) {
        std::cerr << "error (" << costbound::to_string(e.kind()) << "): " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
}
