#pragma once

#include <ostream>
#include <string>

#include "costbound/circuit_cost.hpp"
#include "costbound/cli/config.hpp"
#include "costbound/common.hpp"

namespace costbound::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kViolation = 2 };

int run_power(const ExperimentConfig& config, std::ostream& log);
int run_sie_sweep(const ExperimentConfig& config, std::ostream& log);
int run_cost_bound(const ExperimentConfig& config, std::ostream& log);
int run_gaussian_sweep(const ExperimentConfig& config, std::ostream& log);
int run_quench(const ExperimentConfig& config, std::ostream& log);
int run_scaling(const ExperimentConfig& config, std::ostream& log);

/// One cost-bound row: the path cost, the c = 22 entanglement lower bounds of
/// the prepared state, and the entangling-power weighted gate count.
struct CostBoundRow {
    double cost = 0.0;
    double bound_max = 0.0;
    double bound_sum = 0.0;
    double complexity = 0.0;
    double corollary = 1.0;  // complexity / (log d * cost); 1 for a zero path
    bool violation = false;
};

CostBoundRow evaluate_cost_path(const ControlPath& path, const GeneratorSet& gens, const PureState& phi,
                                const NumericPolicy& policy = default_policy());

/// Dispatches on config.command.
int run_command(const ExperimentConfig& config, std::ostream& log);

/// d^2 x d^2 unitary of a built-in gate: identity, swap, cnot, exp-zz.
CMatrix builtin_gate(const std::string& name, double angle);

/// Plain-text matrix: one row per line, whitespace-separated entries such as
/// `1`, `-0.5i`, `0.3+2i`, `1e-3-4.5e2i`.
CMatrix read_matrix_file(const std::filesystem::path& path);
Complex parse_complex(const std::string& token);

}  // namespace costbound::cli
