#include "costbound/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace costbound::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    throw Error(ErrorKind::ParseError, "invalid value '" + value + "' for '" + key + "'");
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end) bad_value(key, value);
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    const double x = parse_number<double>(key, value);
    if (!std::isfinite(x)) bad_value(key, value);
    return x;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    bad_value(key, value);
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number<int>(key, trim(item)));
    if (out.empty()) bad_value(key, value);
    return out;
}

using PolicyField = double NumericPolicy::*;

const std::map<std::string, PolicyField>& policy_fields() {
    static const std::map<std::string, PolicyField> fields = {
        {"hermitian_tol", &NumericPolicy::hermitian_tol},
        {"unitary_tol", &NumericPolicy::unitary_tol},
        {"psd_tol", &NumericPolicy::psd_tol},
        {"trace_tol", &NumericPolicy::trace_tol},
        {"state_norm_tol", &NumericPolicy::state_norm_tol},
        {"entropy_clip", &NumericPolicy::entropy_clip},
        {"log_support_clip", &NumericPolicy::log_support_clip},
        {"degenerate_band", &NumericPolicy::degenerate_band},
        {"branch_tie_tol", &NumericPolicy::branch_tie_tol},
        {"expm_norm_limit", &NumericPolicy::expm_norm_limit},
        {"richardson_rel_tol", &NumericPolicy::richardson_rel_tol},
        {"richardson_abs_floor", &NumericPolicy::richardson_abs_floor},
        {"symmetric_tol", &NumericPolicy::symmetric_tol},
        {"uncertainty_tol", &NumericPolicy::uncertainty_tol},
        {"symplectic_floor_tol", &NumericPolicy::symplectic_floor_tol},
        {"purity_tol", &NumericPolicy::purity_tol},
        {"entropy_gap_clip", &NumericPolicy::entropy_gap_clip},
        {"near_singular_gap", &NumericPolicy::near_singular_gap},
        {"rank_rel_tol", &NumericPolicy::rank_rel_tol},
    };
    return fields;
}

}  // namespace

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value) {
    using Setter = std::function<void(const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"schema_version",
         [&](const std::string& v) {
             if (parse_number<int>(key, v) != kSchemaVersion) {
                 throw Error(ErrorKind::ParseError, "unsupported schema_version " + v);
             }
         }},
        {"command", [&](const std::string& v) { c.command = v; }},
        {"seed", [&](const std::string& v) { c.seed = parse_number<std::uint64_t>(key, v); }},
        {"out", [&](const std::string& v) { c.out_dir = v; }},
        {"samples", [&](const std::string& v) { c.samples = parse_number<int>(key, v); }},
        {"n", [&](const std::string& v) { c.n = parse_number<int>(key, v); }},
        {"d", [&](const std::string& v) { c.d = parse_number<int>(key, v); }},
        {"model", [&](const std::string& v) { c.model = v; }},
        {"svg", [&](const std::string& v) { c.svg = parse_bool(key, v); }},
        {"gate", [&](const std::string& v) { c.gate = v; }},
        {"angle", [&](const std::string& v) { c.angle = parse_double(key, v); }},
        {"matrix_file", [&](const std::string& v) { c.matrix_file = v; }},
        {"J", [&](const std::string& v) { c.J = parse_double(key, v); }},
        {"g", [&](const std::string& v) { c.g = parse_double(key, v); }},
        {"periodic", [&](const std::string& v) { c.periodic = parse_bool(key, v); }},
        {"omega", [&](const std::string& v) { c.omega = parse_double(key, v); }},
        {"kappa", [&](const std::string& v) { c.kappa = parse_double(key, v); }},
        {"time_points", [&](const std::string& v) { c.time_points = parse_number<int>(key, v); }},
        {"t_max", [&](const std::string& v) { c.t_max = parse_double(key, v); }},
        {"fit_lo", [&](const std::string& v) { c.fit_lo = parse_double(key, v); }},
        {"fit_hi", [&](const std::string& v) { c.fit_hi = parse_double(key, v); }},
        {"sizes", [&](const std::string& v) { c.sizes = parse_int_list(key, v); }},
        {"steps", [&](const std::string& v) { c.steps = parse_int_list(key, v); }},
        {"max_modes", [&](const std::string& v) { c.max_modes = parse_number<int>(key, v); }},
        {"bins", [&](const std::string& v) { c.bins = parse_number<int>(key, v); }},
    };
    if (const auto it = setters.find(key); it != setters.end()) {
        it->second(value);
        return;
    }
    if (key.rfind("tol.", 0) == 0) {
        const auto& fields = policy_fields();
        if (const auto it = fields.find(key.substr(4)); it != fields.end()) {
            const double x = parse_double(key, value);
            if (!(x > 0.0)) bad_value(key, value);
            c.policy.*(it->second) = x;
            return;
        }
    }
    throw Error(ErrorKind::ParseError, "unknown config key '" + key + "'");
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": empty key");
        if (!out.emplace(key, value).second) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": duplicate key '" + key + "'");
        }
    }
    return out;
}

void load_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto settings = parse_config_text(buffer.str());
    if (!settings.contains("schema_version")) {
        throw Error(ErrorKind::ParseError, "config file lacks schema_version");
    }
    for (const auto& [key, value] : settings) apply_setting(config, key, value);
}

}  // namespace costbound::cli
