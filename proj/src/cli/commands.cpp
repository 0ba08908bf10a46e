#include "costbound/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "costbound/circuit_cost.hpp"
#include "costbound/cli/output.hpp"
#include "costbound/dense_core.hpp"
#include "costbound/gaussian_cv.hpp"
#include "costbound/parallel.hpp"
#include "costbound/quench_lab.hpp"
#include "costbound/random.hpp"
#include "costbound/spin_entanglement.hpp"

namespace costbound::cli {

namespace {

using nlohmann::json;

constexpr double kProvenConstant = 22.0;
constexpr double kConjecturedConstant = 2.05;
constexpr double kResidualHardLimit = 1e-3;
constexpr double kCrossValidationGap = 1e-4;

void save_json(const std::filesystem::path& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

int require_samples(const ExperimentConfig& config, int fallback) {
    const int samples = config.samples.value_or(fallback);
    if (samples < 0) throw Error(ErrorKind::InvalidArgument, "samples must be non-negative");
    return samples;
}

std::vector<int> sizes_or(const ExperimentConfig& config, std::vector<int> fallback) {
    if (config.n) return {*config.n};
    return config.sizes.empty() ? fallback : config.sizes;
}

// Nearest-rank quantile of an unsorted sample.
double quantile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
    return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

json nullable(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

QuenchModel model_of(const ExperimentConfig& config) {
    if (config.model == "tfim") return TfimModel{config.J, config.g, config.periodic};
    if (config.model == "harmonic") return HarmonicChainModel{config.omega, config.kappa};
    throw Error(ErrorKind::InvalidArgument, "unknown model '" + config.model + "' (tfim | harmonic)");
}

QuenchSpec quench_spec(const ExperimentConfig& config, int n) {
    QuenchSpec spec;
    spec.model = model_of(config);
    spec.n = n;
    const bool spin = std::holds_alternative<TfimModel>(spec.model);
    const int points = config.time_points > 0 ? config.time_points : (spin ? 121 : 25);
    if (points == 1) {
        spec.times = {0.0};
    } else if (config.t_max > 0.0) {
        for (int i = 0; i < points; ++i) spec.times.push_back(config.t_max * i / (points - 1));
    } else {
        spec.times = default_times(spec.model, n, points);
    }
    return spec;
}

GrowthCurve run_curve(const QuenchSpec& spec, const NumericPolicy& policy) {
    return std::holds_alternative<TfimModel>(spec.model) ? quench_spin(spec, policy) : quench_gaussian(spec, policy);
}

PureState random_product_state(int n, int d, Rng& rng) {
    std::vector<CVector> locals;
    locals.reserve(n);
    for (int i = 0; i < n; ++i) locals.push_back(complex_gaussian_vector(d, rng).normalized());
    return PureState::product(locals);
}

}  // namespace

CMatrix builtin_gate(const std::string& name, double angle) {
    CMatrix u = CMatrix::Zero(4, 4);
    if (name == "identity") return CMatrix::Identity(4, 4);
    if (name == "swap") {
        u(0, 0) = u(1, 2) = u(2, 1) = u(3, 3) = 1.0;
        return u;
    }
    if (name == "cnot") {
        u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
        return u;
    }
    if (name == "exp-zz") {
        const Complex a = std::exp(Complex(0.0, -angle));
        const Complex b = std::exp(Complex(0.0, angle));
        u(0, 0) = a;
        u(1, 1) = b;
        u(2, 2) = b;
        u(3, 3) = a;
        return u;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown gate '" + name + "' (identity | swap | cnot | exp-zz)");
}

Complex parse_complex(const std::string& token) {
    auto fail = [&]() -> Complex { throw Error(ErrorKind::ParseError, "malformed complex entry '" + token + "'"); };
    auto number = [&](const std::string& text) {
        if (text.empty()) fail();
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(text, &used);
        } catch (const std::exception&) {
            fail();
        }
        if (used != text.size() || !std::isfinite(x)) fail();
        return x;
    };
    if (token.empty()) return fail();
    if (token.back() != 'i') return {number(token), 0.0};
    const std::string body = token.substr(0, token.size() - 1);
    // split before the sign that starts the imaginary part (not an exponent sign)
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imaginary = [&](const std::string& text) {
        if (text.empty() || text == "+") return 1.0;
        if (text == "-") return -1.0;
        return number(text);
    };
    if (split == std::string::npos) return {0.0, imaginary(body)};
    return {number(body.substr(0, split)), imaginary(body.substr(split))};
}

CMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read matrix file " + path.string());
    std::vector<std::vector<Complex>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream tokens(line);
        std::vector<Complex> row;
        for (std::string token; tokens >> token;) row.push_back(parse_complex(token));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorKind::ParseError, "matrix file is empty");
    const std::size_t dim = rows.size();
    CMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (rows[i].size() != dim) throw Error(ErrorKind::ParseError, "matrix file is not square");
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

int run_power(const ExperimentConfig& config, std::ostream& log) {
    const bool from_file = !config.matrix_file.empty();
    const CMatrix u = from_file ? read_matrix_file(config.matrix_file) : builtin_gate(config.gate, config.angle);
    int d = config.d;
    if (from_file) {
        d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(u.rows()))));
        if (d * d != u.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix dimension is not a square d^2");
    } else if (d != 2) {
        throw Error(ErrorKind::InvalidArgument, "built-in gates act on qubits (d = 2)");
    }
    const double power = entangling_power(u, d, config.policy);
    const RVector spectrum = hermitian_eig(principal_log_unitary(u, config.policy), config.policy).values;

    json doc;
    doc["gate"] = from_file ? config.matrix_file.string() : config.gate;
    if (!from_file && config.gate == "exp-zz") doc["angle"] = config.angle;
    doc["d"] = d;
    doc["entangling_power"] = power;
    doc["generator_spectrum"] = std::vector<double>(spectrum.data(), spectrum.data() + spectrum.size());
    save_json(config.out_dir / "power.json", doc);

    log << "e(U) = " << format_double(power) << "\n";
    log << "minimizing generator spectrum:";
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) log << ' ' << format_double(spectrum(i));
    log << "\n";
    return kSuccess;
}

int run_sie_sweep(const ExperimentConfig& config, std::ostream& log) {
    const int samples = require_samples(config, 10000);
    const std::vector<int> sizes = sizes_or(config, {4, 6, 8});
    const int d = config.d;

    struct Row {
        int n = 0, s = 0, a = 0, b = 0;
        double rate = 0.0, norm = 0.0, ratio = 0.0;
        bool analytic = true;
    };
    std::vector<Row> rows(samples);
    parallel_for(rows.size(), [&](std::size_t i) {
        Rng rng(stream_seed(config.seed, i));
        const int n = sizes[i % sizes.size()];
        const SieInstance inst = random_sie_instance(n, d, rng);
        const RateEstimate est = entangling_rate(inst.h, inst.psi, inst.cut, config.policy);
        Row& r = rows[i];
        r.n = n;
        r.s = inst.cut.s;
        r.a = inst.h.sites.first;
        r.b = inst.h.sites.second;
        r.rate = est.rate;
        r.norm = op_norm(inst.h.matrix);
        r.ratio = std::abs(est.rate) / (std::log(static_cast<double>(d)) * r.norm);
        r.analytic = est.analytic;
    });

    CsvWriter csv({"index", "n", "s", "site_a", "site_b", "rate", "h_norm", "ratio", "analytic"});
    double max_ratio = 0.0;
    long long argmax = -1;
    int fallbacks = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        csv.row().cell(static_cast<long long>(i)).cell(r.n).cell(r.s).cell(r.a).cell(r.b);
        csv.cell(r.rate).cell(r.norm).cell(r.ratio).cell(r.analytic ? 1 : 0);
        if (r.ratio > max_ratio || argmax < 0) {
            max_ratio = r.ratio;
            argmax = static_cast<long long>(i);
        }
        fallbacks += r.analytic ? 0 : 1;
    }
    csv.save(config.out_dir / "sie_sweep.csv");

    const bool hard = max_ratio > kProvenConstant;
    const bool soft = max_ratio > kConjecturedConstant;
    json doc;
    doc["samples"] = samples;
    doc["seed"] = config.seed;
    doc["d"] = d;
    doc["sizes"] = sizes;
    doc["max_ratio"] = max_ratio;
    doc["empty"] = samples == 0;
    doc["argmax_index"] = argmax >= 0 ? json(argmax) : json(nullptr);
    doc["argmax_seed"] = argmax >= 0 ? json(stream_seed(config.seed, static_cast<std::uint64_t>(argmax))) : json(nullptr);
    doc["finite_difference_fallbacks"] = fallbacks;
    doc["exceeds_proven_constant"] = hard;
    doc["exceeds_conjectured_constant"] = soft;
    save_json(config.out_dir / "sie_summary.json", doc);

    log << "sie-sweep: " << samples << " samples, max ratio " << format_double(max_ratio) << "\n";
    if (samples == 0) log << "note: no samples drawn\n";
    if (soft && !hard) log << "warning: max ratio exceeds 2.05\n";
    if (hard) {
        log << "violation: max ratio exceeds 22\n";
        return kViolation;
    }
    return kSuccess;
}

CostBoundRow evaluate_cost_path(const ControlPath& path, const GeneratorSet& gens, const PureState& phi,
                                const NumericPolicy& policy) {
    const int d = gens.local_dim();
    const double log_d = std::log(static_cast<double>(d));
    const double slack = 1e-6 / (kProvenConstant * log_d);
    const PureState final_state(gens.sites(), d, layer_states(path, gens, phi, policy).back());
    CostBoundRow r;
    r.cost = path_cost(path);
    r.bound_max = cost_lower_bound(final_state, d, kProvenConstant, BoundMode::MaxCut, policy);
    r.bound_sum = cost_lower_bound(final_state, d, kProvenConstant, BoundMode::SumCuts, policy);
    r.complexity = weighted_complexity(gate_list(path, gens, 1), gens, d, policy);
    r.corollary = r.cost > 0.0 ? r.complexity / (log_d * r.cost) : 1.0;
    r.violation = r.bound_max > r.cost + slack || (gens.geometric() && r.bound_sum > r.cost + slack);
    return r;
}

int run_cost_bound(const ExperimentConfig& config, std::ostream& log) {
    const int samples = require_samples(config, 1000);
    const std::vector<int> sizes = sizes_or(config, {4, 6});
    const std::vector<int>& steps = config.steps;
    if (steps.empty()) throw Error(ErrorKind::InvalidArgument, "cost-bound needs at least one N");
    const int d = config.d;

    struct Row : CostBoundRow {
        int n = 0, steps = 0, generators = 0;
        bool geometric = false;
    };
    std::vector<Row> rows(samples);
    parallel_for(rows.size(), [&](std::size_t i) {
        Rng rng(stream_seed(config.seed, i));
        Row& r = rows[i];
        const std::size_t combo = i / sizes.size();
        r.n = sizes[i % sizes.size()];
        r.steps = steps[combo % steps.size()];
        r.geometric = (combo / steps.size()) % 2 == 0;
        r.generators = uniform_int(rng, 1, 2 * r.n);
        const GeneratorSet gens = random_generator_set(r.n, d, r.generators, r.geometric, rng);
        const ControlPath path = SmoothPathFamily::random(r.generators, rng).sample(r.steps);
        const PureState phi = random_product_state(r.n, d, rng);
        static_cast<CostBoundRow&>(r) = evaluate_cost_path(path, gens, phi, config.policy);
    });

    CsvWriter csv({"index", "n", "N", "J", "geometric", "path_cost", "bound_max", "bound_sum",
                   "weighted_complexity", "corollary_ratio", "violation"});
    int violations = 0;
    double worst_corollary = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        csv.row().cell(static_cast<long long>(i)).cell(r.n).cell(r.steps).cell(r.generators).cell(r.geometric ? 1 : 0);
        csv.cell(r.cost).cell(r.bound_max).cell(r.bound_sum).cell(r.complexity).cell(r.corollary);
        csv.cell(r.violation ? 1 : 0);
        violations += r.violation ? 1 : 0;
        worst_corollary = std::max(worst_corollary, std::abs(r.corollary - 1.0) * r.steps);
    }
    csv.save(config.out_dir / "cost_bound.csv");

    json doc;
    doc["samples"] = samples;
    doc["seed"] = config.seed;
    doc["constant"] = kProvenConstant;
    doc["violations"] = violations;
    doc["max_corollary_deviation_times_N"] = worst_corollary;
    save_json(config.out_dir / "cost_bound_summary.json", doc);

    log << "cost-bound: " << samples << " paths, " << violations << " violations\n";
    return violations > 0 ? kViolation : kSuccess;
}

int run_gaussian_sweep(const ExperimentConfig& config, std::ostream& log) {
    const int samples = require_samples(config, 2000);
    const int bins = config.bins;
    if (config.max_modes < 2) throw Error(ErrorKind::InvalidArgument, "max_modes must be >= 2");
    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

    struct Row {
        int n = 0, s = 0, a = 0, b = 0;
        double norm = 0.0, gap = 0.0;
        bool included = false;
        double analytic = kNaN, fd = kNaN, residual = kNaN;
        int rank = -1;
        double sqrt_norm = kNaN, norm_bound = kNaN;
    };
    std::vector<Row> rows(samples);
    parallel_for(rows.size(), [&](std::size_t i) {
        Rng rng(stream_seed(config.seed, i));
        const GaussianInstance inst = random_gaussian_instance(config.max_modes, rng);
        Row& r = rows[i];
        r.n = inst.gamma.modes();
        r.s = inst.cut.s;
        r.a = inst.h.support().first;
        r.b = inst.h.support().second;
        r.norm = inst.gamma.norm();
        r.gap = reduced_gap(inst.gamma, inst.cut, config.policy);
        r.included = r.gap >= kCrossValidationGap;
        if (!r.included) return;
        const RateTerms terms = gaussian_rate_terms(inst.gamma, inst.h, inst.cut, config.policy);
        r.analytic = terms.rate;
        r.fd = gaussian_rate_fd_refined(inst.gamma, inst.h, inst.cut, config.policy);
        r.residual = std::abs(r.analytic - r.fd) / std::max({std::abs(r.analytic), std::abs(r.fd), 1e-6});
        r.rank = terms.m_dot_rank;
        r.sqrt_norm = terms.sqrt_m_dot_norm;
        r.norm_bound = 2.0 * r.norm * inst.h.norm();
    });

    // envelope ensemble: two-mode pure states with the rate-maximizing kernel
    std::vector<double> env_norm(samples), env_ratio(samples);
    parallel_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
        Rng rng(stream_seed(config.seed ^ 0x9e3779b97f4a7c15ULL, i));
        const CovarianceMatrix gamma = random_pure_covariance(2, rng);
        env_norm[i] = gamma.norm();
        env_ratio[i] = optimal_local_kernel(gamma, {0, 1}, Cut{1}, config.policy).rate;
    });

    CsvWriter csv({"index", "n", "s", "mode_a", "mode_b", "gamma_norm", "min_gap", "included", "rate_analytic",
                   "rate_fd", "residual", "m_dot_rank", "sqrt_m_dot_norm", "norm_bound"});
    std::vector<double> residuals;
    int rank_violations = 0, norm_violations = 0, hard = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        csv.row().cell(static_cast<long long>(i)).cell(r.n).cell(r.s).cell(r.a).cell(r.b).cell(r.norm).cell(r.gap);
        csv.cell(r.included ? 1 : 0).cell(r.analytic).cell(r.fd).cell(r.residual).cell(r.rank);
        csv.cell(r.sqrt_norm).cell(r.norm_bound);
        if (!r.included) continue;
        residuals.push_back(r.residual);
        rank_violations += r.rank > 12 ? 1 : 0;
        norm_violations += r.sqrt_norm > r.norm_bound + 1e-8 ? 1 : 0;
        hard += r.residual > kResidualHardLimit ? 1 : 0;
    }
    csv.save(config.out_dir / "gaussian_rates.csv");

    const BoundProfile profile = BoundProfile::default_empirical();
    const auto envelope = binned_envelope(env_norm, env_ratio, bins);
    CsvWriter env({"bin", "norm_lo", "norm_hi", "count", "max_ratio", "standard_error", "profile_at_hi"});
    for (std::size_t b = 0; b < envelope.size(); ++b) {
        const EnvelopeBin& e = envelope[b];
        env.row().cell(static_cast<long long>(b)).cell(e.lo).cell(e.hi).cell(e.count).cell(e.max);
        env.cell(e.standard_error).cell(profile(std::max(1.0, e.hi)));
    }
    env.save(config.out_dir / "gaussian_envelope.csv");

    json doc;
    doc["samples"] = samples;
    doc["seed"] = config.seed;
    doc["cross_validated"] = residuals.size();
    doc["residual_p50"] = quantile(residuals, 0.5);
    doc["residual_p99"] = quantile(residuals, 0.99);
    doc["residual_max"] = quantile(residuals, 1.0);
    doc["residuals_above_1e-3"] = hard;
    doc["m_dot_rank_above_12"] = rank_violations;
    doc["sqrt_m_dot_norm_violations"] = norm_violations;
    doc["envelope_monotone"] = envelope_monotone(envelope);
    if (samples > 0) {
        const BoundProfile fitted = calibrate_empirical(env_norm, env_ratio, 1.1);
        doc["calibrated_profile"] = {{"c0", fitted.c0}, {"eps0", fitted.eps0}};
    }
    doc["default_profile"] = {{"c0", profile.c0}, {"eps0", profile.eps0}};
    save_json(config.out_dir / "gaussian_summary.json", doc);

    log << "gaussian-sweep: " << residuals.size() << " cross-validated, residual p99 "
        << format_double(quantile(residuals, 0.99)) << ", envelope "
        << (envelope_monotone(envelope) ? "monotone" : "not monotone") << "\n";
    if (hard > 0) {
        log << "violation: " << hard << " residuals above 1e-3\n";
        return kViolation;
    }
    return kSuccess;
}

int run_quench(const ExperimentConfig& config, std::ostream& log) {
    const QuenchModel model = model_of(config);
    const bool spin = std::holds_alternative<TfimModel>(model);
    const int n = config.n.value_or(spin ? 12 : 200);
    const QuenchSpec spec = quench_spec(config, n);
    const GrowthCurve curve = run_curve(spec, config.policy);

    std::vector<std::string> header{"t"};
    for (int s = 1; s < n; ++s) header.push_back("E_" + std::to_string(s));
    header.push_back("bound_max");
    header.push_back("bound_sum");
    CsvWriter csv(header);
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        csv.row().cell(curve.times[i]);
        for (double e : curve.entropies[i]) csv.cell(e);
        csv.cell(curve.bounds.front().max_cut[i]).cell(curve.bounds.front().sum_cuts[i]);
    }
    csv.save(config.out_dir / "quench.csv");

    TimeWindow window = default_fit_window(curve, model);
    if (config.fit_lo) window.lo = *config.fit_lo;
    if (config.fit_hi) window.hi = *config.fit_hi;

    json doc;
    doc["model"] = config.model;
    doc["n"] = n;
    doc["bound_series"] = curve.bounds.front().label;
    doc["window"] = {window.lo, window.hi};
    std::optional<LinearFit> fit;
    try {
        fit = fit_linear_slope(curve, window);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::WindowTooSmall) throw;
        log << "fit skipped: " << e.what() << "\n";
    }
    if (fit) {
        doc["fit"] = {{"slope", fit->slope},
                      {"intercept", fit->intercept},
                      {"r_squared", fit->r_squared},
                      {"r_squared_defined", fit->r_squared_defined},
                      {"samples", fit->samples}};
    } else {
        doc["fit"] = nullptr;
    }
    auto max_of = [](const std::vector<double>& v) {
        return v.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::max_element(v.begin(), v.end());
    };
    auto min_of = [](const std::vector<double>& v) {
        return v.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::min_element(v.begin(), v.end());
    };
    if (spin) {
        doc["max_energy_drift"] = nullable(max_of(curve.energy_drift));
        doc["max_norm_drift"] = nullable(max_of(curve.norm_drift));
    } else {
        doc["min_uncertainty_margin"] = nullable(min_of(curve.uncertainty_margin));
        doc["max_purity_defect"] = nullable(max_of(curve.purity_defect));
        doc["max_symplectic_defect"] = nullable(max_of(curve.symplectic_defect));
    }
    bool below_surrogate = true;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        below_surrogate = below_surrogate && curve.bounds.front().max_cut[i] <= curve.cost_surrogate[i] + 1e-12;
    }
    doc["bounds_below_cost_surrogate"] = below_surrogate;
    save_json(config.out_dir / "quench_fit.json", doc);

    if (config.svg) {
        std::vector<SvgSeries> series{{"max-cut bound", curve.times, curve.bounds.front().max_cut, "#1f77b4", false}};
        if (fit) {
            series.push_back({"linear fit", {window.lo, window.hi},
                              {fit->intercept + fit->slope * window.lo, fit->intercept + fit->slope * window.hi},
                              "#d62728", true});
        }
        write_text(config.out_dir / "quench.svg",
                   render_svg(series, config.model + " quench, n = " + std::to_string(n), "t", "cost lower bound"));
    }

    log << "quench " << config.model << " n=" << n << ": ";
    if (fit) {
        log << "slope " << format_double(fit->slope) << ", r^2 " << format_double(fit->r_squared) << "\n";
    } else {
        log << "no fit\n";
    }
    return below_surrogate ? kSuccess : kViolation;
}

int run_scaling(const ExperimentConfig& config, std::ostream& log) {
    const QuenchModel model = model_of(config);
    const bool spin = std::holds_alternative<TfimModel>(model);
    const std::vector<int> sizes = config.sizes.empty() ? (spin ? std::vector<int>{8, 10, 12}
                                                                : std::vector<int>{50, 100, 200})
                                                        : config.sizes;
    std::vector<QuenchSpec> specs;
    for (int n : sizes) {
        QuenchSpec spec = quench_spec(config, n);
        spec.diagnostics = false;
        specs.push_back(std::move(spec));
    }
    const auto rows = scaling_comparison(specs, config.policy);
    CsvWriter csv({"n", "sum_plateau", "max_plateau", "ratio", "oracle", "ratio_over_oracle"});
    for (const auto& r : rows) {
        csv.row().cell(r.n).cell(r.sum_plateau).cell(r.max_plateau).cell(r.ratio).cell(r.oracle);
        csv.cell(r.oracle > 0.0 ? r.ratio / r.oracle : 0.0);
        log << "n=" << r.n << " sum/max " << format_double(r.ratio) << " oracle " << format_double(r.oracle) << "\n";
    }
    csv.save(config.out_dir / "scaling.csv");
    return kSuccess;
}

int run_command(const ExperimentConfig& config, std::ostream& log) {
    if (config.command == "power") return run_power(config, log);
    if (config.command == "sie-sweep") return run_sie_sweep(config, log);
    if (config.command == "cost-bound") return run_cost_bound(config, log);
    if (config.command == "gaussian-sweep") return run_gaussian_sweep(config, log);
    if (config.command == "quench") return run_quench(config, log);
    if (config.command == "scaling") return run_scaling(config, log);
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + config.command + "'");
}

}  // namespace costbound::cli
