#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "costbound/common.hpp"
#include "costbound/gaussian_cv.hpp"
#include "costbound/spin_entanglement.hpp"

namespace costbound {

/// H = -J sum Z_i Z_{i+1} - g sum X_i.
struct TfimModel {
    double J = 1.0;
    double g = 1.0;
    bool periodic = false;
};

/// Kernel with x-block omega^2 I + kappa (nearest-neighbour adjacency) and
/// p-block I, open boundaries. Positive definite iff omega^2 > 2|kappa|.
struct HarmonicChainModel {
    double omega = 1.0;
    double kappa = 0.45;
};

using QuenchModel = std::variant<TfimModel, HarmonicChainModel>;

struct QuenchSpec {
    QuenchModel model = TfimModel{};
    int n = 2;
    std::vector<double> times;
    /// Computational-basis digits of the initial product state (spin side;
    /// empty means all zeros). The Gaussian side always starts in the vacuum.
    std::vector<int> initial;
    /// Per-time invariant checks (energy/norm or uncertainty/purity/symplecticity).
    bool diagnostics = true;

    void validate() const;
};

struct BoundSeries {
    std::string label;
    std::vector<double> max_cut;
    std::vector<double> sum_cuts;
};

struct GrowthCurve {
    int n = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> entropies;  // per time, cuts s = 1..n-1
    /// bounds.front() is the primary series: c = 22 (spin) or the proof
    /// profile (Gaussian).
    std::vector<BoundSeries> bounds;
    double bound_scale = 1.0;  // primary bound = bound_scale * entropy
    /// t times the summed norms of the Hamiltonian's local terms.
    std::vector<double> cost_surrogate;

    // spin diagnostics
    std::vector<double> energy_drift;  // |<H>(t) - <H>(0)|
    std::vector<double> norm_drift;    // | ||psi(t)|| - 1 |
    // Gaussian diagnostics
    std::vector<double> uncertainty_margin;  // min eig(gamma + i sigma)
    std::vector<double> purity_defect;       // max |nu_k - 1| over all modes
    std::vector<double> symplectic_defect;   // max |S sigma S^T - sigma|
};

RMatrix tfim_hamiltonian(int n, const TfimModel& model);

/// Exact TFIM evolution from diagonalizing H in the two sectors of the
/// global spin-flip parity prod X_i.
class TfimPropagator {
public:
    TfimPropagator(int n, const TfimModel& model);

    int sites() const noexcept { return n_; }
    CVector evolve(const CVector& psi0, double t) const;
    /// <psi|H|psi> without forming H.
    double energy(const CVector& psi) const;

private:
    CVector apply_h(const CVector& psi) const;

    int n_;
    TfimModel model_;
    long long half_;
    RVector even_values_, odd_values_;
    RMatrix even_vectors_, odd_vectors_;
};

GrowthCurve quench_spin(const QuenchSpec& spec, const NumericPolicy& policy = default_policy());
GrowthCurve quench_spin(const QuenchSpec& spec, const TfimPropagator& propagator,
                        const NumericPolicy& policy = default_policy());

/// Closed-form propagator exp(t sigma h) of the harmonic chain, in the
/// (x1, p1, ..., xn, pn) ordering.
class HarmonicPropagator {
public:
    HarmonicPropagator(int n, const HarmonicChainModel& model);
    RMatrix at(double t) const;
    RMatrix kernel() const;

private:
    int n_;
    HarmonicChainModel model_;
    RVector freq_;     // sqrt of the eigenvalues of the x-block
    RMatrix modes_;    // eigenvectors of the x-block
};

GrowthCurve quench_gaussian(const QuenchSpec& spec, const NumericPolicy& policy = default_policy());

/// Maximal group velocity: 2 min(|J|, |g|) for the TFIM, max_k |dOmega/dk|
/// for the harmonic chain.
double max_group_velocity(const QuenchModel& model);

/// `points` equally spaced times on [0, 1.5 n / v].
std::vector<double> default_times(const QuenchModel& model, int n, int points);

struct TimeWindow {
    double lo = 0.0;
    double hi = 0.0;
};

/// [0.5 / v, 0.8 t_sat], where t_sat is the first grid time at which the
/// half-chain entropy reaches 95% of its maximum on the grid.
TimeWindow default_fit_window(const GrowthCurve& curve, const QuenchModel& model);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    bool r_squared_defined = true;  // false for a constant series
    int samples = 0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fits the primary max-cut bound (or the single-cut bound for `cut`) on the
/// window.
LinearFit fit_linear_slope(const GrowthCurve& curve, TimeWindow window, std::optional<Cut> cut = std::nullopt);

struct ScalingRow {
    int n = 0;
    double sum_plateau = 0.0;
    double max_plateau = 0.0;
    double ratio = 0.0;
    double oracle = 0.0;  // sum_s min(s, n - s) / (n / 2)
};

double saturation_ratio(int n);

std::vector<ScalingRow> scaling_comparison(const std::vector<QuenchSpec>& specs,
                                           const NumericPolicy& policy = default_policy());
ScalingRow scaling_row(const GrowthCurve& curve);

}  // namespace costbound
