#pragma once

// Zero-mean Gaussian states of n bosonic modes.
//
// Coordinates are ordered (x_1, p_1, ..., x_n, p_n); the vacuum has gamma = I.
// A quadratic kernel h generates the symplectic flow S(t) = exp(t sigma h) and
// states evolve by congruence, gamma(t) = S gamma S^T. The Hamiltonian
// normalization (H = R h R^T up to a factor of 2) is absorbed into h.

#include <span>
#include <vector>

#include "costbound/circuit_cost.hpp"
#include "costbound/common.hpp"
#include "costbound/random.hpp"

namespace costbound {

RMatrix symplectic_form(int n);

class CovarianceMatrix {
public:
    /// Validates symmetry and the uncertainty relation gamma + i sigma >= 0.
    explicit CovarianceMatrix(RMatrix gamma, const NumericPolicy& policy = default_policy());

    static CovarianceMatrix vacuum(int n);
    /// Skips validation; for matrices produced by symplectic congruence of a
    /// valid covariance matrix.
    static CovarianceMatrix trusted(RMatrix gamma);

    int modes() const noexcept { return static_cast<int>(gamma_.rows() / 2); }
    const RMatrix& matrix() const noexcept { return gamma_; }
    double norm() const;
    bool is_pure(const NumericPolicy& policy = default_policy()) const;

private:
    struct Unchecked {};
    CovarianceMatrix(RMatrix gamma, Unchecked) : gamma_(std::move(gamma)) {}
    RMatrix gamma_;
};

/// Smallest eigenvalue of the Hermitian matrix gamma + i sigma.
double uncertainty_margin(const RMatrix& gamma);

class QuadraticKernel {
public:
    /// A 4x4 block acting on the modes (first, second), in the coordinate
    /// order (x_first, p_first, x_second, p_second).
    QuadraticKernel(int n, const RMatrix& block, SitePair modes,
                    const NumericPolicy& policy = default_policy());
    /// Unrestricted symmetric 2n x 2n kernel.
    explicit QuadraticKernel(RMatrix full, const NumericPolicy& policy = default_policy());

    int modes() const noexcept { return static_cast<int>(h_.rows() / 2); }
    const RMatrix& matrix() const noexcept { return h_; }
    bool local() const noexcept { return local_; }
    SitePair support() const noexcept { return support_; }
    double norm() const;

private:
    RMatrix h_;
    bool local_ = false;
    SitePair support_{};
};

/// Symplectic eigenvalues of a covariance block, one per mode, descending.
RVector symplectic_eigenvalues(const RMatrix& gamma_block, const NumericPolicy& policy = default_policy());
RVector symplectic_eigenvalues(const CovarianceMatrix& gamma, const NumericPolicy& policy = default_policy());

/// sum_k g(nu_k), g(nu) = ((nu+1)/2) log((nu+1)/2) - ((nu-1)/2) log((nu-1)/2).
double gaussian_entropy(std::span<const double> symplectic_values, const NumericPolicy& policy = default_policy());

/// Entropy of the contiguous modes [first, first + count), without a purity check.
double mode_block_entropy(const RMatrix& gamma, int first, int count, const NumericPolicy& policy = default_policy());

double gaussian_cut_entropy(const CovarianceMatrix& gamma, Cut cut, const NumericPolicy& policy = default_policy());
std::vector<double> gaussian_entropy_profile(const CovarianceMatrix& gamma,
                                             const NumericPolicy& policy = default_policy());

/// M_A = gamma_A^{1/2} sigma gamma_A sigma^T gamma_A^{1/2}, real symmetric,
/// spectrum nu_k^2 with each value twice.
RMatrix m_matrix(const RMatrix& gamma_block, const NumericPolicy& policy = default_policy());

/// tr[((M^{1/2}+I)/2) log((M^{1/2}+I)/2) - ((M^{1/2}-I)/2) log((M^{1/2}-I)/2)];
/// twice the entropy because of the doubled spectrum.
double trace_formula_entropy(const RMatrix& gamma_block, const NumericPolicy& policy = default_policy());

RMatrix symplectic_propagator(const QuadraticKernel& h, double t, const NumericPolicy& policy = default_policy());
double symplecticity_defect(const RMatrix& s);

CovarianceMatrix evolve_covariance(const CovarianceMatrix& gamma, const RMatrix& propagator);
CovarianceMatrix evolve_covariance(const CovarianceMatrix& gamma, const QuadraticKernel& h, double t,
                                   const NumericPolicy& policy = default_policy());

/// Central difference of the cut entropy at steps `step` and `step/2`,
/// Richardson-extrapolated.
double gaussian_rate_fd(const CovarianceMatrix& gamma, const QuadraticKernel& h, Cut cut, double step,
                        const NumericPolicy& policy = default_policy());

/// gaussian_rate_fd with a step scaled to the reduced spectral gap, refined
/// (quartered, at most 4 times) until the Richardson levels agree.
double gaussian_rate_fd_refined(const CovarianceMatrix& gamma, const QuadraticKernel& h, Cut cut,
                                const NumericPolicy& policy = default_policy());

/// Intermediate quantities of the analytic rate, all on the smaller side of
/// the cut (the rate of a pure state is the same on both sides).
struct RateTerms {
    double rate = 0.0;
    RMatrix m;             // M of the chosen side
    RMatrix m_dot;         // dM/dt at t = 0
    RMatrix sqrt_m_dot;    // d M^{1/2} / dt at t = 0
    int m_dot_rank = 0;
    double sqrt_m_dot_norm = 0.0;
    double min_gap = 0.0;  // min_k (nu_k - 1) on the chosen side
};

RateTerms gaussian_rate_terms(const CovarianceMatrix& gamma, const QuadraticKernel& h, Cut cut,
                              const NumericPolicy& policy = default_policy());
double gaussian_rate_analytic(const CovarianceMatrix& gamma, const QuadraticKernel& h, Cut cut,
                              const NumericPolicy& policy = default_policy());

/// Analytic when the reduced spectrum allows it, finite differences otherwise.
RateEstimate gaussian_rate(const CovarianceMatrix& gamma, const QuadraticKernel& h, Cut cut,
                           const NumericPolicy& policy = default_policy());

/// The rate is linear in h; over unit-norm kernels on `modes` it is
/// maximized by sign(G) for the gradient G, with value ||G||_1.
struct KernelOptimum {
    QuadraticKernel h;
    double rate = 0.0;
};

KernelOptimum optimal_local_kernel(const CovarianceMatrix& gamma, SitePair modes, Cut cut,
                                   const NumericPolicy& policy = default_policy());

/// min_k (nu_k - 1) over the smaller side of the cut.
double reduced_gap(const CovarianceMatrix& gamma, Cut cut, const NumericPolicy& policy = default_policy());

/// f : [1, inf) -> R used in Gamma <= ||h|| f(||gamma||).
struct BoundProfile {
    enum class Kind { Proof, Empirical };

    Kind kind = Kind::Empirical;
    // empirical: c0 * x * max(log((x+1)/2), eps0)
    double c0 = 1.0;
    double eps0 = 1.0;
    // proof: (3/2) rank * 2x * (log((x+1)/2) + guard)
    double kernel_rank = 4.0;
    double guard = 0.0;

    double operator()(double x) const;

    static BoundProfile proof(double kernel_rank = 4.0, double guard_epsilon = 1e-4);
    static BoundProfile empirical(double c0, double eps0);
    /// Empirical profile calibrated on an ensemble sweep.
    static BoundProfile default_empirical();
};

/// Smallest empirical profile that covers every (norm, ratio) sample, scaled
/// by `headroom`.
BoundProfile calibrate_empirical(std::span<const double> norms, std::span<const double> ratios, double headroom = 1.1);

double theorem1_bound(const CovarianceMatrix& gamma0, const QuadraticKernel& h, const BoundProfile& profile);

struct GaussianControlPath {
    ControlPath path;
    std::vector<QuadraticKernel> generators;  // unit operator norm each
};

double gaussian_path_cost(const GaussianControlPath& path);

/// Product over layers of exp((1/N) sigma sum_j y_j(k/N) h_j), layer 1 first.
RMatrix synthesize_symplectic(const GaussianControlPath& path, const NumericPolicy& policy = default_policy());

/// (1/f(norm0)) times the max (or sum) of the cut entropies of gamma_final.
double obs2_lower_bound(const CovarianceMatrix& gamma_final, double norm0, const BoundProfile& profile,
                        BoundMode mode, const NumericPolicy& policy = default_policy());

// ensembles

/// gamma = S S^T with S = exp(sigma K), K random symmetric with op_norm
/// uniform in (0, max_norm].
CovarianceMatrix random_pure_covariance(int n, Rng& rng, double max_norm = 2.0);

/// Random symmetric 4x4 block of unit operator norm on modes (k, l).
QuadraticKernel random_local_kernel(int n, SitePair modes, Rng& rng);

struct GaussianInstance {
    CovarianceMatrix gamma;
    QuadraticKernel h;
    Cut cut;
};

/// n uniform in [2, max_modes], random cut, kernel straddling the cut.
GaussianInstance random_gaussian_instance(int max_modes, Rng& rng);

GaussianControlPath random_gaussian_path(int n, int generators, int steps, bool geometric, Rng& rng);

struct EnvelopeBin {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
    double max = 0.0;
    double standard_error = 0.0;  // std of the bin's values / sqrt(count)
};

/// Equal-count bins of x; per bin, the max of y and its standard error.
std::vector<EnvelopeBin> binned_envelope(std::span<const double> x, std::span<const double> y, int bins);

/// Each bin max is at least the previous one minus the larger of the two
/// standard errors.
bool envelope_monotone(const std::vector<EnvelopeBin>& bins);

}  // namespace costbound
