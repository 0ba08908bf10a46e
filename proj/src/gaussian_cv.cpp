#include "costbound/gaussian_cv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "costbound/dense_core.hpp"

namespace costbound {

namespace {

struct Side {
    int first;
    int count;
};

Side smaller_side(Cut cut, int n) {
    return cut.s <= n - cut.s ? Side{0, cut.s} : Side{cut.s, n - cut.s};
}

RMatrix side_block(const RMatrix& m, Side side) {
    return m.block(2 * side.first, 2 * side.first, 2 * side.count, 2 * side.count);
}

double max_abs_or_one(const RMatrix& a) { return std::max(1.0, a.cwiseAbs().maxCoeff()); }

void require_even_square(const RMatrix& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() == 0 || a.rows() % 2 != 0) {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be a non-empty 2n x 2n matrix");
    }
}

void require_pure(const CovarianceMatrix& gamma, const NumericPolicy& policy) {
    if (!gamma.is_pure(policy)) throw Error(ErrorKind::NotPure, "covariance matrix is not pure");
}

void require_straddle(const QuadraticKernel& h, Cut cut) {
    if (!h.local()) return;
    const auto [a, b] = h.support();
    if ((a < cut.s) == (b < cut.s)) {
        throw Error(ErrorKind::InvalidArgument, "kernel does not straddle the cut");
    }
}

void require_same_modes(const CovarianceMatrix& gamma, const QuadraticKernel& h) {
    if (gamma.modes() != h.modes()) throw Error(ErrorKind::DimensionMismatch, "kernel and state mode counts differ");
}

double mode_entropy(double nu, double clip) {
    const double plus = 0.5 * (nu + 1.0);
    const double minus = 0.5 * (nu - 1.0);
    double e = plus * std::log(plus);
    if (nu - 1.0 >= clip) e -= minus * std::log(minus);
    return e;
}

// Rate contribution weights log((mu+1)/2) - log((mu-1)/2).
double rate_weight(double mu) { return std::log(0.5 * (mu + 1.0)) - std::log(0.5 * (mu - 1.0)); }

}  // namespace

RMatrix symplectic_form(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "symplectic_form needs n >= 1");
    RMatrix sigma = RMatrix::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        sigma(2 * k, 2 * k + 1) = 1.0;
        sigma(2 * k + 1, 2 * k) = -1.0;
    }
    return sigma;
}

double uncertainty_margin(const RMatrix& gamma) {
    require_even_square(gamma, "covariance matrix");
    const CMatrix m = gamma.cast<Complex>() + Complex(0.0, 1.0) * symplectic_form(static_cast<int>(gamma.rows() / 2)).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "uncertainty check did not converge");
    return es.eigenvalues().minCoeff();
}

CovarianceMatrix::CovarianceMatrix(RMatrix gamma, const NumericPolicy& policy) : gamma_(std::move(gamma)) {
    require_even_square(gamma_, "covariance matrix");
    if (!gamma_.allFinite()) throw Error(ErrorKind::InvalidArgument, "covariance matrix has non-finite entries");
    if ((gamma_ - gamma_.transpose()).cwiseAbs().maxCoeff() > policy.symmetric_tol * max_abs_or_one(gamma_)) {
        throw Error(ErrorKind::InvalidArgument, "covariance matrix is not symmetric");
    }
    gamma_ = 0.5 * (gamma_ + gamma_.transpose()).eval();
    const double margin = uncertainty_margin(gamma_);
    if (margin < -policy.uncertainty_tol) {
        throw Error(ErrorKind::UncertaintyViolation,
                    "gamma + i sigma has eigenvalue " + std::to_string(margin));
    }
}

CovarianceMatrix CovarianceMatrix::vacuum(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "vacuum needs n >= 1");
    return CovarianceMatrix(RMatrix::Identity(2 * n, 2 * n), Unchecked{});
}

CovarianceMatrix CovarianceMatrix::trusted(RMatrix gamma) {
    require_even_square(gamma, "covariance matrix");
    return CovarianceMatrix(std::move(gamma), Unchecked{});
}

double CovarianceMatrix::norm() const { return op_norm(gamma_); }

bool CovarianceMatrix::is_pure(const NumericPolicy& policy) const {
    const RVector nu = symplectic_eigenvalues(gamma_, policy);
    return (nu.array() - 1.0).abs().maxCoeff() <= policy.purity_tol;
}

QuadraticKernel::QuadraticKernel(int n, const RMatrix& block, SitePair modes, const NumericPolicy& policy)
    : h_(RMatrix::Zero(2 * n, 2 * n)), local_(true), support_(modes) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "a two-mode kernel needs n >= 2");
    if (block.rows() != 4 || block.cols() != 4) throw Error(ErrorKind::DimensionMismatch, "kernel block must be 4x4");
    const auto [a, b] = modes;
    if (a < 0 || a >= n || b < 0 || b >= n || a == b) throw Error(ErrorKind::IndexOutOfRange, "invalid kernel modes");
    if ((block - block.transpose()).cwiseAbs().maxCoeff() > policy.symmetric_tol * max_abs_or_one(block)) {
        throw Error(ErrorKind::InvalidArgument, "kernel block is not symmetric");
    }
    const int idx[4] = {2 * a, 2 * a + 1, 2 * b, 2 * b + 1};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) h_(idx[i], idx[j]) = 0.5 * (block(i, j) + block(j, i));
}

QuadraticKernel::QuadraticKernel(RMatrix full, const NumericPolicy& policy) : h_(std::move(full)) {
    require_even_square(h_, "kernel");
    if ((h_ - h_.transpose()).cwiseAbs().maxCoeff() > policy.symmetric_tol * max_abs_or_one(h_)) {
        throw Error(ErrorKind::InvalidArgument, "kernel is not symmetric");
    }
    h_ = 0.5 * (h_ + h_.transpose()).eval();
}

double QuadraticKernel::norm() const { return op_norm(h_); }

RVector symplectic_eigenvalues(const RMatrix& gamma_block, const NumericPolicy& policy) {
    require_even_square(gamma_block, "covariance block");
    const int s = static_cast<int>(gamma_block.rows() / 2);
    Eigen::LLT<RMatrix> llt(gamma_block);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorKind::UncertaintyViolation, "covariance block is not positive definite");
    }
    const RMatrix l = llt.matrixL();
    const RMatrix a = l.transpose() * symplectic_form(s) * l;
    const RMatrix ata = a.transpose() * a;
    Eigen::SelfAdjointEigenSolver<RMatrix> es(ata, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "symplectic spectrum did not converge");
    // ascending, each value twice: take the larger of each pair, descending
    RVector nu(s);
    const RVector& w = es.eigenvalues();
    for (int k = 0; k < s; ++k) nu(k) = std::sqrt(std::max(0.0, w(2 * s - 1 - 2 * k)));
    if (nu(s - 1) < 1.0 - policy.symplectic_floor_tol) {
        throw Error(ErrorKind::UncertaintyViolation, "symplectic eigenvalue " + std::to_string(nu(s - 1)) + " < 1");
    }
    return nu;
}

RVector symplectic_eigenvalues(const CovarianceMatrix& gamma, const NumericPolicy& policy) {
    return symplectic_eigenvalues(gamma.matrix(), policy);
}

double gaussian_entropy(std::span<const double> symplectic_values, const NumericPolicy& policy) {
    double e = 0.0;
    for (double nu : symplectic_values) e += mode_entropy(nu, policy.entropy_gap_clip);
    return std::max(0.0, e);
}

double mode_block_entropy(const RMatrix& gamma, int first, int count, const NumericPolicy& policy) {
    const RVector nu = symplectic_eigenvalues(side_block(gamma, {first, count}), policy);
    return gaussian_entropy(std::span<const double>(nu.data(), static_cast<std::size_t>(nu.size())), policy);
}

double gaussian_cut_entropy(const CovarianceMatrix& gamma, Cut cut, const NumericPolicy& policy) {
    validate_cut(cut, gamma.modes());
    require_pure(gamma, policy);
    const Side side = smaller_side(cut, gamma.modes());
    return mode_block_entropy(gamma.matrix(), side.first, side.count, policy);
}

std::vector<double> gaussian_entropy_profile(const CovarianceMatrix& gamma, const NumericPolicy& policy) {
    require_pure(gamma, policy);
    const int n = gamma.modes();
    std::vector<double> profile;
    profile.reserve(n > 1 ? n - 1 : 0);
    for (int s = 1; s < n; ++s) {
        const Side side = smaller_side(Cut{s}, n);
        profile.push_back(mode_block_entropy(gamma.matrix(), side.first, side.count, policy));
    }
    return profile;
}

RMatrix m_matrix(const RMatrix& gamma_block, const NumericPolicy& policy) {
    require_even_square(gamma_block, "covariance block");
    const RMatrix sigma = symplectic_form(static_cast<int>(gamma_block.rows() / 2));
    const RMatrix r = psd_sqrt(gamma_block, policy);
    const RMatrix m = r * (sigma * gamma_block * sigma.transpose()) * r;
    return 0.5 * (m + m.transpose());
}

double trace_formula_entropy(const RMatrix& gamma_block, const NumericPolicy& policy) {
    const SymmetricEigen es = symmetric_eig(m_matrix(gamma_block, policy), policy);
    double e = 0.0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        e += mode_entropy(std::sqrt(std::max(0.0, es.values(i))), policy.entropy_gap_clip);
    }
    return e;
}

RMatrix symplectic_propagator(const QuadraticKernel& h, double t, const NumericPolicy& policy) {
    return mat_exp(RMatrix(t * symplectic_form(h.modes()) * h.matrix()), policy);
}

double symplecticity_defect(const RMatrix& s) {
    require_even_square(s, "propagator");
    const RMatrix sigma = symplectic_form(static_cast<int>(s.rows() / 2));
    return (s * sigma * s.transpose() - sigma).cwiseAbs().maxCoeff();
}

CovarianceMatrix evolve_covariance(const CovarianceMatrix& gamma, const RMatrix& propagator) {
    if (propagator.rows() != gamma.matrix().rows() || propagator.cols() != gamma.matrix().cols()) {
        throw Error(ErrorKind::DimensionMismatch, "propagator and state shapes differ");
    }
    const RMatrix g = propagator * gamma.matrix() * propagator.transpose();
    return CovarianceMatrix::trusted(0.5 * (g + g.transpose()));
}

CovarianceMatrix evolve_covariance(const CovarianceMatrix& gamma, const QuadraticKernel& h, double t,
                                   const NumericPolicy& policy) {
    require_same_modes(gamma, h);
    return evolve_covariance(gamma, symplectic_propagator(h, t, policy));
}

double gaussian_rate_fd(const CovarianceMatrix& gamma, const QuadraticKernel& h, Cut cut, double step,
                        const NumericPolicy& policy) {
    if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "finite-difference step must be positive");
    require_same_modes(gamma, h);
    validate_cut(cut, gamma.modes());
    require_straddle(h, cut);
    require_pure(gamma, policy);
    const Side side = smaller_side(cut, gamma.modes());
    const RMatrix generator = symplectic_form(h.modes()) * h.matrix();
    auto entropy_at = [&](double t) {
        const RMatrix s = mat_exp(RMatrix(t * generator), policy);
        const RMatrix g = s * gamma.matrix() * s.transpose();
        return mode_block_entropy(0.5 * (g + g.transpose()), side.first, side.count, policy);
    };
    auto central = [&](double delta) { return (entropy_at(delta) - entropy_at(-delta)) / (2.0 * delta); };
    const double coarse = central(step);
    const double fine = central(0.5 * step);
    const double gap = std::abs(coarse - fine);
    if (gap > policy.richardson_rel_tol * std::max(std::abs(coarse), std::abs(fine)) + policy.richardson_abs_floor) {
        throw Error(ErrorKind::StepTooLarge, "Richardson levels disagree by " + std::to_string(gap));
    }
    return (4.0 * fine - coarse) / 3.0;
}

double reduced_gap(const CovarianceMatrix& gamma, Cut cut, const NumericPolicy& policy) {
    validate_cut(cut, gamma.modes());
    const Side side = smaller_side(cut, gamma.modes());
    const RVector nu = symplectic_eigenvalues(side_block(gamma.matrix(), side), policy);
    return nu.minCoeff() - 1.0;
}

RateTerms gaussian_rate_terms(const CovarianceMatrix& gamma, const QuadraticKernel& h, Cut cut,
                              const NumericPolicy& policy) {
    require_same_modes(gamma, h);
    validate_cut(cut, gamma.modes());
    require_straddle(h, cut);
    const Side side = smaller_side(cut, gamma.modes());
    const RMatrix sigma = symplectic_form(gamma.modes());
    const RMatrix& g = gamma.matrix();
    const RMatrix g_dot_full = sigma * h.matrix() * g - g * h.matrix() * sigma;

    const RMatrix ga = side_block(g, side);
    const RMatrix ga_dot = side_block(g_dot_full, side);
    const RMatrix sa = symplectic_form(side.count);

    const RMatrix r = psd_sqrt(ga, policy);
    const RMatrix r_dot = sqrt_frechet(ga, ga_dot, policy);
    const RMatrix q = sa * ga * sa.transpose();
    const RMatrix q_dot = sa * ga_dot * sa.transpose();

    RateTerms terms;
    terms.m = r * q * r;
    terms.m = 0.5 * (terms.m + terms.m.transpose()).eval();
    terms.m_dot = r_dot * q * r + r * q_dot * r + r * q * r_dot;
    terms.m_dot = 0.5 * (terms.m_dot + terms.m_dot.transpose()).eval();

    const SymmetricEigen es = symmetric_eig(terms.m, policy);
    const RVector mu = es.values.cwiseMax(0.0).cwiseSqrt();
    terms.min_gap = mu.minCoeff() - 1.0;
    terms.m_dot_rank = numerical_rank(terms.m_dot, policy.rank_rel_tol);
    if (terms.min_gap < policy.near_singular_gap) {
        throw Error(ErrorKind::NearSingularSpectrum,
                    "reduced symplectic eigenvalue within " + std::to_string(terms.min_gap) + " of 1");
    }
    terms.sqrt_m_dot = sqrt_frechet(terms.m, terms.m_dot, policy);
    terms.sqrt_m_dot_norm = op_norm(terms.sqrt_m_dot);

    const RMatrix y = es.vectors.transpose() * terms.sqrt_m_dot * es.vectors;
    double trace = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i) trace += y(i, i) * rate_weight(mu(i));
    // (1/2) tr[...] counts every symplectic eigenvalue twice
    terms.rate = 0.25 * trace;
    return terms;
}

double gaussian_rate_analytic(const CovarianceMatrix& gamma, const QuadraticKernel& h, Cut cut,
                              const NumericPolicy& policy) {
    return gaussian_rate_terms(gamma, h, cut, policy).rate;
}

double gaussian_rate_fd_refined(const CovarianceMatrix& gamma, const QuadraticKernel& h, Cut cut,
                                const NumericPolicy& policy) {
    const double gap = reduced_gap(gamma, cut, policy);
    double step = gap > 1e-10 ? std::clamp(0.1 * gap, 1e-6, 1e-3) : 1e-3;
    for (int attempt = 0;; ++attempt) {
        try {
            return gaussian_rate_fd(gamma, h, cut, step, policy);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::StepTooLarge || attempt >= 4) throw;
            step *= 0.25;
        }
    }
}

RateEstimate gaussian_rate(const CovarianceMatrix& gamma, const QuadraticKernel& h, Cut cut,
                           const NumericPolicy& policy) {
    try {
        return {gaussian_rate_analytic(gamma, h, cut, policy), true};
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NearSingularSpectrum) throw;
    }
    return {gaussian_rate_fd_refined(gamma, h, cut, policy), false};
}

KernelOptimum optimal_local_kernel(const CovarianceMatrix& gamma, SitePair modes, Cut cut,
                                   const NumericPolicy& policy) {
    const int n = gamma.modes();
    RMatrix gradient(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            RMatrix basis = RMatrix::Zero(4, 4);
            basis(i, j) = 1.0;
            basis(j, i) = 1.0;
            const double r = gaussian_rate(gamma, QuadraticKernel(n, basis, modes, policy), cut, policy).rate;
            if (i == j) {
                gradient(i, i) = r;
            } else {
                gradient(i, j) = 0.5 * r;
                gradient(j, i) = 0.5 * r;
            }
        }
    }
    const SymmetricEigen es = symmetric_eig(gradient, policy);
    RVector signs(4);
    for (int i = 0; i < 4; ++i) signs(i) = es.values(i) >= 0.0 ? 1.0 : -1.0;
    const RMatrix block = es.vectors * signs.asDiagonal() * es.vectors.transpose();
    return {QuadraticKernel(n, block, modes, policy), es.values.cwiseAbs().sum()};
}

double BoundProfile::operator()(double x) const {
    if (!(x >= 1.0 - 1e-12)) throw Error(ErrorKind::DomainError, "bound profile is defined on [1, inf)");
    x = std::max(x, 1.0);
    const double plus = std::log(0.5 * (x + 1.0));
    if (kind == Kind::Proof) return 3.0 * kernel_rank * x * (plus + guard);
    return c0 * x * std::max(plus, eps0);
}

BoundProfile BoundProfile::proof(double kernel_rank, double guard_epsilon) {
    if (!(kernel_rank > 0.0) || !(guard_epsilon > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "proof profile needs positive rank and guard");
    }
    BoundProfile p;
    p.kind = Kind::Proof;
    p.kernel_rank = kernel_rank;
    p.guard = std::abs(std::log(0.5 * guard_epsilon));
    return p;
}

BoundProfile BoundProfile::empirical(double c0, double eps0) {
    if (!(c0 > 0.0) || !(eps0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "empirical profile needs c0, eps0 > 0");
    BoundProfile p;
    p.kind = Kind::Empirical;
    p.c0 = c0;
    p.eps0 = eps0;
    return p;
}

BoundProfile BoundProfile::default_empirical() { return empirical(0.2, 5.4); }

BoundProfile calibrate_empirical(std::span<const double> norms, std::span<const double> ratios, double headroom) {
    if (norms.size() != ratios.size()) throw Error(ErrorKind::DimensionMismatch, "calibration spans differ");
    if (!(headroom >= 1.0)) throw Error(ErrorKind::InvalidArgument, "headroom must be >= 1");
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (ratios[i] > 0.0) {
            if (!(norms[i] >= 1.0 - 1e-12)) throw Error(ErrorKind::DomainError, "calibration norm below 1");
            used.push_back(i);
        }
    }
    if (used.empty()) throw Error(ErrorKind::InvalidArgument, "calibration needs a positive ratio");
    BoundProfile best;
    double best_score = std::numeric_limits<double>::infinity();
    constexpr int kGrid = 61;
    for (int g = 0; g < kGrid; ++g) {
        const double eps0 = std::pow(10.0, -3.0 + 4.0 * g / (kGrid - 1));
        double c0 = 0.0;
        for (std::size_t i : used) {
            const double x = std::max(1.0, norms[i]);
            c0 = std::max(c0, ratios[i] / (x * std::max(std::log(0.5 * (x + 1.0)), eps0)));
        }
        const BoundProfile candidate = BoundProfile::empirical(headroom * c0, eps0);
        double score = 0.0;
        for (std::size_t i : used) score += candidate(std::max(1.0, norms[i]));
        if (score < best_score) {
            best_score = score;
            best = candidate;
        }
    }
    return best;
}

double theorem1_bound(const CovarianceMatrix& gamma0, const QuadraticKernel& h, const BoundProfile& profile) {
    const double x = gamma0.norm();
    if (x < 1.0 - 1e-12) throw Error(ErrorKind::DomainError, "||gamma0|| < 1");
    return h.norm() * profile(x);
}

double gaussian_path_cost(const GaussianControlPath& path) { return path_cost(path.path); }

RMatrix synthesize_symplectic(const GaussianControlPath& path, const NumericPolicy& policy) {
    if (path.path.generators() != static_cast<int>(path.generators.size())) {
        throw Error(ErrorKind::DimensionMismatch, "control path rows differ from the generator count");
    }
    if (path.generators.empty()) throw Error(ErrorKind::InvalidArgument, "Gaussian path has no generators");
    const int n = path.generators.front().modes();
    for (const auto& h : path.generators) {
        if (h.modes() != n) throw Error(ErrorKind::DimensionMismatch, "generators act on different mode counts");
    }
    const RMatrix sigma = symplectic_form(n);
    const int steps = path.path.steps();
    RMatrix total = RMatrix::Identity(2 * n, 2 * n);
    for (int layer = 1; layer <= steps; ++layer) {
        RMatrix h = RMatrix::Zero(2 * n, 2 * n);
        for (std::size_t j = 0; j < path.generators.size(); ++j) {
            h += path.path.value(static_cast<int>(j), layer) * path.generators[j].matrix();
        }
        total = mat_exp(RMatrix(sigma * h / steps), policy) * total;
    }
    return total;
}

double obs2_lower_bound(const CovarianceMatrix& gamma_final, double norm0, const BoundProfile& profile,
                        BoundMode mode, const NumericPolicy& policy) {
    const auto entropies = gaussian_entropy_profile(gamma_final, policy);
    const double f = profile(norm0);
    if (entropies.empty()) return 0.0;
    const double e = mode == BoundMode::MaxCut ? *std::max_element(entropies.begin(), entropies.end())
                                               : std::accumulate(entropies.begin(), entropies.end(), 0.0);
    return e / f;
}

CovarianceMatrix random_pure_covariance(int n, Rng& rng, double max_norm) {
    if (n < 1 || !(max_norm > 0.0)) throw Error(ErrorKind::InvalidArgument, "random_pure_covariance arguments");
    RMatrix k(2 * n, 2 * n);
    for (Eigen::Index j = 0; j < k.cols(); ++j)
        for (Eigen::Index i = 0; i < k.rows(); ++i) k(i, j) = standard_normal(rng);
    k = 0.5 * (k + k.transpose()).eval();
    const double target = max_norm - uniform(rng, 0.0, max_norm);
    k *= target / op_norm(k);
    const RMatrix s = mat_exp(RMatrix(symplectic_form(n) * k));
    const RMatrix g = s * s.transpose();
    return CovarianceMatrix::trusted(0.5 * (g + g.transpose()));
}

QuadraticKernel random_local_kernel(int n, SitePair modes, Rng& rng) {
    RMatrix b(4, 4);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) b(i, j) = standard_normal(rng);
    b = 0.5 * (b + b.transpose()).eval();
    b /= op_norm(b);
    return QuadraticKernel(n, b, modes);
}

GaussianInstance random_gaussian_instance(int max_modes, Rng& rng) {
    if (max_modes < 2) throw Error(ErrorKind::InvalidArgument, "Gaussian instances need at least 2 modes");
    const int n = uniform_int(rng, 2, max_modes);
    const int s = uniform_int(rng, 1, n - 1);
    const int k = uniform_int(rng, 0, s - 1);
    const int l = uniform_int(rng, s, n - 1);
    CovarianceMatrix gamma = random_pure_covariance(n, rng);
    QuadraticKernel h = random_local_kernel(n, {k, l}, rng);
    return {std::move(gamma), std::move(h), Cut{s}};
}

GaussianControlPath random_gaussian_path(int n, int generators, int steps, bool geometric, Rng& rng) {
    if (n < 2 || generators < 1) throw Error(ErrorKind::InvalidArgument, "random_gaussian_path arguments");
    std::vector<QuadraticKernel> kernels;
    kernels.reserve(generators);
    for (int j = 0; j < generators; ++j) {
        SitePair modes;
        if (geometric) {
            const int i = uniform_int(rng, 0, n - 2);
            modes = {i, i + 1};
        } else {
            const int a = uniform_int(rng, 0, n - 1);
            int b = uniform_int(rng, 0, n - 2);
            if (b >= a) ++b;
            modes = {std::min(a, b), std::max(a, b)};
        }
        kernels.push_back(random_local_kernel(n, modes, rng));
    }
    return {SmoothPathFamily::random(generators, rng).sample(steps), std::move(kernels)};
}

std::vector<EnvelopeBin> binned_envelope(std::span<const double> x, std::span<const double> y, int bins) {
    if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "binned_envelope spans differ");
    if (bins < 1) throw Error(ErrorKind::InvalidArgument, "binned_envelope needs bins >= 1");
    const std::size_t m = x.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<EnvelopeBin> out;
    for (int b = 0; b < bins; ++b) {
        const std::size_t lo = m * static_cast<std::size_t>(b) / bins;
        const std::size_t hi = m * static_cast<std::size_t>(b + 1) / bins;
        if (lo == hi) continue;
        EnvelopeBin bin;
        bin.lo = x[order[lo]];
        bin.hi = x[order[hi - 1]];
        bin.count = static_cast<int>(hi - lo);
        bin.max = -std::numeric_limits<double>::infinity();
        double mean = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            bin.max = std::max(bin.max, y[order[i]]);
            mean += y[order[i]];
        }
        mean /= bin.count;
        double var = 0.0;
        for (std::size_t i = lo; i < hi; ++i) var += (y[order[i]] - mean) * (y[order[i]] - mean);
        if (bin.count > 1) var /= (bin.count - 1);
        bin.standard_error = std::sqrt(var / bin.count);
        out.push_back(bin);
    }
    return out;
}

bool envelope_monotone(const std::vector<EnvelopeBin>& bins) {
    for (std::size_t b = 1; b < bins.size(); ++b) {
        const double slack = std::max(bins[b - 1].standard_error, bins[b].standard_error);
        if (bins[b].max < bins[b - 1].max - slack) return false;
    }
    return true;
}

}  // namespace costbound
