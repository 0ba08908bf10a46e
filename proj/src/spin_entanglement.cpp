#include "costbound/spin_entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "costbound/dense_core.hpp"

namespace costbound {

namespace {

using RowMajorCMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double cut_entropy_of(const CVector& amplitudes, int n, int d, int s, const NumericPolicy& policy) {
    const auto dim_a = ipow(d, s);
    const auto dim_b = ipow(d, n - s);
    Eigen::Map<const RowMajorCMatrix> m(amplitudes.data(), dim_a, dim_b);
    CMatrix gram = dim_a <= dim_b ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
    const RVector& p = es.eigenvalues();
    return entropy_from_spectrum(std::span<const double>(p.data(), p.size()), policy.entropy_clip);
}

// Orients h as (site in A, site in B) and validates that it straddles the cut.
LocalHamiltonian oriented(const LocalHamiltonian& h, int n, int d, Cut cut) {
    validate_cut(cut, n);
    if (h.matrix.rows() != d * d || h.matrix.cols() != d * d) {
        throw Error(ErrorKind::DimensionMismatch, "local Hamiltonian must be d^2 x d^2");
    }
    auto [a, b] = h.sites;
    if (a < 0 || a >= n || b < 0 || b >= n || a == b) {
        throw Error(ErrorKind::IndexOutOfRange, "local Hamiltonian sites outside the chain");
    }
    if (a < cut.s && b >= cut.s) return h;
    if (b < cut.s && a >= cut.s) return {swap_factors(h.matrix, d), {b, a}};
    throw Error(ErrorKind::InvalidArgument, "local Hamiltonian does not straddle the cut");
}

double analytic_rate_small_side(const LocalHamiltonian& h, const PureState& psi, int s,
                                const NumericPolicy& policy) {
    const int d = psi.local_dim();
    const int k = h.sites.first;
    const int l = h.sites.second;

    std::vector<int> keep(s);
    for (int i = 0; i < s; ++i) keep[i] = i;
    keep.push_back(l);
    const CMatrix rho_al = reduced_density(psi, keep);

    const auto dim_a = ipow(d, s);
    CMatrix rho_a = CMatrix::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i)
        for (Eigen::Index j = 0; j < dim_a; ++j)
            for (int x = 0; x < d; ++x) rho_a(i, j) += rho_al(i * d + x, j * d + x);

    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho_a + rho_a.adjoint()));
    RVector logs(dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i) {
        const double p = es.eigenvalues()(i);
        if (p > policy.log_support_clip) {
            if (p < policy.degenerate_band) {
                throw Error(ErrorKind::DegenerateSupport,
                            "reduced spectrum has an eigenvalue " + std::to_string(p) +
                                " between the support clip and the conditioning band");
            }
            logs(i) = std::log(p);
        } else {
            logs(i) = 0.0;
        }
    }
    const CMatrix log_a = es.eigenvectors() * logs.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    const CMatrix log_a_ext = Eigen::kroneckerProduct(log_a, CMatrix::Identity(d, d));
    const CMatrix h_ext = embed_local(h.matrix, {k, s}, s + 1, d);
    const CMatrix commutator = rho_al * log_a_ext - log_a_ext * rho_al;
    // dS/dt = -tr(rho_A' log rho_A) with rho' = -i[H, rho] gives i tr(H [rho, log rho_A]).
    return -(h_ext * commutator).trace().imag();
}

}  // namespace

PureState::PureState(int n, int d, CVector amplitudes, const NumericPolicy& policy)
    : n_(n), d_(d), amplitudes_(std::move(amplitudes)) {
    if (n < 1 || d < 2) throw Error(ErrorKind::InvalidArgument, "PureState needs n >= 1 and d >= 2");
    if (amplitudes_.size() != ipow(d, n)) {
        throw Error(ErrorKind::DimensionMismatch, "PureState amplitude vector must have length d^n");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > policy.state_norm_tol) {
        throw Error(ErrorKind::NotAState, "PureState is not normalized (norm " +
                                              std::to_string(amplitudes_.norm()) + ")");
    }
}

PureState PureState::normalized(int n, int d, CVector amplitudes) {
    const double norm = amplitudes.norm();
    if (norm == 0.0) throw Error(ErrorKind::NotAState, "zero vector cannot be normalized");
    return PureState(n, d, amplitudes / norm);
}

PureState PureState::basis(int n, int d, std::span<const int> digits) {
    if (static_cast<int>(digits.size()) != n) {
        throw Error(ErrorKind::DimensionMismatch, "basis state needs one digit per site");
    }
    long long index = 0;
    for (int digit : digits) {
        if (digit < 0 || digit >= d) throw Error(ErrorKind::IndexOutOfRange, "basis digit outside 0..d-1");
        index = index * d + digit;
    }
    CVector amps = CVector::Zero(ipow(d, n));
    amps(index) = 1.0;
    return PureState(n, d, std::move(amps));
}

PureState PureState::product(std::span<const CVector> local_states) {
    if (local_states.empty()) throw Error(ErrorKind::InvalidArgument, "product of zero sites");
    const auto d = static_cast<int>(local_states.front().size());
    CVector amps = CVector::Ones(1);
    for (const auto& v : local_states) {
        if (v.size() != d) throw Error(ErrorKind::DimensionMismatch, "local states differ in dimension");
        CVector next(amps.size() * d);
        for (Eigen::Index i = 0; i < amps.size(); ++i) next.segment(i * d, d) = amps(i) * v;
        amps = std::move(next);
    }
    return PureState(static_cast<int>(local_states.size()), d, std::move(amps));
}

PureState PureState::reversed() const {
    CVector out(amplitudes_.size());
    for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
        long long rest = i;
        long long mirrored = 0;
        for (int site = 0; site < n_; ++site) {
            mirrored = mirrored * d_ + rest % d_;
            rest /= d_;
        }
        out(mirrored) = amplitudes_(i);
    }
    return PureState(n_, d_, std::move(out));
}

CMatrix swap_factors(const CMatrix& op, int d) {
    if (op.rows() != d * d || op.cols() != d * d) {
        throw Error(ErrorKind::DimensionMismatch, "swap_factors: operator must be d^2 x d^2");
    }
    CMatrix out(op.rows(), op.cols());
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) out(b * d + a, e * d + c) = op(a * d + b, c * d + e);
    return out;
}

CMatrix reduced_density(const PureState& psi, std::span<const int> keep) {
    const int n = psi.sites();
    const int d = psi.local_dim();
    std::vector<bool> kept(n, false);
    for (int site : keep) {
        if (site < 0 || site >= n) throw Error(ErrorKind::IndexOutOfRange, "reduced_density: site out of range");
        kept[site] = true;
    }
    std::vector<long long> keep_off{0}, rest_off{0};
    for (int site = 0; site < n; ++site) {
        const long long stride = ipow(d, n - 1 - site);
        auto& offs = kept[site] ? keep_off : rest_off;
        std::vector<long long> next;
        next.reserve(offs.size() * d);
        for (long long base : offs)
            for (int digit = 0; digit < d; ++digit) next.push_back(base + digit * stride);
        offs = std::move(next);
    }
    CMatrix m(static_cast<Eigen::Index>(keep_off.size()), static_cast<Eigen::Index>(rest_off.size()));
    const CVector& amps = psi.amplitudes();
    for (std::size_t a = 0; a < keep_off.size(); ++a)
        for (std::size_t t = 0; t < rest_off.size(); ++t) m(a, t) = amps(keep_off[a] + rest_off[t]);
    return m * m.adjoint();
}

double cut_entropy(const PureState& psi, Cut cut, const NumericPolicy& policy) {
    validate_cut(cut, psi.sites());
    return cut_entropy_of(psi.amplitudes(), psi.sites(), psi.local_dim(), cut.s, policy);
}

std::vector<double> entropy_profile(const PureState& psi, const NumericPolicy& policy) {
    std::vector<double> profile;
    profile.reserve(psi.sites() > 1 ? psi.sites() - 1 : 0);
    for (int s = 1; s < psi.sites(); ++s) profile.push_back(cut_entropy(psi, Cut{s}, policy));
    return profile;
}

double entangling_power(const CMatrix& u, int d, const NumericPolicy& policy) {
    if (u.rows() != d * d || u.cols() != d * d) {
        throw Error(ErrorKind::DimensionMismatch, "entangling_power: U must be d^2 x d^2");
    }
    const RVector phases = unitary_eigenphases(u, policy);
    return std::log(static_cast<double>(d)) * phases.cwiseAbs().maxCoeff();
}

double entangling_rate_analytic(const LocalHamiltonian& h, const PureState& psi, Cut cut,
                                const NumericPolicy& policy) {
    const int n = psi.sites();
    const int d = psi.local_dim();
    const LocalHamiltonian term = oriented(h, n, d, cut);
    if (cut.s <= n - cut.s) return analytic_rate_small_side(term, psi, cut.s, policy);
    // E(A) = E(B) for pure states; evaluate on the mirrored chain where the
    // smaller side comes first.
    const LocalHamiltonian mirrored{swap_factors(term.matrix, d),
                                    {n - 1 - term.sites.second, n - 1 - term.sites.first}};
    return analytic_rate_small_side(mirrored, psi.reversed(), n - cut.s, policy);
}

double entangling_rate_fd(const LocalHamiltonian& h, const PureState& psi, Cut cut, double step,
                          const NumericPolicy& policy) {
    if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "finite-difference step must be positive");
    const int n = psi.sites();
    const int d = psi.local_dim();
    const LocalHamiltonian term = oriented(h, n, d, cut);
    auto entropy_at = [&](double t) {
        const CMatrix gate = mat_exp(CMatrix(Complex(0.0, -t) * term.matrix), policy);
        return cut_entropy_of(apply_local(gate, term.sites, n, d, psi.amplitudes()), n, d, cut.s, policy);
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

RateEstimate entangling_rate(const LocalHamiltonian& h, const PureState& psi, Cut cut,
                             const NumericPolicy& policy) {
    try {
        return {entangling_rate_analytic(h, psi, cut, policy), true};
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateSupport) throw;
    }
    double step = 1e-2;
    for (int attempt = 0;; ++attempt) {
        try {
            return {entangling_rate_fd(h, psi, cut, step, policy), false};
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::StepTooLarge || attempt >= 4) throw;
            step *= 0.25;
        }
    }
}

double sie_ratio(const LocalHamiltonian& h, const PureState& psi, Cut cut, int d, const NumericPolicy& policy) {
    if (d != psi.local_dim()) throw Error(ErrorKind::DimensionMismatch, "sie_ratio: d differs from the state");
    const double norm = op_norm(h.matrix);
    if (!(norm > 0.0)) throw Error(ErrorKind::InvalidArgument, "sie_ratio: h has zero norm");
    const double rate = entangling_rate(h, psi, cut, policy).rate;
    return std::abs(rate) / (std::log(static_cast<double>(d)) * norm);
}

IncrementCheck incremental_entanglement_check(const CMatrix& gate, SitePair sites, const PureState& psi,
                                              Cut cut, double c, const NumericPolicy& policy) {
    const int n = psi.sites();
    const int d = psi.local_dim();
    const LocalHamiltonian term = oriented({gate, sites}, n, d, cut);
    const double power = entangling_power(term.matrix, d, policy);
    const CVector moved = apply_local(term.matrix, term.sites, n, d, psi.amplitudes());
    const double before = cut_entropy_of(psi.amplitudes(), n, d, cut.s, policy);
    const double after = cut_entropy_of(moved, n, d, cut.s, policy);
    IncrementCheck check;
    check.lhs = std::abs(after - before);
    check.rhs = c * power;
    check.holds = check.lhs <= check.rhs + 1e-9;
    return check;
}

PureState haar_state(int n, int d, Rng& rng) {
    return PureState::normalized(n, d, complex_gaussian_vector(ipow(d, n), rng));
}

SieInstance random_sie_instance(int n, int d, Rng& rng) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "SIE instances need n >= 2");
    PureState psi = haar_state(n, d, rng);
    const int s = uniform_int(rng, 1, n - 1);
    const int k = uniform_int(rng, 0, s - 1);
    const int l = uniform_int(rng, s, n - 1);
    CMatrix h = gue_unit_norm(d * d, rng);
    return {std::move(psi), {std::move(h), {k, l}}, Cut{s}};
}

}  // namespace costbound
