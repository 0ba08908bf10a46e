#pragma once

#include <span>
#include <vector>

#include "costbound/common.hpp"
#include "costbound/random.hpp"

namespace costbound {

/// Normalized pure state on n sites of local dimension d (site 0 is the most
/// significant tensor factor).
class PureState {
public:
    PureState(int n, int d, CVector amplitudes, const NumericPolicy& policy = default_policy());

    /// Rescales `amplitudes` to unit norm before construction.
    static PureState normalized(int n, int d, CVector amplitudes);
    static PureState basis(int n, int d, std::span<const int> digits);
    /// Tensor product of normalized local vectors, all of the same dimension.
    static PureState product(std::span<const CVector> local_states);

    int sites() const noexcept { return n_; }
    int local_dim() const noexcept { return d_; }
    const CVector& amplitudes() const noexcept { return amplitudes_; }

    /// Same state with the site order reversed (site i becomes n-1-i).
    PureState reversed() const;

private:
    int n_;
    int d_;
    CVector amplitudes_;
};

/// Two-site Hermitian term; the first tensor factor of `matrix` acts on
/// `sites.first`.
struct LocalHamiltonian {
    CMatrix matrix;
    SitePair sites;
};

/// Reduced density operator on the listed sites (ascending order).
CMatrix reduced_density(const PureState& psi, std::span<const int> keep);

double cut_entropy(const PureState& psi, Cut cut, const NumericPolicy& policy = default_policy());
std::vector<double> entropy_profile(const PureState& psi, const NumericPolicy& policy = default_policy());

/// log(d) times the smallest operator norm of a Hermitian generator of U.
double entangling_power(const CMatrix& u, int d, const NumericPolicy& policy = default_policy());

/// dE/dt at t = 0 for exp(-i t h) acting on psi, from the commutator formula
/// on the reduced state of A plus the B-site of h. Positive when entanglement
/// across the cut grows.
double entangling_rate_analytic(const LocalHamiltonian& h, const PureState& psi, Cut cut,
                                const NumericPolicy& policy = default_policy());

/// Central difference of the cut entropy, Richardson-extrapolated from steps
/// `step` and `step/2`.
double entangling_rate_fd(const LocalHamiltonian& h, const PureState& psi, Cut cut, double step,
                          const NumericPolicy& policy = default_policy());

struct RateEstimate {
    double rate = 0.0;
    bool analytic = true;
};

/// Analytic rate, falling back to finite differences (with step refinement)
/// when the reduced spectrum is ill-conditioned.
RateEstimate entangling_rate(const LocalHamiltonian& h, const PureState& psi, Cut cut,
                             const NumericPolicy& policy = default_policy());

/// |Gamma| / (log(d) ||h||): the empirical incremental-entangling constant of
/// one instance.
double sie_ratio(const LocalHamiltonian& h, const PureState& psi, Cut cut, int d,
                 const NumericPolicy& policy = default_policy());

struct IncrementCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
};

/// Compares |E(X psi : s) - E(psi : s)| with c * e(X) for a two-site gate X
/// straddling the cut.
IncrementCheck incremental_entanglement_check(const CMatrix& gate, SitePair sites, const PureState& psi,
                                              Cut cut, double c,
                                              const NumericPolicy& policy = default_policy());

// ensembles

PureState haar_state(int n, int d, Rng& rng);

struct SieInstance {
    PureState psi;
    LocalHamiltonian h;
    Cut cut;
};

/// Haar state, unit-norm GUE term on a random pair straddling a random cut.
SieInstance random_sie_instance(int n, int d, Rng& rng);

/// Swap of the two tensor factors of a d^2-dimensional operator.
CMatrix swap_factors(const CMatrix& op, int d);

}  // namespace costbound
