#pragma once

#include <functional>
#include <vector>

#include "costbound/common.hpp"
#include "costbound/random.hpp"
#include "costbound/spin_entanglement.hpp"

namespace costbound {

struct GeneratorTerm {
    CMatrix matrix;  // d^2 x d^2, Hermitian, traceless, unit operator norm
    SitePair sites;
};

/// The generator collection {O_j} of a control path.
class GeneratorSet {
public:
    GeneratorSet(int n, int d, std::vector<GeneratorTerm> terms, bool geometric,
                 const NumericPolicy& policy = default_policy());

    int sites() const noexcept { return n_; }
    int local_dim() const noexcept { return d_; }
    int size() const noexcept { return static_cast<int>(terms_.size()); }
    bool geometric() const noexcept { return geometric_; }
    const std::vector<GeneratorTerm>& terms() const noexcept { return terms_; }

    /// O_j acting on the full chain.
    CMatrix embedded(int j) const;

private:
    int n_;
    int d_;
    std::vector<GeneratorTerm> terms_;
    bool geometric_;
};

/// Samples y_j(k/N) for k = 1..N; column k-1 holds layer k.
class ControlPath {
public:
    explicit ControlPath(RMatrix samples);

    static ControlPath zero(int generators, int steps);
    static ControlPath sampled(int generators, int steps, const std::function<double(int, double)>& y);

    int generators() const noexcept { return static_cast<int>(samples_.rows()); }
    int steps() const noexcept { return static_cast<int>(samples_.cols()); }
    double value(int j, int layer) const { return samples_(j, layer - 1); }  // layer in 1..N
    const RMatrix& samples() const noexcept { return samples_; }

private:
    RMatrix samples_;
};

/// y_j(s) = a_j + b_j sin(pi s); the same family can be sampled at any N.
struct SmoothPathFamily {
    RVector offset;
    RVector amplitude;

    ControlPath sample(int steps) const;
    static SmoothPathFamily random(int generators, Rng& rng);
};

struct TrotterGate {
    int generator = 0;
    int layer = 1;       // 1..N
    int repetition = 0;  // 0..m-1
    double angle = 0.0;  // y_j(k/N) / N
};

/// Gate V_{k,j}^{1/m} = exp(-i (angle/m) O_j). Gates are listed in the order
/// they act on the state: layers ascending, then m sweeps over j ascending.
struct TrotterCircuit {
    int steps = 0;
    int repetitions = 1;
    std::vector<TrotterGate> gates;
};

/// V_N: product of the layer exponentials with layer 1 acting first.
CMatrix synthesize(const ControlPath& path, const GeneratorSet& gens,
                   const NumericPolicy& policy = default_policy());

/// psi_0 = initial and psi_l = V_l psi_{l-1} for l = 1..N.
std::vector<CVector> layer_states(const ControlPath& path, const GeneratorSet& gens, const PureState& initial,
                                  const NumericPolicy& policy = default_policy());

TrotterCircuit gate_list(const ControlPath& path, const GeneratorSet& gens, int repetitions);

/// The d^2-dimensional unitary of one gate.
CMatrix gate_unitary(const TrotterGate& gate, const TrotterCircuit& circuit, const GeneratorSet& gens,
                     const NumericPolicy& policy = default_policy());

CMatrix circuit_unitary(const TrotterCircuit& circuit, const GeneratorSet& gens,
                        const NumericPolicy& policy = default_policy());

/// (1/N) sum_{k,j} |y_j(k/N)|.
double path_cost(const ControlPath& path);

/// Entanglement lower bound on the cost of any path preparing psi_final from
/// a product state: (1/(c log d)) times the max (or sum) of the cut entropies.
double cost_lower_bound(const PureState& psi_final, int d, double c, BoundMode mode,
                        const NumericPolicy& policy = default_policy());

/// Sum over gates of the potential entangling power of each gate.
double weighted_complexity(const TrotterCircuit& circuit, const GeneratorSet& gens, int d,
                           const NumericPolicy& policy = default_policy());

struct LayerRecord {
    int layer = 0;
    double entropy_before = 0.0;
    double entropy_after = 0.0;
    double increment = 0.0;
    double budget = 0.0;  // (c log d / N) sum_j |y_j(l/N)|
    bool exceeds = false;
};

/// Per-layer entropy increments against the per-layer budget, starting from a
/// product state.
std::vector<LayerRecord> proof_trace(const ControlPath& path, const GeneratorSet& gens, const PureState& phi,
                                     Cut cut, double c, const NumericPolicy& policy = default_policy());

/// Traceless part of a Hermitian matrix rescaled to unit operator norm.
CMatrix normalized_traceless(const CMatrix& h);

/// J random unit-norm traceless GUE terms; nearest-neighbour pairs when
/// `geometric`, arbitrary distinct pairs otherwise.
GeneratorSet random_generator_set(int n, int d, int count, bool geometric, Rng& rng);

}  // namespace costbound
