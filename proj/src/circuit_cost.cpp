#include "costbound/circuit_cost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "costbound/dense_core.hpp"

namespace costbound {

namespace {

constexpr long long kMaxDimension = 1LL << 14;

void require_matching(const ControlPath& path, const GeneratorSet& gens) {
    if (path.generators() != gens.size()) {
        throw Error(ErrorKind::DimensionMismatch, "control path has " + std::to_string(path.generators()) +
                                                      " rows but there are " + std::to_string(gens.size()) +
                                                      " generators");
    }
}

std::vector<CMatrix> embedded_generators(const GeneratorSet& gens) {
    if (ipow(gens.local_dim(), gens.sites()) > kMaxDimension) {
        throw Error(ErrorKind::DimensionTooLarge, "chain dimension exceeds 2^14");
    }
    std::vector<CMatrix> out;
    out.reserve(gens.size());
    for (int j = 0; j < gens.size(); ++j) out.push_back(gens.embedded(j));
    return out;
}

CMatrix layer_unitary(const ControlPath& path, const std::vector<CMatrix>& ops, int layer, long long dim,
                      const NumericPolicy& policy) {
    CMatrix h = CMatrix::Zero(dim, dim);
    for (int j = 0; j < path.generators(); ++j) {
        const double y = path.value(j, layer);
        if (y != 0.0) h += y * ops[j];
    }
    return mat_exp(CMatrix(Complex(0.0, -1.0 / path.steps()) * h), policy);
}

}  // namespace

GeneratorSet::GeneratorSet(int n, int d, std::vector<GeneratorTerm> terms, bool geometric,
                           const NumericPolicy& policy)
    : n_(n), d_(d), terms_(std::move(terms)), geometric_(geometric) {
    if (n < 2 || d < 2) throw Error(ErrorKind::InvalidArgument, "generator sets need n >= 2 and d >= 2");
    for (std::size_t j = 0; j < terms_.size(); ++j) {
        const auto& term = terms_[j];
        const std::string label = "generator " + std::to_string(j);
        if (term.matrix.rows() != d * d || term.matrix.cols() != d * d) {
            throw Error(ErrorKind::DimensionMismatch, label + " is not d^2 x d^2");
        }
        const auto [a, b] = term.sites;
        if (a < 0 || a >= n || b < 0 || b >= n || a == b) {
            throw Error(ErrorKind::IndexOutOfRange, label + " has invalid sites");
        }
        if (geometric && std::abs(a - b) != 1) {
            throw Error(ErrorKind::InvalidArgument, label + " is not nearest-neighbour");
        }
        if (hermiticity_defect(term.matrix) > policy.hermitian_tol * term.matrix.cwiseAbs().maxCoeff()) {
            throw Error(ErrorKind::NonHermitian, label + " is not Hermitian");
        }
        if (std::abs(term.matrix.trace()) > policy.hermitian_tol) {
            throw Error(ErrorKind::InvalidArgument, label + " is not traceless");
        }
        if (std::abs(op_norm(term.matrix) - 1.0) > 1e-9) {
            throw Error(ErrorKind::InvalidArgument, label + " does not have unit operator norm");
        }
    }
}

CMatrix GeneratorSet::embedded(int j) const {
    const auto& term = terms_.at(static_cast<std::size_t>(j));
    return embed_local(term.matrix, term.sites, n_, d_);
}

ControlPath::ControlPath(RMatrix samples) : samples_(std::move(samples)) {
    if (samples_.cols() < 1) throw Error(ErrorKind::InvalidArgument, "control path needs N >= 1");
    if (!samples_.allFinite()) throw Error(ErrorKind::InvalidArgument, "control path has non-finite samples");
}

ControlPath ControlPath::zero(int generators, int steps) { return ControlPath(RMatrix::Zero(generators, steps)); }

ControlPath ControlPath::sampled(int generators, int steps, const std::function<double(int, double)>& y) {
    RMatrix samples(generators, steps);
    for (int j = 0; j < generators; ++j)
        for (int k = 1; k <= steps; ++k) samples(j, k - 1) = y(j, static_cast<double>(k) / steps);
    return ControlPath(std::move(samples));
}

ControlPath SmoothPathFamily::sample(int steps) const {
    return ControlPath::sampled(static_cast<int>(offset.size()), steps, [this](int j, double s) {
        return offset(j) + amplitude(j) * std::sin(std::numbers::pi * s);
    });
}

SmoothPathFamily SmoothPathFamily::random(int generators, Rng& rng) {
    SmoothPathFamily family{RVector(generators), RVector(generators)};
    for (int j = 0; j < generators; ++j) {
        family.offset(j) = uniform(rng, -1.0, 1.0);
        family.amplitude(j) = uniform(rng, -1.0, 1.0);
    }
    return family;
}

CMatrix synthesize(const ControlPath& path, const GeneratorSet& gens, const NumericPolicy& policy) {
    require_matching(path, gens);
    const auto ops = embedded_generators(gens);
    const long long dim = ipow(gens.local_dim(), gens.sites());
    CMatrix total = CMatrix::Identity(dim, dim);
    for (int layer = 1; layer <= path.steps(); ++layer) {
        total = layer_unitary(path, ops, layer, dim, policy) * total;
    }
    return total;
}

std::vector<CVector> layer_states(const ControlPath& path, const GeneratorSet& gens, const PureState& initial,
                                  const NumericPolicy& policy) {
    require_matching(path, gens);
    if (initial.sites() != gens.sites() || initial.local_dim() != gens.local_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "initial state does not match the generator chain");
    }
    const auto ops = embedded_generators(gens);
    const long long dim = ipow(gens.local_dim(), gens.sites());
    std::vector<CVector> states;
    states.reserve(path.steps() + 1);
    states.push_back(initial.amplitudes());
    for (int layer = 1; layer <= path.steps(); ++layer) {
        states.push_back(layer_unitary(path, ops, layer, dim, policy) * states.back());
    }
    return states;
}

TrotterCircuit gate_list(const ControlPath& path, const GeneratorSet& gens, int repetitions) {
    require_matching(path, gens);
    if (repetitions < 1) throw Error(ErrorKind::InvalidArgument, "gate_list needs m >= 1");
    TrotterCircuit circuit{path.steps(), repetitions, {}};
    circuit.gates.reserve(static_cast<std::size_t>(path.steps()) * repetitions * gens.size());
    for (int layer = 1; layer <= path.steps(); ++layer)
        for (int r = 0; r < repetitions; ++r)
            for (int j = 0; j < gens.size(); ++j)
                circuit.gates.push_back({j, layer, r, path.value(j, layer) / path.steps()});
    return circuit;
}

CMatrix gate_unitary(const TrotterGate& gate, const TrotterCircuit& circuit, const GeneratorSet& gens,
                     const NumericPolicy& policy) {
    const auto& term = gens.terms().at(static_cast<std::size_t>(gate.generator));
    const double theta = gate.angle / circuit.repetitions;
    return mat_exp(CMatrix(Complex(0.0, -theta) * term.matrix), policy);
}

CMatrix circuit_unitary(const TrotterCircuit& circuit, const GeneratorSet& gens, const NumericPolicy& policy) {
    const long long dim = ipow(gens.local_dim(), gens.sites());
    if (dim > kMaxDimension) throw Error(ErrorKind::DimensionTooLarge, "chain dimension exceeds 2^14");
    CMatrix total = CMatrix::Identity(dim, dim);
    for (const auto& gate : circuit.gates) {
        const auto& term = gens.terms().at(static_cast<std::size_t>(gate.generator));
        const CMatrix local = gate_unitary(gate, circuit, gens, policy);
        total = embed_local(local, term.sites, gens.sites(), gens.local_dim()) * total;
    }
    return total;
}

double path_cost(const ControlPath& path) { return path.samples().cwiseAbs().sum() / path.steps(); }

double cost_lower_bound(const PureState& psi_final, int d, double c, BoundMode mode, const NumericPolicy& policy) {
    if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "bound constant must be positive");
    if (d != psi_final.local_dim()) throw Error(ErrorKind::DimensionMismatch, "d differs from the state");
    const auto profile = entropy_profile(psi_final, policy);
    if (profile.empty()) return 0.0;
    const double entanglement = mode == BoundMode::MaxCut ? *std::max_element(profile.begin(), profile.end())
                                                          : std::accumulate(profile.begin(), profile.end(), 0.0);
    return entanglement / (c * std::log(static_cast<double>(d)));
}

double weighted_complexity(const TrotterCircuit& circuit, const GeneratorSet& gens, int d,
                           const NumericPolicy& policy) {
    if (d != gens.local_dim()) throw Error(ErrorKind::DimensionMismatch, "d differs from the generator set");
    double total = 0.0;
    for (const auto& gate : circuit.gates) total += entangling_power(gate_unitary(gate, circuit, gens, policy), d, policy);
    return total;
}

std::vector<LayerRecord> proof_trace(const ControlPath& path, const GeneratorSet& gens, const PureState& phi,
                                     Cut cut, double c, const NumericPolicy& policy) {
    validate_cut(cut, phi.sites());
    for (double e : entropy_profile(phi, policy)) {
        if (e > 1e-10) throw Error(ErrorKind::InvalidArgument, "proof_trace starts from a product state");
    }
    const auto states = layer_states(path, gens, phi, policy);
    const int d = gens.local_dim();
    const double scale = c * std::log(static_cast<double>(d)) / path.steps();
    std::vector<LayerRecord> records;
    records.reserve(path.steps());
    double before = cut_entropy(phi, cut, policy);
    for (int layer = 1; layer <= path.steps(); ++layer) {
        const PureState psi(phi.sites(), d, states[layer]);
        LayerRecord rec;
        rec.layer = layer;
        rec.entropy_before = before;
        rec.entropy_after = cut_entropy(psi, cut, policy);
        rec.increment = rec.entropy_after - rec.entropy_before;
        rec.budget = scale * path.samples().col(layer - 1).cwiseAbs().sum();
        rec.exceeds = rec.increment > rec.budget + 1e-12;
        records.push_back(rec);
        before = rec.entropy_after;
    }
    return records;
}

CMatrix normalized_traceless(const CMatrix& h) {
    CMatrix out = 0.5 * (h + h.adjoint());
    out -= (out.trace() / static_cast<double>(out.rows())) * CMatrix::Identity(out.rows(), out.cols());
    const double norm = op_norm(out);
    if (!(norm > 0.0)) throw Error(ErrorKind::InvalidArgument, "traceless part vanishes");
    return out / norm;
}

GeneratorSet random_generator_set(int n, int d, int count, bool geometric, Rng& rng) {
    std::vector<GeneratorTerm> terms;
    terms.reserve(count);
    for (int j = 0; j < count; ++j) {
        SitePair sites;
        if (geometric) {
            const int i = uniform_int(rng, 0, n - 2);
            sites = {i, i + 1};
        } else {
            const int a = uniform_int(rng, 0, n - 1);
            int b = uniform_int(rng, 0, n - 2);
            if (b >= a) ++b;
            sites = {std::min(a, b), std::max(a, b)};
        }
        terms.push_back({normalized_traceless(gue_unit_norm(d * d, rng)), sites});
    }
    return GeneratorSet(n, d, std::move(terms), geometric);
}

}  // namespace costbound
