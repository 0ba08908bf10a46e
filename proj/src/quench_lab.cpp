#include "costbound/quench_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "costbound/dense_core.hpp"
#include "costbound/parallel.hpp"

namespace costbound {

namespace {

constexpr int kMaxSpinSites = 14;

std::vector<std::pair<int, int>> tfim_bonds(int n, bool periodic) {
    std::vector<std::pair<int, int>> bonds;
    for (int i = 0; i + 1 < n; ++i) bonds.emplace_back(i, i + 1);
    if (periodic && n > 2) bonds.emplace_back(n - 1, 0);
    return bonds;
}

// Z-part of the TFIM energy of basis state r; site i is bit n-1-i.
double tfim_diagonal(long long r, int n, const TfimModel& model) {
    double e = 0.0;
    for (auto [a, b] : tfim_bonds(n, model.periodic)) {
        const int za = ((r >> (n - 1 - a)) & 1) ? -1 : 1;
        const int zb = ((r >> (n - 1 - b)) & 1) ? -1 : 1;
        e -= model.J * za * zb;
    }
    return e;
}

double tfim_term_norms(int n, const TfimModel& model) {
    return static_cast<double>(tfim_bonds(n, model.periodic).size()) * std::abs(model.J) + n * std::abs(model.g);
}

void require_spin_size(int n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "spin quench needs n >= 2");
    if (n > kMaxSpinSites) throw Error(ErrorKind::DimensionTooLarge, "spin quench supports n <= 14");
}

template <class Series>
double series_max(const Series& v) {
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace

void QuenchSpec::validate() const {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "quench needs n >= 2");
    if (times.empty()) throw Error(ErrorKind::InvalidArgument, "quench needs at least one time");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || times[i] < 0.0) {
            throw Error(ErrorKind::InvalidArgument, "quench times must be finite and non-negative");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw Error(ErrorKind::InvalidArgument, "quench times must be strictly increasing");
        }
    }
    if (!initial.empty() && static_cast<int>(initial.size()) != n) {
        throw Error(ErrorKind::DimensionMismatch, "initial state needs one digit per site");
    }
    for (int digit : initial) {
        if (digit != 0 && digit != 1) throw Error(ErrorKind::InvalidArgument, "initial digits must be 0 or 1");
    }
    if (const auto* chain = std::get_if<HarmonicChainModel>(&model)) {
        if (!(chain->omega * chain->omega > 2.0 * std::abs(chain->kappa))) {
            throw Error(ErrorKind::InvalidArgument, "harmonic chain needs omega^2 > 2|kappa|");
        }
    }
}

RMatrix tfim_hamiltonian(int n, const TfimModel& model) {
    require_spin_size(n);
    const long long dim = ipow(2, n);
    RMatrix h = RMatrix::Zero(dim, dim);
    for (long long r = 0; r < dim; ++r) {
        h(r, r) = tfim_diagonal(r, n, model);
        for (int i = 0; i < n; ++i) h(r ^ (1LL << (n - 1 - i)), r) -= model.g;
    }
    return h;
}

TfimPropagator::TfimPropagator(int n, const TfimModel& model) : n_(n), model_(model), half_(0) {
    require_spin_size(n);
    half_ = ipow(2, n - 1);
    const long long mask = 2 * half_ - 1;
    RMatrix even = RMatrix::Zero(half_, half_);
    RMatrix odd = RMatrix::Zero(half_, half_);
    // sector basis (|r> +- |mask ^ r>)/sqrt(2) with r < half
    for (long long r = 0; r < half_; ++r) {
        const double diag = tfim_diagonal(r, n, model);
        even(r, r) += diag;
        odd(r, r) += diag;
        for (int i = 0; i < n; ++i) {
            const long long flipped = r ^ (1LL << (n - 1 - i));
            if (flipped < half_) {
                even(flipped, r) -= model.g;
                odd(flipped, r) -= model.g;
            } else {
                const long long rep = flipped ^ mask;
                even(rep, r) -= model.g;
                odd(rep, r) += model.g;
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> es_even(even);
    Eigen::SelfAdjointEigenSolver<RMatrix> es_odd(odd);
    if (es_even.info() != Eigen::Success || es_odd.info() != Eigen::Success) {
        throw Error(ErrorKind::NoConvergence, "TFIM diagonalization did not converge");
    }
    even_values_ = es_even.eigenvalues();
    even_vectors_ = es_even.eigenvectors();
    odd_values_ = es_odd.eigenvalues();
    odd_vectors_ = es_odd.eigenvectors();
}

CVector TfimPropagator::evolve(const CVector& psi0, double t) const {
    if (psi0.size() != 2 * half_) throw Error(ErrorKind::DimensionMismatch, "state has the wrong dimension");
    const long long mask = 2 * half_ - 1;
    const double r2 = std::sqrt(0.5);
    CVector plus(half_), minus(half_);
    for (long long r = 0; r < half_; ++r) {
        plus(r) = r2 * (psi0(r) + psi0(r ^ mask));
        minus(r) = r2 * (psi0(r) - psi0(r ^ mask));
    }
    auto step = [t](const RVector& values, const RMatrix& vectors, const CVector& v) {
        CVector c = vectors.transpose().cast<Complex>() * v;
        for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::exp(Complex(0.0, -values(k) * t));
        return CVector(vectors.cast<Complex>() * c);
    };
    plus = step(even_values_, even_vectors_, plus);
    minus = step(odd_values_, odd_vectors_, minus);
    CVector out(2 * half_);
    for (long long r = 0; r < half_; ++r) {
        out(r) = r2 * (plus(r) + minus(r));
        out(r ^ mask) = r2 * (plus(r) - minus(r));
    }
    return out;
}

CVector TfimPropagator::apply_h(const CVector& psi) const {
    const long long dim = 2 * half_;
    CVector out = CVector::Zero(dim);
    for (long long r = 0; r < dim; ++r) {
        out(r) += tfim_diagonal(r, n_, model_) * psi(r);
        for (int i = 0; i < n_; ++i) out(r ^ (1LL << (n_ - 1 - i))) -= model_.g * psi(r);
    }
    return out;
}

double TfimPropagator::energy(const CVector& psi) const { return psi.dot(apply_h(psi)).real(); }

GrowthCurve quench_spin(const QuenchSpec& spec, const NumericPolicy& policy) {
    spec.validate();
    const auto* model = std::get_if<TfimModel>(&spec.model);
    if (model == nullptr) throw Error(ErrorKind::InvalidArgument, "quench_spin needs a TFIM model");
    return quench_spin(spec, TfimPropagator(spec.n, *model), policy);
}

GrowthCurve quench_spin(const QuenchSpec& spec, const TfimPropagator& propagator, const NumericPolicy& policy) {
    spec.validate();
    const auto* model = std::get_if<TfimModel>(&spec.model);
    if (model == nullptr) throw Error(ErrorKind::InvalidArgument, "quench_spin needs a TFIM model");
    if (propagator.sites() != spec.n) throw Error(ErrorKind::DimensionMismatch, "propagator size differs from spec");
    const int n = spec.n;
    std::vector<int> digits = spec.initial;
    if (digits.empty()) digits.assign(n, 0);
    const CVector psi0 = PureState::basis(n, 2, digits).amplitudes();
    const double e0 = propagator.energy(psi0);

    const std::size_t count = spec.times.size();
    GrowthCurve curve;
    curve.n = n;
    curve.times = spec.times;
    curve.entropies.resize(count);
    std::vector<double> norm_drift(count), energy_drift(count);
    parallel_for(count, [&](std::size_t i) {
        const CVector psi = propagator.evolve(psi0, spec.times[i]);
        const double norm = psi.norm();
        norm_drift[i] = std::abs(norm - 1.0);
        if (spec.diagnostics) energy_drift[i] = std::abs(propagator.energy(psi) - e0);
        curve.entropies[i] = entropy_profile(PureState::normalized(n, 2, psi), policy);
    });
    if (spec.diagnostics) {
        curve.norm_drift = std::move(norm_drift);
        curve.energy_drift = std::move(energy_drift);
    }

    const double log_d = std::log(2.0);
    for (double c : {22.0, 2.0}) {
        BoundSeries series;
        series.label = c == 22.0 ? "c=22" : "c=2";
        for (const auto& profile : curve.entropies) {
            series.max_cut.push_back(series_max(profile) / (c * log_d));
            series.sum_cuts.push_back(std::accumulate(profile.begin(), profile.end(), 0.0) / (c * log_d));
        }
        curve.bounds.push_back(std::move(series));
    }
    curve.bound_scale = 1.0 / (22.0 * log_d);
    const double norms = tfim_term_norms(n, *model);
    for (double t : spec.times) curve.cost_surrogate.push_back(t * norms);
    return curve;
}

HarmonicPropagator::HarmonicPropagator(int n, const HarmonicChainModel& model) : n_(n), model_(model) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "harmonic chain needs n >= 1");
    RMatrix k = model.omega * model.omega * RMatrix::Identity(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        k(i, i + 1) = model.kappa;
        k(i + 1, i) = model.kappa;
    }
    const SymmetricEigen es = symmetric_eig(k);
    if (!(es.values.minCoeff() > 0.0)) throw Error(ErrorKind::InvalidArgument, "harmonic chain kernel is not positive");
    freq_ = es.values.cwiseSqrt();
    modes_ = es.vectors;
}

RMatrix HarmonicPropagator::at(double t) const {
    const RVector c = (freq_ * t).array().cos();
    const RVector s = (freq_ * t).array().sin();
    const RMatrix xx = modes_ * c.asDiagonal() * modes_.transpose();
    const RMatrix xp = modes_ * s.cwiseQuotient(freq_).asDiagonal() * modes_.transpose();
    const RMatrix px = -(modes_ * s.cwiseProduct(freq_).asDiagonal() * modes_.transpose());
    RMatrix out(2 * n_, 2 * n_);
    for (int j = 0; j < n_; ++j) {
        for (int i = 0; i < n_; ++i) {
            out(2 * i, 2 * j) = xx(i, j);
            out(2 * i, 2 * j + 1) = xp(i, j);
            out(2 * i + 1, 2 * j) = px(i, j);
            out(2 * i + 1, 2 * j + 1) = xx(i, j);
        }
    }
    return out;
}

RMatrix HarmonicPropagator::kernel() const {
    RMatrix h = RMatrix::Zero(2 * n_, 2 * n_);
    for (int i = 0; i < n_; ++i) {
        h(2 * i, 2 * i) = model_.omega * model_.omega;
        h(2 * i + 1, 2 * i + 1) = 1.0;
        if (i + 1 < n_) {
            h(2 * i, 2 * i + 2) = model_.kappa;
            h(2 * i + 2, 2 * i) = model_.kappa;
        }
    }
    return h;
}

GrowthCurve quench_gaussian(const QuenchSpec& spec, const NumericPolicy& policy) {
    spec.validate();
    const auto* model = std::get_if<HarmonicChainModel>(&spec.model);
    if (model == nullptr) throw Error(ErrorKind::InvalidArgument, "quench_gaussian needs a harmonic-chain model");
    const int n = spec.n;
    if (n > 2000) throw Error(ErrorKind::DimensionTooLarge, "Gaussian quench supports n <= 2000");
    const HarmonicPropagator propagator(n, *model);

    const std::size_t count = spec.times.size();
    GrowthCurve curve;
    curve.n = n;
    curve.times = spec.times;
    curve.entropies.resize(count);
    std::vector<double> margin(count), purity(count), symplectic(count);
    parallel_for(count, [&](std::size_t i) {
        const RMatrix s = propagator.at(spec.times[i]);
        RMatrix gamma = s * s.transpose();
        gamma = 0.5 * (gamma + gamma.transpose()).eval();
        if (spec.diagnostics) {
            margin[i] = uncertainty_margin(gamma);
            purity[i] = (symplectic_eigenvalues(gamma, policy).array() - 1.0).abs().maxCoeff();
            symplectic[i] = symplecticity_defect(s);
        }
        auto& profile = curve.entropies[i];
        profile.reserve(n - 1);
        for (int cut = 1; cut < n; ++cut) {
            const int first = cut <= n - cut ? 0 : cut;
            const int size = cut <= n - cut ? cut : n - cut;
            profile.push_back(mode_block_entropy(gamma, first, size, policy));
        }
    });
    if (spec.diagnostics) {
        curve.uncertainty_margin = std::move(margin);
        curve.purity_defect = std::move(purity);
        curve.symplectic_defect = std::move(symplectic);
    }

    // the vacuum has ||gamma(0)|| = 1
    const std::pair<const char*, BoundProfile> profiles[] = {{"proof", BoundProfile::proof()},
                                                              {"empirical", BoundProfile::default_empirical()}};
    for (const auto& [label, profile] : profiles) {
        const double f = profile(1.0);
        BoundSeries series;
        series.label = label;
        for (const auto& entropies : curve.entropies) {
            series.max_cut.push_back(series_max(entropies) / f);
            series.sum_cuts.push_back(std::accumulate(entropies.begin(), entropies.end(), 0.0) / f);
        }
        curve.bounds.push_back(std::move(series));
    }
    curve.bound_scale = 1.0 / BoundProfile::proof()(1.0);
    const double norms = n * std::max(model->omega * model->omega, 1.0) + (n - 1) * std::abs(model->kappa);
    for (double t : spec.times) curve.cost_surrogate.push_back(t * norms);
    return curve;
}

double max_group_velocity(const QuenchModel& model) {
    if (const auto* tfim = std::get_if<TfimModel>(&model)) return 2.0 * std::min(std::abs(tfim->J), std::abs(tfim->g));
    const auto& chain = std::get<HarmonicChainModel>(model);
    constexpr int kGrid = 20000;
    double v = 0.0;
    for (int i = 0; i <= kGrid; ++i) {
        const double k = std::numbers::pi * i / kGrid;
        const double omega2 = chain.omega * chain.omega + 2.0 * chain.kappa * std::cos(k);
        if (omega2 > 0.0) v = std::max(v, std::abs(chain.kappa * std::sin(k)) / std::sqrt(omega2));
    }
    return v;
}

std::vector<double> default_times(const QuenchModel& model, int n, int points) {
    if (points < 2) throw Error(ErrorKind::InvalidArgument, "default_times needs at least 2 points");
    double v = max_group_velocity(model);
    if (!(v > 0.0)) v = 1.0;
    const double end = 1.5 * n / v;
    std::vector<double> times(points);
    for (int i = 0; i < points; ++i) times[i] = end * i / (points - 1);
    return times;
}

TimeWindow default_fit_window(const GrowthCurve& curve, const QuenchModel& model) {
    double v = max_group_velocity(model);
    if (!(v > 0.0)) v = 1.0;
    const int half = curve.n / 2;
    double peak = 0.0;
    for (const auto& profile : curve.entropies) peak = std::max(peak, profile.at(half - 1));
    double t_sat = curve.times.back();
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        if (curve.entropies[i].at(half - 1) >= 0.95 * peak) {
            t_sat = curve.times[i];
            break;
        }
    }
    return {0.5 / v, 0.8 * t_sat};
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "fit_line spans differ");
    if (x.size() < 2) throw Error(ErrorKind::WindowTooSmall, "fit_line needs at least 2 points");
    const double m = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw Error(ErrorKind::WindowTooSmall, "fit_line needs distinct x values");
    LinearFit fit;
    fit.samples = static_cast<int>(x.size());
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy <= 1e-300) {
        fit.r_squared = 0.0;
        fit.r_squared_defined = false;
        return fit;
    }
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.r_squared = 1.0 - ss_res / syy;
    return fit;
}

LinearFit fit_linear_slope(const GrowthCurve& curve, TimeWindow window, std::optional<Cut> cut) {
    if (curve.bounds.empty()) throw Error(ErrorKind::InvalidArgument, "growth curve has no bound series");
    if (cut) validate_cut(*cut, curve.n);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        const double t = curve.times[i];
        if (t < window.lo - 1e-12 || t > window.hi + 1e-12) continue;
        x.push_back(t);
        y.push_back(cut ? curve.bound_scale * curve.entropies[i][cut->s - 1] : curve.bounds.front().max_cut[i]);
    }
    if (x.size() < 4) throw Error(ErrorKind::WindowTooSmall, "fit window holds fewer than 4 samples");
    return fit_line(x, y);
}

double saturation_ratio(int n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "saturation_ratio needs n >= 2");
    double sum = 0.0;
    for (int s = 1; s < n; ++s) sum += std::min(s, n - s);
    return sum / (0.5 * n);
}

ScalingRow scaling_row(const GrowthCurve& curve) {
    if (curve.bounds.empty()) throw Error(ErrorKind::InvalidArgument, "growth curve has no bound series");
    ScalingRow row;
    row.n = curve.n;
    row.sum_plateau = series_max(curve.bounds.front().sum_cuts);
    row.max_plateau = series_max(curve.bounds.front().max_cut);
    row.ratio = row.max_plateau > 0.0 ? row.sum_plateau / row.max_plateau : 0.0;
    row.oracle = saturation_ratio(curve.n);
    return row;
}

std::vector<ScalingRow> scaling_comparison(const std::vector<QuenchSpec>& specs, const NumericPolicy& policy) {
    std::vector<ScalingRow> rows;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& spec = specs[i];
        if (spec.model.index() != specs.front().model.index()) {
            throw Error(ErrorKind::InvalidArgument, "scaling specs mix model kinds");
        }
        if (const auto* tfim = std::get_if<TfimModel>(&spec.model)) {
            const auto& ref = std::get<TfimModel>(specs.front().model);
            if (tfim->J != ref.J || tfim->g != ref.g || tfim->periodic != ref.periodic) {
                throw Error(ErrorKind::InvalidArgument, "scaling specs differ in model parameters");
            }
            rows.push_back(scaling_row(quench_spin(spec, policy)));
        } else {
            const auto& chain = std::get<HarmonicChainModel>(spec.model);
            const auto& ref = std::get<HarmonicChainModel>(specs.front().model);
            if (chain.omega != ref.omega || chain.kappa != ref.kappa) {
                throw Error(ErrorKind::InvalidArgument, "scaling specs differ in model parameters");
            }
            rows.push_back(scaling_row(quench_gaussian(spec, policy)));
        }
    }
    return rows;
}

}  // namespace costbound
