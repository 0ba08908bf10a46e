#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "costbound/dense_core.hpp"
#include "costbound/quench_lab.hpp"
#include "oracles.hpp"

using namespace costbound;

namespace {

const Complex I1{0.0, 1.0};

CMatrix pauli(char p) {
    CMatrix m = CMatrix::Zero(2, 2);
    if (p == 'X') m(0, 1) = m(1, 0) = 1;
    if (p == 'Z') m(0, 0) = 1, m(1, 1) = -1;
    if (p == 'I') m = CMatrix::Identity(2, 2);
    return m;
}

CMatrix single(char p, int site, int n) {
    std::vector<CMatrix> f(n, pauli('I'));
    f[site] = pauli(p);
    return oracle::kron_all(f);
}

// -J sum ZZ - g sum X from Kronecker products
CMatrix kron_tfim(int n, double J, double g, bool periodic) {
    const long long dim = ipow(2, n);
    CMatrix h = CMatrix::Zero(dim, dim);
    for (int i = 0; i + 1 < n; ++i) h -= J * single('Z', i, n) * single('Z', i + 1, n);
    if (periodic && n > 2) h -= J * single('Z', n - 1, n) * single('Z', 0, n);
    for (int i = 0; i < n; ++i) h -= g * single('X', i, n);
    return h;
}

std::vector<double> grid(double lo, double hi, int points) {
    std::vector<double> t(points);
    for (int i = 0; i < points; ++i) t[i] = lo + (hi - lo) * i / (points - 1);
    return t;
}

GrowthCurve synthetic_curve(const std::vector<double>& times, const std::function<double(double)>& f) {
    GrowthCurve c;
    c.n = 2;
    c.times = times;
    BoundSeries s;
    s.label = "synthetic";
    for (double t : times) {
        c.entropies.push_back({f(t)});
        s.max_cut.push_back(f(t));
        s.sum_cuts.push_back(f(t));
    }
    c.bounds.push_back(s);
    return c;
}

}  // namespace

TEST_SUITE("quench_lab") {

TEST_CASE("tfim_hamiltonian matches the Kronecker construction") {
    const RMatrix h2 = tfim_hamiltonian(2, {1.0, 0.0, false});
    const RVector spec = symmetric_eig(h2).values;
    CHECK(spec(0) == doctest::Approx(-1.0));
    CHECK(spec(1) == doctest::Approx(-1.0));
    CHECK(spec(2) == doctest::Approx(1.0));
    CHECK(spec(3) == doctest::Approx(1.0));

    for (bool periodic : {false, true}) {
        const RMatrix h = tfim_hamiltonian(4, {0.8, 1.3, periodic});
        CHECK(oracle::max_abs(CMatrix(h.cast<Complex>() - kron_tfim(4, 0.8, 1.3, periodic))) < 1e-14);
    }
    CHECK_THROWS_AS(tfim_hamiltonian(15, {}), Error);
}

TEST_CASE("periodic TFIM commutes with the cyclic shift") {
    const int n = 5;
    const CMatrix h = tfim_hamiltonian(n, {1.0, 0.7, true}).cast<Complex>();
    const CMatrix p = oracle::site_permutation({1, 2, 3, 4, 0}, 2);
    CHECK(oracle::max_abs(CMatrix(p * h * p.adjoint() - h)) < 1e-14);
    const RVector a = symmetric_eig(tfim_hamiltonian(n, {1.0, 0.7, true})).values;
    const RVector b = hermitian_eig(CMatrix(p * h * p.adjoint())).values;
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("TfimPropagator agrees with dense exponentiation") {
    for (bool periodic : {false, true}) {
        const int n = 5;
        const TfimModel model{1.0, 0.6, periodic};
        const TfimPropagator prop(n, model);
        const CMatrix h = tfim_hamiltonian(n, model).cast<Complex>();
        Rng rng(61);
        const CVector psi0 = complex_gaussian_vector(ipow(2, n), rng).normalized();
        for (double t : {0.0, 0.37, 2.0}) {
            const CVector want = oracle::eig_exp(CMatrix(-I1 * t * h)) * psi0;
            CHECK((prop.evolve(psi0, t) - want).norm() < 1e-10);
        }
        CHECK(prop.energy(psi0) == doctest::Approx(psi0.dot(h * psi0).real()));
    }
}

TEST_CASE("quench_spin basics") {
    QuenchSpec spec;
    spec.model = TfimModel{1.0, 1.0, false};
    spec.n = 6;
    spec.times = grid(0.0, 3.0, 16);
    const GrowthCurve c = quench_spin(spec);
    for (double e : c.entropies.front()) CHECK(std::abs(e) < 1e-12);
    // reflection-symmetric initial state
    for (const auto& profile : c.entropies)
        for (int s = 1; s < 6; ++s) CHECK(std::abs(profile[s - 1] - profile[5 - s]) < 1e-9);
    for (double d : c.energy_drift) CHECK(d < 1e-8);
    for (double d : c.norm_drift) CHECK(d < 1e-9);
    REQUIRE(c.bounds.size() == 2u);
    CHECK(c.bounds[0].label == "c=22");
    for (std::size_t i = 0; i < c.times.size(); ++i) {
        CHECK(c.bounds[0].max_cut[i] <= c.bounds[0].sum_cuts[i] + 1e-15);
        CHECK(c.bounds[0].max_cut[i] <= c.cost_surrogate[i] + 1e-12);
        CHECK(c.bounds[1].max_cut[i] >= c.bounds[0].max_cut[i]);
        for (double e : c.entropies[i]) CHECK(e >= -1e-9);
    }
}

TEST_CASE("classical Ising keeps basis states unentangled") {
    QuenchSpec spec;
    spec.model = TfimModel{1.0, 0.0, false};
    spec.n = 5;
    spec.times = grid(0.0, 4.0, 9);
    spec.initial = {0, 1, 1, 0, 1};
    for (const auto& profile : quench_spin(spec).entropies)
        for (double e : profile) CHECK(std::abs(e) < 1e-12);
}

TEST_CASE("half-chain entropy grows monotonically at early times") {
    QuenchSpec spec;
    spec.model = TfimModel{};
    spec.n = 10;
    spec.times = grid(0.0, 1.0, 11);
    const GrowthCurve c = quench_spin(spec);
    for (std::size_t i = 1; i < c.times.size(); ++i) CHECK(c.entropies[i][4] > c.entropies[i - 1][4]);
}

TEST_CASE("QuenchSpec validation") {
    QuenchSpec spec;
    spec.n = 4;
    CHECK_THROWS_AS(spec.validate(), Error);
    spec.times = {0.0, 0.5, 0.5};
    CHECK_THROWS_AS(spec.validate(), Error);
    spec.times = {-1.0, 0.5};
    CHECK_THROWS_AS(spec.validate(), Error);
    spec.times = {0.0, 0.5};
    spec.initial = {0, 1};
    CHECK_THROWS_AS(spec.validate(), Error);
    spec.initial = {};
    spec.model = HarmonicChainModel{1.0, 0.6};
    CHECK_THROWS_AS(spec.validate(), Error);
    spec.model = HarmonicChainModel{1.0, 0.45};
    CHECK_NOTHROW(spec.validate());
}

TEST_CASE("HarmonicPropagator is the exponential of sigma h") {
    const HarmonicPropagator prop(6, {1.1, 0.4});
    const RMatrix sh = symplectic_form(6) * prop.kernel();
    for (double t : {0.0, 0.3, 5.0}) {
        const RMatrix want = oracle::eig_exp(CMatrix((t * sh).cast<Complex>())).real();
        CHECK(oracle::max_abs(RMatrix(prop.at(t) - want)) < 1e-10);
        CHECK(symplecticity_defect(prop.at(t)) < 1e-12);
    }
}

TEST_CASE("quench_gaussian basics") {
    QuenchSpec spec;
    spec.n = 8;
    spec.times = grid(0.0, 6.0, 7);
    spec.model = HarmonicChainModel{1.0, 0.0};
    for (const auto& profile : quench_gaussian(spec).entropies)
        for (double e : profile) CHECK(std::abs(e) < 1e-12);

    spec.model = HarmonicChainModel{1.0, 0.45};
    const GrowthCurve c = quench_gaussian(spec);
    for (double e : c.entropies.front()) CHECK(std::abs(e) < 1e-12);
    CHECK(c.entropies.back()[3] > 0.0);
    REQUIRE(c.bounds.size() == 2u);
    CHECK(c.bounds[0].label == "proof");
    for (std::size_t i = 0; i < c.times.size(); ++i) {
        CHECK(c.uncertainty_margin[i] >= -1e-8);
        CHECK(c.purity_defect[i] < 1e-6);
        CHECK(c.symplectic_defect[i] < 1e-8);
        CHECK(c.bounds[0].max_cut[i] <= c.cost_surrogate[i] + 1e-12);
    }
    spec.model = TfimModel{};
    CHECK_THROWS_AS(quench_gaussian(spec), Error);
}

TEST_CASE("quench_gaussian at n = 200") {
    QuenchSpec spec;
    spec.n = 200;
    spec.times = {0.0, 40.0};
    spec.model = HarmonicChainModel{};
    const GrowthCurve c = quench_gaussian(spec);
    for (const auto& profile : c.entropies)
        for (double e : profile) {
            CHECK(std::isfinite(e));
            CHECK(e >= -1e-9);
        }
    CHECK(c.purity_defect.back() < 1e-6);
}

TEST_CASE("group velocity and default grids") {
    CHECK(max_group_velocity(TfimModel{1.0, 1.0, false}) == doctest::Approx(2.0));
    CHECK(max_group_velocity(TfimModel{1.0, 0.5, false}) == doctest::Approx(1.0));

    const HarmonicChainModel chain{1.0, 0.45};
    double v = 0.0;
    for (int i = 1; i < 4000; ++i) {
        const double k = std::numbers::pi * i / 4000, dk = 1e-6;
        auto omega = [&](double q) { return std::sqrt(1.0 + 0.9 * std::cos(q)); };
        v = std::max(v, std::abs(omega(k + dk) - omega(k - dk)) / (2 * dk));
    }
    CHECK(max_group_velocity(chain) == doctest::Approx(v).epsilon(1e-4));

    const auto t = default_times(TfimModel{}, 8, 25);
    CHECK(t.size() == 25u);
    CHECK(t.front() == 0.0);
    CHECK(t.back() == doctest::Approx(6.0));
}

TEST_CASE("fit_linear_slope on synthetic curves") {
    const auto times = grid(0.0, 2.0, 21);
    const LinearFit zero = fit_linear_slope(synthetic_curve(times, [](double) { return 0.0; }), {0.0, 2.0});
    CHECK(zero.slope == 0.0);
    CHECK(zero.r_squared == 0.0);
    CHECK_FALSE(zero.r_squared_defined);

    const LinearFit lin = fit_linear_slope(synthetic_curve(times, [](double t) { return 3 * t; }), {0.5, 1.5});
    CHECK(lin.slope == doctest::Approx(3.0));
    CHECK(lin.intercept == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(lin.r_squared == doctest::Approx(1.0));
    CHECK(lin.samples == 11);

    std::vector<double> x, y;
    for (double t : times) x.push_back(t), y.push_back(t * t);
    CHECK(fit_line(x, y).slope == doctest::Approx(oracle::ols_slope(x, y)));

    CHECK_THROWS_AS(fit_linear_slope(synthetic_curve(times, [](double t) { return t; }), {0.0, 0.25}), Error);
}

TEST_CASE("TFIM n = 12 grows linearly before saturation") {
    QuenchSpec spec;
    spec.model = TfimModel{1.0, 1.0, false};
    spec.n = 12;
    spec.times = grid(0.0, 2.0, 21);
    const GrowthCurve c = quench_spin(spec);
    const LinearFit fit = fit_linear_slope(c, {0.5, 2.0});
    CHECK(fit.slope > 0.0);
    CHECK(fit.r_squared >= 0.98);
    for (double d : c.energy_drift) CHECK(d < 1e-8);
}

TEST_CASE("default_fit_window") {
    QuenchSpec spec;
    spec.model = TfimModel{};
    spec.n = 8;
    spec.times = default_times(spec.model, 8, 61);
    const GrowthCurve c = quench_spin(spec);
    const TimeWindow w = default_fit_window(c, spec.model);
    CHECK(w.lo == doctest::Approx(0.25));
    CHECK(w.hi > w.lo);
    const LinearFit fit = fit_linear_slope(c, w);
    CHECK(fit.slope > 0.0);
    CHECK(fit.r_squared >= 0.98);
}

TEST_CASE("saturation model and scaling rows") {
    CHECK(saturation_ratio(2) == doctest::Approx(1.0));
    CHECK(saturation_ratio(8) == doctest::Approx(4.0));
    CHECK(saturation_ratio(16) / saturation_ratio(8) == doctest::Approx(2.0));
    CHECK(saturation_ratio(7) == doctest::Approx(12.0 / 3.5));

    QuenchSpec spec;
    spec.model = TfimModel{};
    spec.n = 2;
    spec.times = grid(0.0, 3.0, 7);
    const ScalingRow two = scaling_row(quench_spin(spec));
    CHECK(two.sum_plateau == doctest::Approx(two.max_plateau));
    CHECK(two.ratio == doctest::Approx(1.0));

    std::vector<QuenchSpec> specs;
    for (int n : {6, 8}) {
        QuenchSpec s;
        s.model = TfimModel{};
        s.n = n;
        s.times = default_times(s.model, n, 31);
        specs.push_back(s);
    }
    const auto rows = scaling_comparison(specs);
    REQUIRE(rows.size() == 2u);
    CHECK(rows[1].ratio > rows[0].ratio);
    for (const auto& r : rows) CHECK(std::abs(r.ratio / r.oracle - 1.0) <= 0.3);

    std::vector<QuenchSpec> gaussian;
    for (int n : {20, 40}) {
        QuenchSpec s;
        s.model = HarmonicChainModel{};
        s.n = n;
        s.times = default_times(s.model, n, 13);
        gaussian.push_back(s);
    }
    const auto grows = scaling_comparison(gaussian);
    CHECK(grows[1].ratio > grows[0].ratio);

    specs[1].model = TfimModel{1.0, 0.5, false};
    CHECK_THROWS_AS(scaling_comparison(specs), Error);
}

}  // TEST_SUITE
