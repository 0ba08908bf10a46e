#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "costbound/dense_core.hpp"
#include "costbound/gaussian_cv.hpp"
#include "oracles.hpp"

using namespace costbound;

namespace {

RMatrix beamsplitter_block() {
    RMatrix b = RMatrix::Zero(4, 4);
    b(0, 2) = b(2, 0) = b(1, 3) = b(3, 1) = 1;
    return b;
}

RMatrix embed_modes(const RMatrix& block, int n, int first) {
    RMatrix g = RMatrix::Identity(2 * n, 2 * n);
    g.block(2 * first, 2 * first, block.rows(), block.cols()) = block;
    return g;
}

}  // namespace

TEST_SUITE("gaussian_cv") {

TEST_CASE("symplectic_form") {
    const RMatrix s1 = symplectic_form(1);
    CHECK(s1(0, 0) == 0.0);
    CHECK(s1(0, 1) == 1.0);
    CHECK(s1(1, 0) == -1.0);
    CHECK(s1(1, 1) == 0.0);
    const RMatrix s = symplectic_form(4);
    CHECK(oracle::max_abs(RMatrix(s.transpose() + s)) == 0.0);
    CHECK(oracle::max_abs(RMatrix(s * s.transpose() - RMatrix::Identity(8, 8))) == 0.0);
    CHECK(oracle::max_abs(RMatrix(s * s + RMatrix::Identity(8, 8))) == 0.0);
}

TEST_CASE("CovarianceMatrix validation") {
    CHECK_NOTHROW(CovarianceMatrix::vacuum(3));
    CHECK_THROWS_AS(CovarianceMatrix(RMatrix::Identity(2, 2) * 0.5), Error);
    RMatrix asym = RMatrix::Identity(2, 2) * 2.0;
    asym(0, 1) = 0.3;
    CHECK_THROWS_AS(CovarianceMatrix{asym}, Error);
    CHECK_THROWS_AS(CovarianceMatrix(RMatrix::Identity(3, 3)), Error);
    CHECK(CovarianceMatrix::vacuum(2).is_pure());
    CHECK_FALSE(CovarianceMatrix(RMatrix::Identity(2, 2) * 3.0).is_pure());
    CHECK(uncertainty_margin(RMatrix::Identity(4, 4)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("symplectic_eigenvalues examples") {
    const RVector vac = symplectic_eigenvalues(CovarianceMatrix::vacuum(3));
    for (double nu : vac) CHECK(nu == doctest::Approx(1.0));

    const RVector thermal = symplectic_eigenvalues(RMatrix(RMatrix::Identity(2, 2) * 2.5));
    REQUIRE(thermal.size() == 1);
    CHECK(thermal(0) == doctest::Approx(2.5));

    for (double r : {0.1, 0.5, 1.2}) {
        const RMatrix tms = oracle::two_mode_squeezed(r);
        const RMatrix reduced = tms.topLeftCorner(2, 2);
        const RVector nu = symplectic_eigenvalues(reduced);
        CHECK(nu(0) == doctest::Approx(std::cosh(2 * r)));
        CHECK(nu(0) == doctest::Approx(oracle::williamson_spectrum(reduced)(0)));
        const RVector global = symplectic_eigenvalues(CovarianceMatrix(tms));
        CHECK(global(0) == doctest::Approx(1.0));
        CHECK(global(1) == doctest::Approx(1.0));
    }
}

TEST_CASE("symplectic_eigenvalues match the Williamson oracle on random blocks") {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const CovarianceMatrix g = random_pure_covariance(5, rng);
        const RMatrix block = g.matrix().topLeftCorner(6, 6);
        const RVector nu = symplectic_eigenvalues(block);
        const RVector ref = oracle::williamson_spectrum(block);
        for (int k = 0; k < 3; ++k) CHECK(nu(k) == doctest::Approx(ref(k)).epsilon(1e-9));
        for (int k = 0; k + 1 < 3; ++k) CHECK(nu(k) >= nu(k + 1));
    }
}

TEST_CASE("symplectic_eigenvalues reject uncertainty violations") {
    CHECK_THROWS_AS(symplectic_eigenvalues(RMatrix(RMatrix::Identity(2, 2) * 0.5)), Error);
}

TEST_CASE("gaussian_cut_entropy examples") {
    const CovarianceMatrix vac = CovarianceMatrix::vacuum(4);
    for (int s = 1; s < 4; ++s) CHECK(gaussian_cut_entropy(vac, {s}) == 0.0);

    for (double r : {0.05, 0.7, 2.0}) {
        const CovarianceMatrix tms(oracle::two_mode_squeezed(r));
        CHECK(gaussian_cut_entropy(tms, {1}) == doctest::Approx(oracle::gaussian_g(std::cosh(2 * r))));
    }

    CHECK_THROWS_AS(gaussian_cut_entropy(CovarianceMatrix(RMatrix::Identity(4, 4) * 2.0), {1}), Error);
}

TEST_CASE("cut entropy is the same on both sides") {
    Rng rng(42);
    const CovarianceMatrix g = random_pure_covariance(6, rng);
    for (int s = 1; s < 6; ++s) {
        const double left = mode_block_entropy(g.matrix(), 0, s);
        const double right = mode_block_entropy(g.matrix(), s, 6 - s);
        CHECK(std::abs(left - right) < 1e-9);
        CHECK(gaussian_cut_entropy(g, {s}) == doctest::Approx(left).epsilon(1e-9));
    }
}

TEST_CASE("m_matrix spectrum bridge and trace formula") {
    CHECK(oracle::max_abs(RMatrix(m_matrix(RMatrix::Identity(4, 4)) - RMatrix::Identity(4, 4))) < 1e-14);
    const RMatrix th = m_matrix(RMatrix(RMatrix::Identity(2, 2) * 3.0));
    CHECK(oracle::max_abs(RMatrix(th - 9.0 * RMatrix::Identity(2, 2))) < 1e-12);

    Rng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const CovarianceMatrix g = random_pure_covariance(3, rng);
        for (int s = 1; s <= 2; ++s) {
            const RMatrix block = g.matrix().topLeftCorner(2 * s, 2 * s);
            const RMatrix m = m_matrix(block);
            CHECK(oracle::max_abs(RMatrix(m - m.transpose())) < 1e-10);
            RVector spec = symmetric_eig(m).values;
            const RVector nu = symplectic_eigenvalues(block);
            std::vector<double> want;
            for (double v : nu) want.push_back(v * v), want.push_back(v * v);
            std::sort(want.begin(), want.end());
            for (int k = 0; k < 2 * s; ++k) CHECK(spec(k) == doctest::Approx(want[k]).epsilon(1e-8));
            const double e = gaussian_cut_entropy(g, {s});
            CHECK(std::abs(trace_formula_entropy(block) / 2.0 - e) < 1e-9);
        }
    }
}

TEST_CASE("evolve_covariance examples and invariants") {
    Rng rng(44);
    const CovarianceMatrix g = random_pure_covariance(4, rng);
    const QuadraticKernel h = random_local_kernel(4, {1, 2}, rng);
    CHECK(oracle::max_abs(RMatrix(evolve_covariance(g, h, 0.0).matrix() - g.matrix())) < 1e-14);
    const QuadraticKernel zero(RMatrix::Zero(8, 8));
    CHECK(oracle::max_abs(RMatrix(evolve_covariance(g, zero, 1.3).matrix() - g.matrix())) < 1e-14);

    const RMatrix mixed_m = embed_modes(RMatrix::Identity(2, 2) * 2.0, 4, 0);
    const CovarianceMatrix mixed(mixed_m);
    for (double t : {0.1, 0.8, 2.5}) {
        const RMatrix s = symplectic_propagator(h, t);
        CHECK(symplecticity_defect(s) < 1e-8);
        const CovarianceMatrix gt = evolve_covariance(g, h, t);
        CHECK(uncertainty_margin(gt.matrix()) >= -1e-8);
        for (double nu : symplectic_eigenvalues(gt)) CHECK(std::abs(nu - 1.0) < 1e-6);
        // mixed input: global spectrum unchanged
        const RVector before = symplectic_eigenvalues(mixed), after = symplectic_eigenvalues(evolve_covariance(mixed, h, t));
        for (int k = 0; k < 4; ++k) CHECK(after(k) == doctest::Approx(before(k)).epsilon(1e-9));
    }
}

TEST_CASE("evolution generator: d gamma/dt = sigma h gamma - gamma h sigma") {
    Rng rng(45);
    const CovarianceMatrix g = random_pure_covariance(3, rng);
    const QuadraticKernel h = random_local_kernel(3, {0, 2}, rng);
    const RMatrix sigma = symplectic_form(3);
    const double dt = 1e-5;
    const RMatrix fd = (evolve_covariance(g, h, dt).matrix() - evolve_covariance(g, h, -dt).matrix()) / (2 * dt);
    const RMatrix want = sigma * h.matrix() * g.matrix() - g.matrix() * h.matrix() * sigma;
    CHECK(oracle::max_abs(RMatrix(fd - want)) < 1e-7);
}

TEST_CASE("QuadraticKernel structure") {
    Rng rng(46);
    const QuadraticKernel h = random_local_kernel(5, {1, 3}, rng);
    CHECK(h.local());
    CHECK(h.norm() == doctest::Approx(1.0));
    CHECK(numerical_rank(h.matrix(), 1e-10) <= 4);
    const RMatrix& m = h.matrix();
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const bool inside = (i / 2 == 1 || i / 2 == 3) && (j / 2 == 1 || j / 2 == 3);
            if (!inside) CHECK(m(i, j) == 0.0);
        }
    RMatrix asym = RMatrix::Zero(4, 4);
    asym(0, 1) = 1;
    CHECK_THROWS_AS(QuadraticKernel(2, asym, {0, 1}), Error);
}

TEST_CASE("gaussian rates vanish for the vacuum and h = 0") {
    Rng rng(47);
    const CovarianceMatrix vac = CovarianceMatrix::vacuum(4);
    const QuadraticKernel h = random_local_kernel(4, {1, 2}, rng);
    // the entropy is not smooth at a pure product state, so Richardson may refuse
    try {
        const double fd = gaussian_rate_fd(vac, h, {2}, 1e-3);
        CHECK(std::abs(fd) < 1e-6);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::StepTooLarge);
    }
    CHECK(std::abs(gaussian_rate(vac, h, {2}).rate) < 1e-6);
    CHECK_FALSE(gaussian_rate(vac, h, {2}).analytic);

    const CovarianceMatrix g = random_pure_covariance(4, rng);
    const QuadraticKernel zero(4, RMatrix::Zero(4, 4), {1, 2});
    CHECK(gaussian_rate_analytic(g, zero, {2}) == doctest::Approx(0.0));
    CHECK(gaussian_rate_fd(g, zero, {2}, 1e-3) == doctest::Approx(0.0));
    CHECK_THROWS_AS(gaussian_rate_analytic(vac, h, {2}), Error);
}

TEST_CASE("analytic gaussian rate matches finite differences") {
    Rng rng(48);
    int compared = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const GaussianInstance inst = random_gaussian_instance(8, rng);
        if (reduced_gap(inst.gamma, inst.cut) < 1e-4) continue;
        const double a = gaussian_rate_analytic(inst.gamma, inst.h, inst.cut);
        const double f = gaussian_rate_fd_refined(inst.gamma, inst.h, inst.cut);
        CHECK(std::abs(a - f) <= 1e-4 * std::max({std::abs(a), std::abs(f), 1e-6}));
        ++compared;
    }
    CHECK(compared >= 40);
}

TEST_CASE("square-root derivative obeys the norm bound") {
    Rng rng(49);
    for (int trial = 0; trial < 60; ++trial) {
        const GaussianInstance inst = random_gaussian_instance(10, rng);
        if (reduced_gap(inst.gamma, inst.cut) < 1e-8) continue;
        const RateTerms t = gaussian_rate_terms(inst.gamma, inst.h, inst.cut);
        CHECK(t.sqrt_m_dot_norm <= 2.0 * inst.gamma.norm() * inst.h.norm() + 1e-8);
        // X M^{1/2} + M^{1/2} X = dM/dt
        const RMatrix root = psd_sqrt(t.m);
        CHECK(oracle::max_abs(RMatrix(t.sqrt_m_dot * root + root * t.sqrt_m_dot - t.m_dot)) <
              1e-8 * std::max(1.0, oracle::max_abs(t.m_dot)));
        CHECK(t.m_dot_rank <= t.m.rows());
    }
}

TEST_CASE("optimal_local_kernel attains the gradient 1-norm") {
    Rng rng(50);
    for (int trial = 0; trial < 10; ++trial) {
        const CovarianceMatrix g = random_pure_covariance(2, rng);
        const KernelOptimum opt = optimal_local_kernel(g, {0, 1}, {1});
        CHECK(opt.h.norm() == doctest::Approx(1.0));
        CHECK(gaussian_rate_analytic(g, opt.h, {1}) == doctest::Approx(opt.rate).epsilon(1e-9));
        for (int k = 0; k < 5; ++k) {
            const QuadraticKernel h = random_local_kernel(2, {0, 1}, rng);
            CHECK(gaussian_rate_analytic(g, h, {1}) <= opt.rate + 1e-9);
        }
    }
}

TEST_CASE("bound profiles") {
    const BoundProfile proof = BoundProfile::proof(4.0, 1e-4);
    // at ||gamma|| = 1 the log((x+1)/2) term vanishes and only the guard remains
    CHECK(proof(1.0) == doctest::Approx(12.0 * std::abs(std::log(0.5e-4))));
    CHECK_THROWS_AS(proof(0.5), Error);

    const BoundProfile emp = BoundProfile::default_empirical();
    double prev_p = 0, prev_e = 0;
    for (double x = 1.0; x < 50.0; x *= 1.1) {
        CHECK(proof(x) >= prev_p);
        CHECK(emp(x) >= prev_e);
        prev_p = proof(x);
        prev_e = emp(x);
    }
    CHECK_THROWS_AS(theorem1_bound(CovarianceMatrix::trusted(RMatrix::Identity(2, 2) * 0.9), QuadraticKernel(RMatrix::Identity(2, 2)), emp), Error);
}

TEST_CASE("theorem1_bound covers sampled rates") {
    Rng rng(51);
    const BoundProfile emp = BoundProfile::default_empirical();
    const BoundProfile proof = BoundProfile::proof();
    for (int trial = 0; trial < 200; ++trial) {
        const GaussianInstance inst = random_gaussian_instance(6, rng);
        const double rate = gaussian_rate(inst.gamma, inst.h, inst.cut).rate;
        CHECK(rate <= theorem1_bound(inst.gamma, inst.h, emp));
        CHECK(rate <= theorem1_bound(inst.gamma, inst.h, proof));
    }
    for (int trial = 0; trial < 200; ++trial) {
        const CovarianceMatrix g = random_pure_covariance(2, rng);
        const KernelOptimum opt = optimal_local_kernel(g, {0, 1}, {1});
        CHECK(opt.rate <= theorem1_bound(g, opt.h, emp));
    }
}

TEST_CASE("calibrate_empirical covers its inputs") {
    const std::vector<double> norms{1.0, 2.0, 4.0, 8.0};
    const std::vector<double> ratios{0.5, 1.0, 1.5, 3.0};
    const BoundProfile p = calibrate_empirical(norms, ratios, 1.0);
    for (std::size_t i = 0; i < norms.size(); ++i) CHECK(p(norms[i]) >= ratios[i] * (1 - 1e-12));
    const std::vector<double> zeros(4, 0.0);
    CHECK_THROWS_AS(calibrate_empirical(norms, zeros, 1.0), Error);
}

TEST_CASE("gaussian_path_cost") {
    Rng rng(52);
    GaussianControlPath p{ControlPath::zero(2, 10), {random_local_kernel(3, {0, 1}, rng), random_local_kernel(3, {1, 2}, rng)}};
    CHECK(gaussian_path_cost(p) == 0.0);
    p.path = ControlPath::sampled(2, 10, [](int j, double) { return j == 0 ? -0.75 : 0.0; });
    CHECK(gaussian_path_cost(p) == doctest::Approx(0.75));
    p.path = ControlPath::sampled(2, 40, [](int j, double s) { return j == 0 ? 2 * s : 0.0; });
    CHECK(gaussian_path_cost(p) == doctest::Approx(oracle::riemann([](double s) { return 2 * s; }, 40)));
}

TEST_CASE("synthesize_symplectic") {
    Rng rng(53);
    GaussianControlPath zero{ControlPath::zero(1, 4), {random_local_kernel(2, {0, 1}, rng)}};
    CHECK(oracle::max_abs(RMatrix(synthesize_symplectic(zero) - RMatrix::Identity(4, 4))) == 0.0);

    // beamsplitter kernel: (sigma h)^2 = -I, so exp(t sigma h) = cos t + sin t sigma h
    const QuadraticKernel bs(2, beamsplitter_block(), {0, 1});
    CHECK(bs.norm() == doctest::Approx(1.0));
    const double y = 0.9;
    const GaussianControlPath constant{ControlPath::sampled(1, 7, [&](int, double) { return y; }), {bs}};
    const RMatrix sh = symplectic_form(2) * bs.matrix();
    const RMatrix closed = std::cos(y) * RMatrix::Identity(4, 4) + std::sin(y) * sh;
    CHECK(oracle::max_abs(RMatrix(synthesize_symplectic(constant) - closed)) < 1e-12);

    for (int trial = 0; trial < 5; ++trial) {
        const GaussianControlPath path = random_gaussian_path(4, 3, 16, trial % 2 == 0, rng);
        CHECK(symplecticity_defect(synthesize_symplectic(path)) < 1e-8);
    }
}

TEST_CASE("obs2_lower_bound") {
    const BoundProfile emp = BoundProfile::default_empirical();
    CHECK(obs2_lower_bound(CovarianceMatrix::vacuum(3), 1.0, emp, BoundMode::MaxCut) == 0.0);

    Rng rng(54);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + trial % 3;
        const GaussianControlPath path = random_gaussian_path(n, 2 + trial % 4, 16, trial % 2 == 0, rng);
        // the rate bound is applied with the largest norm reached on the path
        CovarianceMatrix g = CovarianceMatrix::vacuum(n);
        double max_norm = g.norm();
        const RMatrix sigma = symplectic_form(n);
        const int steps = path.path.steps();
        for (int k = 1; k <= steps; ++k) {
            RMatrix h = RMatrix::Zero(2 * n, 2 * n);
            for (int j = 0; j < path.path.generators(); ++j) h += path.path.value(j, k) * path.generators[j].matrix();
            g = evolve_covariance(g, RMatrix(mat_exp(RMatrix(sigma * h / steps))));
            max_norm = std::max(max_norm, g.norm());
        }
        const RMatrix s = synthesize_symplectic(path);
        CHECK(oracle::max_abs(RMatrix(s * s.transpose() - g.matrix())) < 1e-9 * std::max(1.0, g.norm()));
        const double lo_max = obs2_lower_bound(g, max_norm, emp, BoundMode::MaxCut);
        const double lo_sum = obs2_lower_bound(g, max_norm, emp, BoundMode::SumCuts);
        CHECK(lo_sum >= lo_max);
        CHECK(lo_max <= gaussian_path_cost(path) + 1e-9);
    }
    CHECK_THROWS_AS(obs2_lower_bound(CovarianceMatrix(RMatrix::Identity(4, 4) * 2.0), 1.0, emp, BoundMode::MaxCut),
                    Error);
}

TEST_CASE("binned_envelope and monotonicity") {
    std::vector<double> x, y;
    for (int i = 0; i < 800; ++i) {
        x.push_back(1.0 + i * 0.01);
        y.push_back(std::sqrt(x.back()) * (0.5 + 0.5 * std::sin(i * 1.7)));
    }
    const auto bins = binned_envelope(x, y, 8);
    REQUIRE(bins.size() == 8u);
    for (const auto& b : bins) CHECK(b.count == 100);
    CHECK(envelope_monotone(bins));

    std::vector<double> falling(y.rbegin(), y.rend());
    for (auto& v : falling) v *= 10;
    CHECK_FALSE(envelope_monotone(binned_envelope(x, falling, 8)));
}

}  // TEST_SUITE
