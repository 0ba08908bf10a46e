#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace oracle {


double spectral_norm(const CMatrix& a) {
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix kron_all(const std::vector<CMatrix>& factors) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (const auto& f : factors) out = kron(out, f);
    return out;
}

namespace {

std::vector<int> digits_of(long long index, int n, int d) {
    std::vector<int> digits(n);
    for (int i = n - 1; i >= 0; --i) {
        digits[i] = static_cast<int>(index % d);
        index /= d;
    }
    return digits;
}

long long index_of(const std::vector<int>& digits, int d) {
    long long index = 0;
    for (int x : digits) index = index * d + x;
    return index;
}

}  // namespace

CMatrix site_permutation(const std::vector<int>& perm, int d) {
    const int n = static_cast<int>(perm.size());
    long long dim = 1;
    for (int i = 0; i < n; ++i) dim *= d;
    CMatrix p = CMatrix::Zero(dim, dim);
    for (long long in = 0; in < dim; ++in) {
        const auto a = digits_of(in, n, d);
        std::vector<int> b(n);
        for (int i = 0; i < n; ++i) b[perm[i]] = a[i];
        p(index_of(b, d), in) = 1.0;
    }
    return p;
}

CMatrix loop_partial_trace(const CMatrix& rho, int n, int d, const std::vector<int>& keep) {
    std::vector<int> traced;
    for (int i = 0; i < n; ++i)
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) traced.push_back(i);
    const int k = static_cast<int>(keep.size());
    long long dk = 1, dt = 1;
    for (int i = 0; i < k; ++i) dk *= d;
    for (std::size_t i = 0; i < traced.size(); ++i) dt *= d;
    CMatrix out = CMatrix::Zero(dk, dk);
    for (long long a = 0; a < dk; ++a) {
        for (long long b = 0; b < dk; ++b) {
            const auto da = digits_of(a, k, d), db = digits_of(b, k, d);
            for (long long e = 0; e < dt; ++e) {
                const auto de = digits_of(e, static_cast<int>(traced.size()), d);
                std::vector<int> row(n), col(n);
                for (int i = 0; i < k; ++i) row[keep[i]] = da[i], col[keep[i]] = db[i];
                for (std::size_t i = 0; i < traced.size(); ++i) row[traced[i]] = col[traced[i]] = de[i];
                out(a, b) += rho(index_of(row, d), index_of(col, d));
            }
        }
    }
    return out;
}

RVector schmidt_spectrum(const CVector& psi, int n, int d, int s) {
    long long left = 1;
    for (int i = 0; i < s; ++i) left *= d;
    const long long right = psi.size() / left;
    CMatrix m(left, right);
    for (long long a = 0; a < left; ++a)
        for (long long b = 0; b < right; ++b) m(a, b) = psi(a * right + b);
    (void)n;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues().array().square();
}

double shannon(const RVector& p) {
    double s = 0.0;
    for (double x : p)
        if (x > 1e-15) s -= x * std::log(x);
    return s;
}

double schmidt_entropy(const CVector& psi, int n, int d, int s) { return shannon(schmidt_spectrum(psi, n, d, s)); }

double branch_enumeration_norm(const CMatrix& u) {
    Eigen::ComplexEigenSolver<CMatrix> es(u);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double theta = std::arg(es.eigenvalues()(i));
        double best = std::abs(theta);
        for (int m = -2; m <= 2; ++m) best = std::min(best, std::abs(theta + 2 * std::numbers::pi * m));
        worst = std::max(worst, best);
    }
    return worst;
}

CMatrix eig_exp(const CMatrix& a) {
    Eigen::ComplexEigenSolver<CMatrix> es(a);
    const CMatrix v = es.eigenvectors();
    CVector e = es.eigenvalues().array().exp();
    return v * e.asDiagonal() * v.inverse();
}

double riemann(const std::function<double(double)>& f, int steps) {
    double sum = 0.0;
    for (int k = 1; k <= steps; ++k) sum += f(static_cast<double>(k) / steps);
    return sum / steps;
}

RVector williamson_spectrum(const RMatrix& gamma) {
    const int m = static_cast<int>(gamma.rows() / 2);
    RMatrix sigma = RMatrix::Zero(2 * m, 2 * m);
    for (int k = 0; k < m; ++k) sigma(2 * k, 2 * k + 1) = 1, sigma(2 * k + 1, 2 * k) = -1;
    Eigen::EigenSolver<RMatrix> es(gamma * sigma);
    std::vector<double> mags;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) mags.push_back(std::abs(es.eigenvalues()(i)));
    std::sort(mags.rbegin(), mags.rend());
    RVector out(m);
    for (int k = 0; k < m; ++k) out(k) = 0.5 * (mags[2 * k] + mags[2 * k + 1]);
    return out;
}

RMatrix two_mode_squeezed(double r) {
    const double c = std::cosh(2 * r), s = std::sinh(2 * r);
    RMatrix g = RMatrix::Zero(4, 4);
    g.diagonal().setConstant(c);
    g(0, 2) = g(2, 0) = s;
    g(1, 3) = g(3, 1) = -s;
    return g;
}

double gaussian_g(double nu) {
    const double a = (nu + 1) / 2, b = (nu - 1) / 2;
    return a * std::log(a) - (b > 0 ? b * std::log(b) : 0.0);
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CMatrix random_hermitian(int dim, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> nd;
    CMatrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = {nd(gen), nd(gen)};
    return (a + a.adjoint()) / 2.0;
}

}  // namespace oracle
