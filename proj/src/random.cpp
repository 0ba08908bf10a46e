#include "costbound/random.hpp"

#include "costbound/dense_core.hpp"

namespace costbound {

std::uint64_t stream_seed(std::uint64_t run_seed, std::uint64_t index) {
    std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double standard_normal(Rng& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    return dist(rng);
}

double uniform(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(rng);
}

CVector complex_gaussian_vector(Eigen::Index dim, Rng& rng) {
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = standard_normal(rng);
        const double im = standard_normal(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

CMatrix gue_unit_norm(Eigen::Index dim, Rng& rng) {
    CMatrix g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = standard_normal(rng);
            const double im = standard_normal(rng);
            g(i, j) = Complex(re, im);
        }
    CMatrix h = 0.5 * (g + g.adjoint());
    return h / op_norm(h);
}

CMatrix haar_unitary(Eigen::Index dim, Rng& rng) {
    CMatrix g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = standard_normal(rng);
            const double im = standard_normal(rng);
            g(i, j) = Complex(re, im);
        }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < dim; ++i) {
        const Complex diag = r(i, i);
        q.col(i) *= diag / std::abs(diag);
    }
    return q;
}

}  // namespace costbound
