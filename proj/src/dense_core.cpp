#include "costbound/dense_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace costbound {

namespace {

template <class Matrix>
void require_square(const Matrix& a, const char* what) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + ": matrix is " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()));
    }
}

template <class Matrix>
double max_abs_entry(const Matrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

// Upper bound on the spectral norm that avoids an SVD.
template <class Matrix>
double cheap_norm_bound(const Matrix& a) {
    const double one = a.cwiseAbs().colwise().sum().maxCoeff();
    const double inf = a.cwiseAbs().rowwise().sum().maxCoeff();
    return std::sqrt(one * inf);
}

template <class Matrix>
Matrix checked_exp(const Matrix& a, const NumericPolicy& policy) {
    require_square(a, "mat_exp");
    if (a.size() == 0) return a;
    if (cheap_norm_bound(a) > policy.expm_norm_limit && op_norm(a) > policy.expm_norm_limit) {
        throw Error(ErrorKind::Overflow, "mat_exp: operator norm exceeds " +
                                             std::to_string(policy.expm_norm_limit));
    }
    return a.exp();
}

template <class Matrix, class Solver>
Matrix psd_sqrt_impl(const Solver& es, const NumericPolicy& policy) {
    const auto& values = es.eigenvalues();
    const double scale = values.cwiseAbs().maxCoeff();
    if (values.minCoeff() < -policy.psd_tol * scale) {
        throw Error(ErrorKind::NotPSD,
                    "psd_sqrt: eigenvalue " + std::to_string(values.minCoeff()));
    }
    const RVector roots = values.cwiseMax(0.0).cwiseSqrt();
    Matrix b = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
    return (0.5 * (b + b.adjoint())).eval();
}

}  // namespace

long long ipow(int base, int exponent) {
    long long result = 1;
    for (int i = 0; i < exponent; ++i) {
        result *= base;
        if (result > (1LL << 40)) {
            throw Error(ErrorKind::DimensionTooLarge, "dimension overflow");
        }
    }
    return result;
}

double hermiticity_defect(const CMatrix& a) {
    require_square(a, "hermiticity_defect");
    return max_abs_entry(CMatrix(a - a.adjoint()));
}

double unitarity_defect(const CMatrix& u) {
    require_square(u, "unitarity_defect");
    return op_norm(CMatrix(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())));
}

HermitianEigen hermitian_eig(const CMatrix& a, const NumericPolicy& policy) {
    require_square(a, "hermitian_eig");
    if (hermiticity_defect(a) > policy.hermitian_tol * max_abs_entry(a)) {
        throw Error(ErrorKind::NonHermitian, "hermitian_eig: A - A^dag too large");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
    if (es.info() != Eigen::Success) {
        throw Error(ErrorKind::NoConvergence, "hermitian_eig");
    }
    return {es.eigenvalues(), es.eigenvectors()};
}

SymmetricEigen symmetric_eig(const RMatrix& a, const NumericPolicy& policy) {
    require_square(a, "symmetric_eig");
    if (max_abs_entry(RMatrix(a - a.transpose())) > policy.hermitian_tol * max_abs_entry(a)) {
        throw Error(ErrorKind::NonHermitian, "symmetric_eig: A - A^T too large");
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> es(a);
    if (es.info() != Eigen::Success) {
        throw Error(ErrorKind::NoConvergence, "symmetric_eig");
    }
    return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix mat_exp(const CMatrix& a, const NumericPolicy& policy) { return checked_exp(a, policy); }

RMatrix mat_exp(const RMatrix& a, const NumericPolicy& policy) { return checked_exp(a, policy); }

namespace {

struct UnitarySpectrum {
    RVector phases;
    CMatrix vectors;
};

UnitarySpectrum unitary_spectrum(const CMatrix& u, const NumericPolicy& policy) {
    require_square(u, "unitary_eigenphases");
    if (unitarity_defect(u) > policy.unitary_tol) {
        throw Error(ErrorKind::NonUnitary, "U^dag U deviates from identity");
    }
    // U is normal, so its Schur form is diagonal and the Schur vectors are
    // eigenvectors.
    Eigen::ComplexSchur<CMatrix> schur(u);
    if (schur.info() != Eigen::Success) {
        throw Error(ErrorKind::NoConvergence, "unitary_eigenphases");
    }
    const CMatrix& t = schur.matrixT();
    RVector phases(u.rows());
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        double theta = -std::arg(t(i, i));
        if (theta <= -std::numbers::pi + policy.branch_tie_tol) theta = std::numbers::pi;
        phases(i) = theta;
    }
    return {phases, schur.matrixU()};
}

}  // namespace

RVector unitary_eigenphases(const CMatrix& u, const NumericPolicy& policy) {
    return unitary_spectrum(u, policy).phases;
}

CMatrix principal_log_unitary(const CMatrix& u, const NumericPolicy& policy) {
    const auto spectrum = unitary_spectrum(u, policy);
    CMatrix h = spectrum.vectors * spectrum.phases.cast<Complex>().asDiagonal() *
                spectrum.vectors.adjoint();
    return 0.5 * (h + h.adjoint());
}

double op_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::BDCSVD<CMatrix> svd(a);
    return svd.singularValues()(0);
}

double op_norm(const RMatrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::BDCSVD<RMatrix> svd(a);
    return svd.singularValues()(0);
}

CMatrix partial_trace(const CMatrix& rho, std::span<const int> local_dims, std::span<const int> keep,
                      const NumericPolicy&) {
    require_square(rho, "partial_trace");
    const int n = static_cast<int>(local_dims.size());
    long long total = 1;
    for (int d : local_dims) {
        if (d < 1) throw Error(ErrorKind::DimensionMismatch, "partial_trace: local dimension < 1");
        total *= d;
    }
    if (total != rho.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "partial_trace: product of local dims != dim(rho)");
    }
    std::vector<bool> kept(n, false);
    for (int site : keep) {
        if (site < 0 || site >= n) throw Error(ErrorKind::DimensionMismatch, "partial_trace: site out of range");
        kept[site] = true;
    }

    // stride of each site in the full index
    std::vector<long long> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * local_dims[i + 1];

    auto offsets = [&](bool want_kept) {
        std::vector<long long> offs{0};
        for (int i = 0; i < n; ++i) {
            if (kept[i] != want_kept) continue;
            std::vector<long long> next;
            next.reserve(offs.size() * local_dims[i]);
            for (long long base : offs)
                for (int digit = 0; digit < local_dims[i]; ++digit) next.push_back(base + digit * stride[i]);
            offs = std::move(next);
        }
        return offs;
    };
    const auto keep_offsets = offsets(true);
    const auto trace_offsets = offsets(false);

    const auto dk = static_cast<Eigen::Index>(keep_offsets.size());
    CMatrix reduced = CMatrix::Zero(dk, dk);
    for (Eigen::Index a = 0; a < dk; ++a)
        for (Eigen::Index b = 0; b < dk; ++b) {
            Complex acc = 0.0;
            for (long long t : trace_offsets) acc += rho(keep_offsets[a] + t, keep_offsets[b] + t);
            reduced(a, b) = acc;
        }
    return reduced;
}

double entropy_from_spectrum(std::span<const double> probabilities, double clip) {
    double s = 0.0;
    for (double p : probabilities)
        if (p > clip) s -= p * std::log(p);
    return s;
}

double von_neumann_entropy(const CMatrix& rho, const NumericPolicy& policy) {
    require_square(rho, "von_neumann_entropy");
    const Complex tr = rho.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > policy.trace_tol) {
        throw Error(ErrorKind::NotAState, "trace " + std::to_string(tr.real()));
    }
    if (hermiticity_defect(rho) > policy.hermitian_tol * std::max(1.0, max_abs_entry(rho)) + policy.trace_tol) {
        throw Error(ErrorKind::NotAState, "density operator is not Hermitian");
    }
    CMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    const RVector& values = es.eigenvalues();
    if (values.minCoeff() < -std::max(policy.psd_tol, policy.trace_tol)) {
        throw Error(ErrorKind::NotAState, "negative eigenvalue " + std::to_string(values.minCoeff()));
    }
    return entropy_from_spectrum(std::span<const double>(values.data(), values.size()), policy.entropy_clip);
}

namespace {

struct PairLayout {
    long long stride_first;
    long long stride_second;
    long long dim;
};

PairLayout pair_layout(SitePair sites, int n, int d, Eigen::Index op_dim) {
    if (op_dim != static_cast<Eigen::Index>(d) * d) {
        throw Error(ErrorKind::DimensionMismatch, "local operator must have dimension d^2");
    }
    if (sites.first < 0 || sites.first >= n || sites.second < 0 || sites.second >= n) {
        throw Error(ErrorKind::IndexOutOfRange, "site index outside 0..n-1");
    }
    if (sites.first == sites.second) {
        throw Error(ErrorKind::IndexOutOfRange, "sites must be distinct");
    }
    return {ipow(d, n - 1 - sites.first), ipow(d, n - 1 - sites.second), ipow(d, n)};
}

}  // namespace

CMatrix embed_local(const CMatrix& op, SitePair sites, int n, int d) {
    require_square(op, "embed_local");
    const auto layout = pair_layout(sites, n, d, op.rows());
    CMatrix out = CMatrix::Zero(layout.dim, layout.dim);
    for (long long col = 0; col < layout.dim; ++col) {
        const int ci = static_cast<int>((col / layout.stride_first) % d);
        const int cj = static_cast<int>((col / layout.stride_second) % d);
        const long long base = col - ci * layout.stride_first - cj * layout.stride_second;
        for (int ri = 0; ri < d; ++ri)
            for (int rj = 0; rj < d; ++rj) {
                const long long row = base + ri * layout.stride_first + rj * layout.stride_second;
                out(row, col) = op(ri * d + rj, ci * d + cj);
            }
    }
    return out;
}

CVector apply_local(const CMatrix& op, SitePair sites, int n, int d, const CVector& psi) {
    require_square(op, "apply_local");
    const auto layout = pair_layout(sites, n, d, op.rows());
    if (psi.size() != layout.dim) {
        throw Error(ErrorKind::DimensionMismatch, "apply_local: state has wrong dimension");
    }
    CVector out(psi.size());
    CVector local(d * d);
    for (long long base = 0; base < layout.dim; ++base) {
        if ((base / layout.stride_first) % d != 0 || (base / layout.stride_second) % d != 0) continue;
        for (int q = 0; q < d * d; ++q)
            local(q) = psi(base + (q / d) * layout.stride_first + (q % d) * layout.stride_second);
        const CVector mapped = op * local;
        for (int q = 0; q < d * d; ++q)
            out(base + (q / d) * layout.stride_first + (q % d) * layout.stride_second) = mapped(q);
    }
    return out;
}

CMatrix psd_sqrt(const CMatrix& a, const NumericPolicy& policy) {
    require_square(a, "psd_sqrt");
    if (hermiticity_defect(a) > policy.hermitian_tol * std::max(1.0, max_abs_entry(a))) {
        throw Error(ErrorKind::NotPSD, "psd_sqrt: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
    return psd_sqrt_impl<CMatrix>(es, policy);
}

RMatrix psd_sqrt(const RMatrix& a, const NumericPolicy& policy) {
    require_square(a, "psd_sqrt");
    if (max_abs_entry(RMatrix(a - a.transpose())) > policy.hermitian_tol * std::max(1.0, max_abs_entry(a))) {
        throw Error(ErrorKind::NotPSD, "psd_sqrt: matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> es(a);
    return psd_sqrt_impl<RMatrix>(es, policy);
}

RMatrix sqrt_frechet(const RMatrix& a, const RMatrix& da, const NumericPolicy& policy) {
    require_square(a, "sqrt_frechet");
    if (da.rows() != a.rows() || da.cols() != a.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "sqrt_frechet: direction has wrong shape");
    }
    const auto eig = symmetric_eig(0.5 * (a + a.transpose()), policy);
    const RVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
    RMatrix x = eig.vectors.transpose() * da * eig.vectors;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            const double denom = roots(i) + roots(j);
            if (denom <= 0.0) throw Error(ErrorKind::NotPSD, "sqrt_frechet: singular square root");
            x(i, j) /= denom;
        }
    return eig.vectors * x * eig.vectors.transpose();
}

int numerical_rank(const RMatrix& a, double rel_tol) {
    if (a.size() == 0) return 0;
    Eigen::BDCSVD<RMatrix> svd(a);
    const RVector& sv = svd.singularValues();
    if (sv(0) == 0.0) return 0;
    return static_cast<int>((sv.array() > rel_tol * sv(0)).count());
}

}  // namespace costbound
