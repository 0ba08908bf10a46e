#pragma once

// Dense kernels shared by the spin and Gaussian modules.
//
// Tensor-leg ordering: for n sites of local dimension d, basis index
// i = i_0 d^{n-1} + i_1 d^{n-2} + ... + i_{n-1}, i.e. site 0 is the most
// significant Kronecker factor. Every reshape in the library relies on this.

#include <span>
#include <vector>

#include "costbound/common.hpp"

namespace costbound {

struct HermitianEigen {
    RVector values;   // ascending
    CMatrix vectors;  // columns are eigenvectors
};

struct SymmetricEigen {
    RVector values;   // ascending
    RMatrix vectors;
};

double hermiticity_defect(const CMatrix& a);
double unitarity_defect(const CMatrix& u);

HermitianEigen hermitian_eig(const CMatrix& a, const NumericPolicy& policy = default_policy());
SymmetricEigen symmetric_eig(const RMatrix& a, const NumericPolicy& policy = default_policy());

/// Padé scaling-and-squaring exponential.
CMatrix mat_exp(const CMatrix& a, const NumericPolicy& policy = default_policy());
RMatrix mat_exp(const RMatrix& a, const NumericPolicy& policy = default_policy());

/// Eigenphases theta of U = exp(-i H) on the principal branch (-pi, pi].
/// A phase within `branch_tie_tol` of -pi is reported as +pi.
RVector unitary_eigenphases(const CMatrix& u, const NumericPolicy& policy = default_policy());

/// Hermitian H with exp(-i H) = U and spectrum in (-pi, pi].
CMatrix principal_log_unitary(const CMatrix& u, const NumericPolicy& policy = default_policy());

double op_norm(const CMatrix& a);
double op_norm(const RMatrix& a);

/// Reduced operator on the `keep` sites (kept in ascending site order).
CMatrix partial_trace(const CMatrix& rho, std::span<const int> local_dims, std::span<const int> keep,
                      const NumericPolicy& policy = default_policy());

/// -sum p log p over a probability spectrum, natural log; entries below
/// `clip` count as zero.
double entropy_from_spectrum(std::span<const double> probabilities, double clip);

double von_neumann_entropy(const CMatrix& rho, const NumericPolicy& policy = default_policy());

/// op (dimension d^2, first factor on sites.first) tensored with identity on
/// the remaining n-2 sites. Sites may be non-adjacent and in either order.
CMatrix embed_local(const CMatrix& op, SitePair sites, int n, int d);

/// Applies a d^2-dimensional two-site operator directly to an n-site vector.
CVector apply_local(const CMatrix& op, SitePair sites, int n, int d, const CVector& psi);

CMatrix psd_sqrt(const CMatrix& a, const NumericPolicy& policy = default_policy());
RMatrix psd_sqrt(const RMatrix& a, const NumericPolicy& policy = default_policy());

/// Fréchet derivative of the principal square root of a symmetric positive
/// definite A in direction dA: the X solving X A^{1/2} + A^{1/2} X = dA.
RMatrix sqrt_frechet(const RMatrix& a, const RMatrix& da, const NumericPolicy& policy = default_policy());

/// Number of singular values above rel_tol * (largest singular value).
int numerical_rank(const RMatrix& a, double rel_tol);

/// d^n with an overflow guard.
long long ipow(int base, int exponent);

}  // namespace costbound
