#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace costbound {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

enum class ErrorKind {
    NonHermitian,
    NonUnitary,
    NoConvergence,
    Overflow,
    DimensionMismatch,
    DimensionTooLarge,
    IndexOutOfRange,
    NotPSD,
    NotAState,
    StepTooLarge,
    DegenerateSupport,
    UncertaintyViolation,
    NotPure,
    NearSingularSpectrum,
    DomainError,
    WindowTooSmall,
    InvalidArgument,
    ParseError,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Every numeric threshold used by the library. Functions take a policy by
/// const reference and default to `default_policy()`.
struct NumericPolicy {
    // DenseOperator tag checks
    double hermitian_tol = 1e-10;   // relative to max-abs entry
    double unitary_tol = 1e-9;      // op_norm(U^dag U - I)
    double psd_tol = 1e-10;         // relative to op_norm
    double trace_tol = 1e-8;
    double state_norm_tol = 1e-10;

    // spectral functions
    double entropy_clip = 1e-14;        // eigenvalues below are treated as 0
    double log_support_clip = 1e-12;    // support of log(rho_A)
    double degenerate_band = 1e-8;      // retained eigenvalues below this are ill-conditioned
    double branch_tie_tol = 1e-10;      // eigenphases within this of -pi map to +pi
    double expm_norm_limit = 700.0;

    // finite differences
    double richardson_rel_tol = 1e-3;
    double richardson_abs_floor = 1e-9;

    // Gaussian states
    double symmetric_tol = 1e-10;
    double uncertainty_tol = 1e-8;
    double symplectic_floor_tol = 1e-6;  // nu >= 1 - tol
    double purity_tol = 1e-6;
    double entropy_gap_clip = 1e-12;     // nu - 1 below this contributes 0
    double near_singular_gap = 1e-8;     // analytic Gaussian rate needs nu - 1 above this
    double rank_rel_tol = 1e-8;
};

const NumericPolicy& default_policy() noexcept;

/// Ordered pair of 0-based site (or mode) indices.
struct SitePair {
    int first = 0;
    int second = 1;
};

/// Bipartition A = {1..s}, B = {s+1..n}; `s` counts the sites in A.
struct Cut {
    int s = 1;
};

void validate_cut(Cut cut, int n);

enum class BoundMode { MaxCut, SumCuts };

}  // namespace costbound
