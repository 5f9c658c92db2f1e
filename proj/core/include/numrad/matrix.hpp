#pragma once

// Dense complex matrices and the decompositions the rest of the toolkit builds
// on: Hermitian eigendecomposition, SVD, polar form, |T| and fractional powers.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace numrad {

using Complex = std::complex<double>;

/// Dense square complex matrix, column-major storage (Eigen default).
/// Every operator symbol (T, A, B, S, X_i) is one of these.
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Unit roundoff used by the clamping and tolerance rules.
inline constexpr double kEpsilon = 0x1p-52;

/// Default comparison tolerance: 1e-10 * max(1, scale).
double default_tolerance(double scale) noexcept;

/// Throws DimensionMismatch unless `m` is square with n >= 1, and DomainError
/// if any entry is NaN or infinite.
void require_valid(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m) noexcept;

/// Largest entry modulus.
double max_abs(const ComplexMatrix& m) noexcept;

/// Largest entrywise modulus of a - b. Sizes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Entrywise comparison: max|a_ij - b_ij| <= tol.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

bool is_hermitian(const ComplexMatrix& h, double tol);

ComplexMatrix identity(std::ptrdiff_t n);

ComplexMatrix adjoint(const ComplexMatrix& t);

struct HermEigResult {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // columns orthonormal
};

/// Eigendecomposition of a Hermitian matrix. The input is checked
/// (||H - H*||_max <= 1e-10 * max(1, ||H||)) and then symmetrized.
HermEigResult herm_eig(const ComplexMatrix& h);

/// Largest eigenvalue of a matrix assumed Hermitian; no precondition check.
/// Only the lower triangle is read.
double max_eigenvalue(const ComplexMatrix& h);

struct SvdResult {
    ComplexMatrix left;         // W, orthonormal columns
    RealVector singular_values; // descending, >= 0
    ComplexMatrix right;        // V, orthonormal columns
};

SvdResult svd(const ComplexMatrix& t);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& t);

/// |T| = (T*T)^{1/2}, computed as V diag(sigma) V*.
ComplexMatrix abs_op(const ComplexMatrix& t);

/// Eigenvalues at or below this value are treated as exact zeros when powering
/// a nominally positive matrix: 64 * n * eps * lambda_max.
double clamp_threshold(std::ptrdiff_t n, double lambda_max) noexcept;

/// P^s for positive semidefinite P and s in [0,1]. s = 0 yields the support
/// projection of P rather than the identity.
/// Throws DomainError for s outside [0,1], NotHermitian, or NotPositive when an
/// eigenvalue lies below -1e-10 * ||P||.
ComplexMatrix frac_power(const ComplexMatrix& p, double s);

struct PolarResult {
    ComplexMatrix unitary;  // U = W V*
    ComplexMatrix positive; // P = V Sigma V*
};

/// T = U P with U unitary (full-SVD convention) and P = |T|.
PolarResult polar(const ComplexMatrix& t);

} // namespace numrad
