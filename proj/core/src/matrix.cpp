#include "numrad/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "numrad/errors.hpp"

namespace numrad {

double default_tolerance(double scale) noexcept { return 1e-10 * std::max(1.0, scale); }

bool all_finite(const ComplexMatrix& m) noexcept {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

void require_valid(const ComplexMatrix& m) {
    if (m.rows() < 1 || m.rows() != m.cols())
        throw DimensionMismatch("expected a square matrix with n >= 1, got " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()));
    if (!all_finite(m)) throw DomainError("matrix has non-finite entries");
}

double max_abs(const ComplexMatrix& m) noexcept {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("size mismatch in comparison");
    return max_abs(a - b);
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

bool is_hermitian(const ComplexMatrix& h, double tol) {
    if (h.rows() != h.cols()) return false;
    return max_abs(h - h.adjoint()) <= tol;
}

ComplexMatrix identity(std::ptrdiff_t n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix adjoint(const ComplexMatrix& t) { return t.adjoint(); }

HermEigResult herm_eig(const ComplexMatrix& h) {
    require_valid(h);
    // ||H|| <= n * max|h_ij|
    const double scale = static_cast<double>(h.rows()) * max_abs(h);
    if (!is_hermitian(h, default_tolerance(scale))) throw NotHermitian("herm_eig: input is not Hermitian");
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double max_eigenvalue(const ComplexMatrix& h) {
    if (h.rows() == 1) return h(0, 0).real();
    if (h.rows() == 2) {
        const double a = h(0, 0).real();
        const double d = h(1, 1).real();
        const double b = std::abs(h(1, 0));
        return 0.5 * (a + d) + std::hypot(0.5 * (a - d), b);
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(h.rows() - 1);
}

SvdResult svd(const ComplexMatrix& t) {
    require_valid(t);
    Eigen::JacobiSVD<ComplexMatrix> solver(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
    RealVector sigma = solver.singularValues().cwiseMax(0.0);
    return {solver.matrixU(), std::move(sigma), solver.matrixV()};
}

double spectral_norm(const ComplexMatrix& t) {
    if (t.size() == 0) return 0.0;
    if (t.rows() == 1 && t.cols() == 1) return std::abs(t(0, 0));
    // sqrt(lambda_max(T*T)); relative accuracy of the top singular value is
    // unaffected by squaring.
    const ComplexMatrix gram = t.adjoint() * t;
    return std::sqrt(std::max(0.0, max_eigenvalue(gram)));
}

ComplexMatrix abs_op(const ComplexMatrix& t) {
    const SvdResult s = svd(t);
    return s.right * s.singular_values.cast<Complex>().asDiagonal() * s.right.adjoint();
}

double clamp_threshold(std::ptrdiff_t n, double lambda_max) noexcept {
    return 64.0 * static_cast<double>(n) * kEpsilon * std::max(0.0, lambda_max);
}

ComplexMatrix frac_power(const ComplexMatrix& p, double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("frac_power: exponent must lie in [0,1]");
    const HermEigResult eig = herm_eig(p);
    const Eigen::Index n = p.rows();
    const double lambda_max = eig.eigenvalues(n - 1);
    const double lambda_min = eig.eigenvalues(0);
    const double norm = std::max(std::abs(lambda_max), std::abs(lambda_min));
    if (lambda_min < -1e-10 * norm) throw NotPositive("frac_power: matrix has a negative eigenvalue");

    const double threshold = clamp_threshold(n, lambda_max);
    RealVector powered(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = eig.eigenvalues(i);
        if (lambda <= threshold)
            powered(i) = 0.0;
        else
            powered(i) = (s == 0.0) ? 1.0 : std::pow(lambda, s);
    }
    return eig.eigenvectors * powered.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

PolarResult polar(const ComplexMatrix& t) {
    const SvdResult s = svd(t);
    PolarResult out;
    out.unitary = s.left * s.right.adjoint();
    out.positive = s.right * s.singular_values.cast<Complex>().asDiagonal() * s.right.adjoint();
    return out;
}

} // namespace numrad
