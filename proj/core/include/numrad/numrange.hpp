#pragma once

// Numerical radius, operator norm and spectral radius.
//
// omega(T) = sup_theta lambda_max(Re(e^{i theta} T)). The rotation function
// g(theta) is the support function of the numerical range W(T), so it is
// 2*pi periodic and omega-Lipschitz.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "numrad/matrix.hpp"

namespace numrad {

/// Largest singular value.
double operator_norm(const ComplexMatrix& t);

/// Largest eigenvalue modulus (general complex eigenproblem).
double spectral_radius(const ComplexMatrix& t);

/// lambda_max(Re(e^{i theta} T)).
///
/// ||Re S|| = max(lambda_max(Re S), -lambda_min(Re S)) and
/// -lambda_min(Re e^{i theta} T) = lambda_max(Re e^{i(theta+pi)} T), so a sweep
/// of lambda_max over a full period already sees both ends of the spectrum.
double rotated_real_norm(const ComplexMatrix& t, double theta);

struct SweepOptions {
    int grid_size = 1024;
    int refine_passes = 2;
    double refine_tol = 1e-12;
    int max_refine_evaluations = 1024;
};

/// Sampled rotation function with its refined maximum.
struct AngleSweep {
    std::vector<double> thetas;   // uniform grid on [0, 2 pi)
    std::vector<double> g_values; // g(theta_k)
    double argmax_theta = 0.0;
    double omega = 0.0;       // >= max(g_values), >= 0; always an attained value of g
    double omega_upper = 0.0; // certified upper bound (up to rounding); +inf when unrefined
    int grid_size = 0;
    int refinement_passes = 0;
    int evaluations = 0; // eigenvalue solves spent
};

/// Rotation sweep plus refinement.
///
/// The uniform grid gives the coarse maximum. Refinement is a best-first
/// branch and bound over grid cells: because g is the support function of the
/// convex set W(T), on a cell [a, b] it never exceeds the support function of
/// the wedge bounded by the supporting lines at a and b. Cells whose bound
/// beats the best value by more than refine_tol * max(1, ||T||) are split at
/// their midpoint. The search stops when no such cell remains (omega is then
/// certified to that tolerance) or after max_refine_evaluations solves.
///
/// refine_passes = 0 reports the coarse maximum; any positive value enables
/// refinement. Throws DomainError if grid_size < 4 (the sweep export accepts
/// smaller grids via sample_rotation).
AngleSweep numerical_radius(const ComplexMatrix& t, const SweepOptions& options = {});

/// Convenience: numerical_radius(t, options).omega.
double numradius(const ComplexMatrix& t, const SweepOptions& options = {});

/// g(theta_k) on a uniform grid of `grid_size` points on [0, 2 pi), no refinement.
AngleSweep sample_rotation(const ComplexMatrix& t, int grid_size);

struct OracleOptions {
    int n_starts = 64;
    int ascent_iters = 200;
    std::uint64_t seed = 0x5eed;
};

/// Certified lower bound on omega(T) from the definition sup |<Tx, x>|.
///
/// Candidates are (a) seeded random unit vectors improved by a shifted power
/// ascent on x -> Re(e^{-i phi(x)} T) x with phi(x) = arg <Tx, x>, and (b) top
/// eigenvectors of Re(e^{i theta} T) on a 64-point grid, also improved by the
/// ascent. Every reported value is |<Tx, x>| for an explicit unit vector x.
double fov_oracle(const ComplexMatrix& t, const OracleOptions& options = {});

/// CSV export: header `theta,g`, one row per grid point, then a trailing
/// comment line `# omega=<value>`.
void write_sweep_csv(std::ostream& out, const AngleSweep& sweep);

} // namespace numrad
