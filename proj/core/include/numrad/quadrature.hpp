#pragma once

// Integrals over [0,1] of norms and numerical radii along the segment
// (1-t) T + t T* and its relatives.

#include <functional>

#include "numrad/matrix.hpp"
#include "numrad/numrange.hpp"

namespace numrad {

struct QuadOptions {
    double tol = 1e-8;
    int max_depth = 20;
    int max_evaluations = 20000;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = true; // false: budget or depth exhausted, value is best effort
    // Integrand at the fixed nodes 0, 1/2, 1 (used by Hermite-Hadamard checks).
    double f_left = 0.0;
    double f_mid = 0.0;
    double f_right = 0.0;
};

/// Adaptive Simpson with Richardson correction, started from four panels.
/// Exact up to roundoff for cubics.
QuadResult integrate01(const std::function<double(double)>& f, const QuadOptions& options = {});

/// Options for the segment integrals: quadrature settings plus the sweep used
/// for each numerical-radius evaluation (grid 512 by default).
struct SegmentIntegralOptions {
    QuadOptions quad{};
    SweepOptions sweep{512, 2, 1e-12};
};

/// int_0^1 omega((1-t) T + t T*) dt
QuadResult int_numrad_segment(const ComplexMatrix& t, const SegmentIntegralOptions& options = {});
/// int_0^1 omega((1-t) T* - t T) dt
QuadResult int_numrad_segment_star(const ComplexMatrix& t, const SegmentIntegralOptions& options = {});
/// int_0^1 ||(1-t) T + t T*|| dt
QuadResult int_norm_segment(const ComplexMatrix& t, const SegmentIntegralOptions& options = {});
/// int_0^1 ||(1-t) T* - t T|| dt
QuadResult int_norm_segment_star(const ComplexMatrix& t, const SegmentIntegralOptions& options = {});
/// int_0^1 omega([[O, (1-t) A + t B], [(1-t) B* + t A*, O]]) dt
QuadResult int_block_numrad(const ComplexMatrix& a, const ComplexMatrix& b,
                            const SegmentIntegralOptions& options = {});

} // namespace numrad
