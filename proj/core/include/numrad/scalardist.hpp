#pragma once

// inf over complex lambda of ||T - lambda I||.

#include "numrad/matrix.hpp"

namespace numrad {

struct ScalarDistOptions {
    double tol = 1e-9;
    int max_iters = 500; // per Nelder-Mead run
};

struct ScalarDistResult {
    Complex lambda_star;
    double distance = 0.0; // == operator_norm(T - lambda_star I)
    int iterations = 0;
    bool converged = false;
};

/// Minimizes h(lambda) = sigma_1(T - lambda I), a convex function of
/// (Re lambda, Im lambda), by Nelder-Mead started from trace(T)/n and from 0.
/// A run stops when the simplex diameter falls below tol * max(1, ||T||) and is
/// restarted from its best vertex with a smaller simplex until a restart no
/// longer improves; a run that exhausts max_iters restarts at the same size
/// (up to eight runs per start). On budget exhaustion the best iterate is returned with
/// converged = false.
ScalarDistResult min_scalar_distance(const ComplexMatrix& t, const ScalarDistOptions& options = {});

/// min_scalar_distance applied to [[O, A], [B, O]].
ScalarDistResult min_block_scalar_distance(const ComplexMatrix& a, const ComplexMatrix& b,
                                           const ScalarDistOptions& options = {});

} // namespace numrad
