#include "numrad/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <queue>
#include <random>

#include "numrad/errors.hpp"
#include "numrad/transforms.hpp"

namespace numrad {

double operator_norm(const ComplexMatrix& t) {
    require_valid(t);
    return spectral_norm(t);
}

double spectral_radius(const ComplexMatrix& t) {
    require_valid(t);
    if (t.rows() == 1) return std::abs(t(0, 0));
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(t, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double rotated_real_norm(const ComplexMatrix& t, double theta) {
    require_valid(t);
    const ComplexMatrix re = real_part(rotate(t, theta));
    return max_eigenvalue(re);
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Cells narrower than this are not split further.
constexpr double kMinCellWidth = 1e-8;

// g(theta) = lambda_max(cos(theta) H - sin(theta) K) with H = Re T, K = Im T.
class RotationFunction {
public:
    explicit RotationFunction(const ComplexMatrix& t)
        : re_(real_part(t)), im_(imag_part(t)), work_(t.rows(), t.cols()) {}

    double operator()(double theta) {
        ++evaluations_;
        work_.noalias() = std::cos(theta) * re_;
        work_.noalias() -= std::sin(theta) * im_;
        return max_eigenvalue(work_);
    }

    int evaluations() const { return evaluations_; }

private:
    ComplexMatrix re_;
    ComplexMatrix im_;
    ComplexMatrix work_;
    int evaluations_ = 0;
};

struct Best {
    double theta = 0.0;
    double value = -std::numeric_limits<double>::infinity();

    void offer(double th, double g) {
        if (g > value) {
            value = g;
            theta = th;
        }
    }
};

// g is a support function of W(T), so on [lo, hi] (width < pi) it is bounded
// by the support function of the wedge cut out by the two supporting lines at
// the endpoints. The largest value of that bound is |v| for the wedge vertex v
// when v's direction falls inside the cell, and the larger endpoint otherwise.
double cell_upper_bound(double width, double g_lo, double g_hi) {
    const double x = g_lo;
    const double y = (g_hi - g_lo * std::cos(width)) / std::sin(width);
    const double angle = std::atan2(y, x);
    if (angle >= 0.0 && angle <= width) return std::hypot(x, y);
    return std::max(g_lo, g_hi);
}

struct Cell {
    double lo;
    double hi;
    double g_lo;
    double g_hi;
    double bound;

    bool operator<(const Cell& other) const { return bound < other.bound; }
};

Cell make_cell(double lo, double hi, double g_lo, double g_hi) {
    return {lo, hi, g_lo, g_hi, cell_upper_bound(hi - lo, g_lo, g_hi)};
}

double wrap_angle(double theta) {
    double w = std::fmod(theta, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

} // namespace

AngleSweep sample_rotation(const ComplexMatrix& t, int grid_size) {
    require_valid(t);
    if (grid_size < 1) throw DomainError("sweep grid must have at least one point");
    RotationFunction g(t);
    AngleSweep sweep;
    sweep.grid_size = grid_size;
    sweep.thetas.resize(static_cast<std::size_t>(grid_size));
    sweep.g_values.resize(static_cast<std::size_t>(grid_size));
    Best best;
    for (int k = 0; k < grid_size; ++k) {
        const double theta = kTwoPi * k / grid_size;
        const double value = g(theta);
        sweep.thetas[static_cast<std::size_t>(k)] = theta;
        sweep.g_values[static_cast<std::size_t>(k)] = value;
        best.offer(theta, value);
    }
    sweep.argmax_theta = best.theta;
    sweep.omega = std::max(0.0, best.value);
    sweep.omega_upper = std::numeric_limits<double>::infinity();
    sweep.evaluations = grid_size;
    return sweep;
}

AngleSweep numerical_radius(const ComplexMatrix& t, const SweepOptions& options) {
    if (options.grid_size < 4) throw DomainError("numerical_radius: grid_size must be >= 4");
    if (options.refine_passes < 0) throw DomainError("numerical_radius: refine_passes must be >= 0");
    AngleSweep sweep = sample_rotation(t, options.grid_size);
    sweep.refinement_passes = options.refine_passes;

    const double norm = spectral_norm(t);
    if (norm == 0.0) {
        sweep.omega = 0.0;
        sweep.omega_upper = 0.0;
        sweep.argmax_theta = 0.0;
        return sweep;
    }

    RotationFunction g(t);
    const double g_end = g(kTwoPi);
    // Periodicity guard: g(2 pi) must reproduce g(0).
    if (std::abs(g_end - sweep.g_values.front()) > default_tolerance(norm))
        throw Error("numerical_radius: rotation function is not 2*pi periodic");

    Best best;
    for (std::size_t k = 0; k < sweep.g_values.size(); ++k) best.offer(sweep.thetas[k], sweep.g_values[k]);

    // Rounding in each eigenvalue solve; bounds are only trusted up to this.
    const double noise = 64.0 * static_cast<double>(t.rows()) * kEpsilon * norm;

    std::priority_queue<Cell> cells;
    for (std::size_t k = 0; k < sweep.g_values.size(); ++k) {
        const bool last = k + 1 == sweep.g_values.size();
        const double hi = last ? kTwoPi : sweep.thetas[k + 1];
        const double g_hi = last ? g_end : sweep.g_values[k + 1];
        cells.push(make_cell(sweep.thetas[k], hi, sweep.g_values[k], g_hi));
    }

    double settled = -std::numeric_limits<double>::infinity(); // bound of cells no longer split
    if (options.refine_passes >= 1) {
        const double tol = options.refine_tol * std::max(1.0, norm) + noise;
        const int budget = options.max_refine_evaluations;
        // Best-first branch and bound on the cell upper bounds.
        while (!cells.empty()) {
            const Cell top = cells.top();
            if (top.bound <= best.value + tol) break;
            if (g.evaluations() >= budget) break;
            cells.pop();
            if (top.hi - top.lo < kMinCellWidth) {
                settled = std::max(settled, top.bound);
                continue;
            }
            const double mid = 0.5 * (top.lo + top.hi);
            const double g_mid = g(mid);
            best.offer(mid, g_mid);
            cells.push(make_cell(top.lo, mid, top.g_lo, g_mid));
            cells.push(make_cell(mid, top.hi, g_mid, top.g_hi));
        }
    }
    const double open_bound = cells.empty() ? -std::numeric_limits<double>::infinity() : cells.top().bound;

    sweep.omega = std::max(0.0, best.value);
    sweep.omega_upper = std::max({sweep.omega, open_bound + noise, settled + noise});
    sweep.argmax_theta = wrap_angle(best.theta);
    sweep.evaluations += g.evaluations();
    return sweep;
}

double numradius(const ComplexMatrix& t, const SweepOptions& options) {
    return numerical_radius(t, options).omega;
}

namespace {

double quadratic_form_modulus(const ComplexMatrix& t, const Eigen::VectorXcd& x, Complex* value = nullptr) {
    const Complex z = x.dot(t * x); // x^H T x
    if (value) *value = z;
    return std::abs(z);
}

// Ascent on |<Tx, x>|: with phi = arg <Tx, x>, replace x by the normalized
// (Re(e^{-i phi} T) + shift I) x. Each step does not decrease
// <Re(e^{-i phi} T) x, x> and |<Tx, x>| dominates it.
double power_ascent(const ComplexMatrix& t, const ComplexMatrix& re, const ComplexMatrix& im, double shift,
                    Eigen::VectorXcd x, int iters) {
    Complex z;
    double best = quadratic_form_modulus(t, x, &z);
    Eigen::VectorXcd y(x.size());
    for (int it = 0; it < iters; ++it) {
        const double phi = std::arg(z);
        y.noalias() = std::cos(phi) * (re * x);
        y.noalias() += std::sin(phi) * (im * x);
        y += shift * x;
        const double len = y.norm();
        if (len == 0.0) break;
        x = y / len;
        const double previous = best;
        best = std::max(best, quadratic_form_modulus(t, x, &z));
        if (best - previous <= 1e-16 * best && it > 8) break;
    }
    return best;
}

// Same objective, but each step jumps to the top eigenvector of
// Re(e^{-i phi} T); |<Tx, x>| is monotone along the iteration.
double eigenvector_ascent(const ComplexMatrix& t, const ComplexMatrix& re, const ComplexMatrix& im,
                          Eigen::VectorXcd x, int iters) {
    Complex z;
    double best = quadratic_form_modulus(t, x, &z);
    for (int it = 0; it < iters; ++it) {
        const double phi = std::arg(z);
        const ComplexMatrix herm = std::cos(phi) * re + std::sin(phi) * im;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::ComputeEigenvectors);
        x = solver.eigenvectors().col(t.rows() - 1);
        const double previous = best;
        best = std::max(best, quadratic_form_modulus(t, x, &z));
        if (best - previous <= 1e-16 * best) break;
    }
    return best;
}

} // namespace

double fov_oracle(const ComplexMatrix& t, const OracleOptions& options) {
    require_valid(t);
    const Eigen::Index n = t.rows();
    const ComplexMatrix re = real_part(t);
    const ComplexMatrix im = imag_part(t);
    const double shift = spectral_norm(t);
    if (shift == 0.0) return 0.0;

    double best = 0.0;
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int s = 0; s < options.n_starts; ++s) {
        Eigen::VectorXcd x(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double a = normal(rng);
            const double b = normal(rng);
            x(i) = Complex(a, b);
        }
        const double len = x.norm();
        if (len == 0.0) continue;
        x /= len;
        best = std::max(best, power_ascent(t, re, im, shift, x, options.ascent_iters));
    }

    constexpr int kThetaGrid = 64;
    for (int k = 0; k < kThetaGrid; ++k) {
        const double theta = kTwoPi * k / kThetaGrid;
        const ComplexMatrix herm = std::cos(theta) * re - std::sin(theta) * im;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::ComputeEigenvectors);
        const Eigen::VectorXcd x = solver.eigenvectors().col(n - 1);
        best = std::max(best, eigenvector_ascent(t, re, im, x, options.ascent_iters));
    }
    return best;
}

void write_sweep_csv(std::ostream& out, const AngleSweep& sweep) {
    const auto old_precision = out.precision(17);
    out << "theta,g\n";
    for (std::size_t k = 0; k < sweep.thetas.size(); ++k) out << sweep.thetas[k] << ',' << sweep.g_values[k] << '\n';
    out << "# omega=" << sweep.omega << '\n';
    out.precision(old_precision);
}

} // namespace numrad
