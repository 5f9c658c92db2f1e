#include "numrad/quadrature.hpp"

#include <cmath>

#include "numrad/errors.hpp"
#include "numrad/transforms.hpp"

namespace numrad {

namespace {

class AdaptiveSimpson {
public:
    AdaptiveSimpson(const std::function<double(double)>& f, const QuadOptions& options) : f_(f), options_(options) {}

    QuadResult run() {
        const double f0 = eval(0.0);
        const double f1 = eval(1.0);
        const double fm = eval(0.5);
        const double fq1 = eval(0.25);
        const double fq3 = eval(0.75);
        result_.f_left = f0;
        result_.f_mid = fm;
        result_.f_right = f1;
        // Four initial panels so a single Simpson estimate cannot accidentally
        // agree with its halves on symmetric integrands.
        const double left = simpson(0.0, 0.5, f0, fq1, fm);
        const double right = simpson(0.5, 1.0, fm, fq3, f1);
        const double tol = 0.5 * options_.tol;
        result_.value = recurse(0.0, 0.25, 0.5, f0, fq1, fm, left, tol, 1) +
                        recurse(0.5, 0.75, 1.0, fm, fq3, f1, right, tol, 1);
        return result_;
    }

private:
    double eval(double x) {
        ++result_.evaluations;
        const double v = f_(x);
        if (!std::isfinite(v)) throw DomainError("integrand is not finite on [0,1]");
        return v;
    }

    static double simpson(double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double recurse(double a, double m, double b, double fa, double fm, double fb, double whole, double tol,
                   int depth) {
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        if (result_.evaluations + 2 > options_.max_evaluations) {
            result_.converged = false;
            return whole;
        }
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = simpson(a, m, fa, flm, fm);
        const double right = simpson(m, b, fm, frm, fb);
        const double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * tol) {
            result_.error_estimate += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        if (depth >= options_.max_depth) {
            result_.converged = false;
            result_.error_estimate += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return recurse(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               recurse(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }

    const std::function<double(double)>& f_;
    QuadOptions options_;
    QuadResult result_;
};

} // namespace

QuadResult integrate01(const std::function<double(double)>& f, const QuadOptions& options) {
    if (!(options.tol > 0.0)) throw DomainError("integrate01: tolerance must be positive");
    return AdaptiveSimpson(f, options).run();
}

QuadResult int_numrad_segment(const ComplexMatrix& t, const SegmentIntegralOptions& options) {
    require_valid(t);
    return integrate01([&](double s) { return numradius(segment(t, s, SegmentKind::plain), options.sweep); },
                       options.quad);
}

QuadResult int_numrad_segment_star(const ComplexMatrix& t, const SegmentIntegralOptions& options) {
    require_valid(t);
    return integrate01([&](double s) { return numradius(segment(t, s, SegmentKind::star_minus), options.sweep); },
                       options.quad);
}

QuadResult int_norm_segment(const ComplexMatrix& t, const SegmentIntegralOptions& options) {
    require_valid(t);
    return integrate01([&](double s) { return spectral_norm(segment(t, s, SegmentKind::plain)); }, options.quad);
}

QuadResult int_norm_segment_star(const ComplexMatrix& t, const SegmentIntegralOptions& options) {
    require_valid(t);
    return integrate01([&](double s) { return spectral_norm(segment(t, s, SegmentKind::star_minus)); },
                       options.quad);
}

QuadResult int_block_numrad(const ComplexMatrix& a, const ComplexMatrix& b, const SegmentIntegralOptions& options) {
    const ComplexMatrix block = off_diagonal(a, b.adjoint());
    return integrate01([&](double s) { return numradius(segment(block, s, SegmentKind::plain), options.sweep); },
                       options.quad);
}

} // namespace numrad
