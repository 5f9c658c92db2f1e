#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

#include "numrad/errors.hpp"
#include "numrad/registry.hpp"
#include "numrad/transforms.hpp"

namespace numrad {

namespace {

using M = ComplexMatrix;
constexpr double kPi = std::numbers::pi;

// Exact text for a grid value, used in memo keys.
std::string key(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

std::vector<double> uniform_angles(int count) {
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(2.0 * kPi * k / count);
    return out;
}

double r_of(double t) { return std::min(t, 1.0 - t); }
double big_r_of(double t) { return std::max(t, 1.0 - t); }

double hermitian_norm(const M& h) { return spectral_norm(h); }

// ---------------------------------------------------------------- single T

struct Single {
    EvalContext& c;
    const M& T;

    explicit Single(EvalContext& ctx) : c(ctx), T(ctx.op(0)) {}

    double w() { return c.omega("T", [&] { return T; }); }
    double n() { return c.norm("T", [&] { return T; }); }
    double r() { return c.value("r(T)", [&] { return spectral_radius(T); }); }
    double n_re() { return c.norm("Re T", [&] { return real_part(T); }); }
    double n_im() { return c.norm("Im T", [&] { return imag_part(T); }); }
    double theta_star() { return c.sweep("T", [&] { return T; }).argmax_theta; }

    double w_seg(double t) {
        return c.omega("seg(T," + key(t) + ")", [&] { return segment(T, t, SegmentKind::plain); });
    }
    double w_seg_star(double t) {
        return c.omega("seg*(T," + key(t) + ")", [&] { return segment(T, t, SegmentKind::star_minus); });
    }
    double n_seg(double t) {
        return c.norm("seg(T," + key(t) + ")", [&] { return segment(T, t, SegmentKind::plain); });
    }

    const QuadResult& int_w_seg() {
        return c.integral("int w seg(T)", [&](const SegmentIntegralOptions& o) { return int_numrad_segment(T, o); });
    }
    const QuadResult& int_w_seg_star() {
        return c.integral("int w seg*(T)",
                          [&](const SegmentIntegralOptions& o) { return int_numrad_segment_star(T, o); });
    }
    const QuadResult& int_n_seg() {
        return c.integral("int n seg(T)", [&](const SegmentIntegralOptions& o) { return int_norm_segment(T, o); });
    }
    const QuadResult& int_n_seg_star() {
        return c.integral("int n seg*(T)",
                          [&](const SegmentIntegralOptions& o) { return int_norm_segment_star(T, o); });
    }
    const QuadResult& int_w_seg_rot(double theta) {
        return c.integral("int w seg(e^i" + key(theta) + " T)", [&](const SegmentIntegralOptions& o) {
            return int_numrad_segment(rotate(T, theta), o);
        });
    }
    const QuadResult& int_w_seg_star_rot(double theta) {
        return c.integral("int w seg*(e^i" + key(theta) + " T)", [&](const SegmentIntegralOptions& o) {
            return int_numrad_segment_star(rotate(T, theta), o);
        });
    }
    const QuadResult& int_n_seg_rot(double theta) {
        return c.integral("int n seg(e^i" + key(theta) + " T)", [&](const SegmentIntegralOptions& o) {
            return int_norm_segment(rotate(T, theta), o);
        });
    }
    const QuadResult& int_n_seg_star_rot(double theta) {
        return c.integral("int n seg*(e^i" + key(theta) + " T)", [&](const SegmentIntegralOptions& o) {
            return int_norm_segment_star(rotate(T, theta), o);
        });
    }

    double n_re_rot(double theta) { return hermitian_norm(real_part(rotate(T, theta))); }
    double n_im_rot(double theta) { return hermitian_norm(imag_part(rotate(T, theta))); }

    // Angles for the sup-over-theta integral entries: a uniform grid plus the
    // maximizers of ||Re e^{i theta} T|| and ||Im e^{i theta} T||.
    std::vector<double> integral_angles() {
        std::vector<double> out = uniform_angles(c.settings().integral_theta_grid);
        const double ts = theta_star();
        out.push_back(ts);
        out.push_back(std::fmod(ts + 0.5 * kPi, 2.0 * kPi));
        return out;
    }
};

// ------------------------------------------------------------------ pair A, B

struct Pair {
    EvalContext& c;
    const M& A;
    const M& B;

    explicit Pair(EvalContext& ctx) : c(ctx), A(ctx.op(0)), B(ctx.op(1)) {}

    double n(const std::string& k, const std::function<M()>& make) { return c.norm(k, make); }
    double w(const std::string& k, const std::function<M()>& make) { return c.omega(k, make); }

    double nA() { return n("A", [&] { return A; }); }
    double nB() { return n("B", [&] { return B; }); }

    // [[O, A], [B*, O]] and its segment points.
    const M& blk_star() { return c.matrix("[O,A;B*,O]", [&] { return off_diagonal(A, B.adjoint()); }); }
    double w_blk_star() { return w("[O,A;B*,O]", [&] { return blk_star(); }); }
    double w_blk_star_seg(double t) {
        return w("seg([O,A;B*,O]," + key(t) + ")", [&] { return segment(blk_star(), t, SegmentKind::plain); });
    }
    double w_blk_star_seg_star(double t) {
        return w("seg*([O,A;B*,O]," + key(t) + ")",
                 [&] { return segment(blk_star(), t, SegmentKind::star_minus); });
    }

    // [[O, A], [B, O]] and its segment points.
    const M& blk() { return c.matrix("[O,A;B,O]", [&] { return off_diagonal(A, B); }); }
    double w_blk() { return w("[O,A;B,O]", [&] { return blk(); }); }
    double w_blk_seg(double t) {
        return w("seg([O,A;B,O]," + key(t) + ")", [&] { return segment(blk(), t, SegmentKind::plain); });
    }

    const M& sqrt_abs(const std::string& k, const std::function<M()>& make) {
        return c.matrix("|" + k + "|^1/2", [&] { return frac_power(abs_op(make()), 0.5); });
    }

    // max{||A||, ||B||} + (|| |A|^1/2 |B|^1/2 || + || |B*|^1/2 |A*|^1/2 ||) / 2
    double davidson_power_rhs() {
        const M& a = sqrt_abs("A", [&] { return A; });
        const M& b = sqrt_abs("B", [&] { return B; });
        const M& bs = sqrt_abs("B*", [&] { return M(B.adjoint()); });
        const M& as = sqrt_abs("A*", [&] { return M(A.adjoint()); });
        const double x = n("|A|^1/2|B|^1/2", [&] { return M(a * b); });
        const double y = n("|B*|^1/2|A*|^1/2", [&] { return M(bs * as); });
        return std::max(nA(), nB()) + 0.5 * (x + y);
    }

    const QuadResult& int_w_blk() {
        return c.integral("int w seg([O,A;B*,O])",
                          [&](const SegmentIntegralOptions& o) { return int_block_numrad(A, B, o); });
    }
};

// Worst Hermite-Hadamard slack among the integrals listed.
void hermite_hadamard(ReportSink& sink, const std::vector<const QuadResult*>& integrals) {
    std::vector<double> worst;
    double worst_slack = std::numeric_limits<double>::infinity();
    for (const QuadResult* q : integrals) {
        std::vector<double> chain{q->f_mid, q->value, 0.5 * (q->f_left + q->f_right)};
        const double s = chain_slack(chain);
        if (worst.empty() || s < worst_slack) {
            worst_slack = s;
            worst = std::move(chain);
        }
    }
    if (!worst.empty()) sink.chain("hermite-hadamard", std::move(worst));
}

// Shifted power ascent on x -> Re(e^{-i arg <Mx,x>} M) x. |<Mx, x>| never
// decreases and is a lower bound on omega(M) for every unit x.
double ascend(const M& m, Eigen::VectorXcd& x, double shift, int iters) {
    Eigen::VectorXcd mx = m * x;
    Complex z = x.dot(mx);
    for (int it = 0; it < iters; ++it) {
        const Complex e = std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0, 0.0);
        Eigen::VectorXcd y = 0.5 * (std::conj(e) * mx + e * (m.adjoint() * x)) + shift * x;
        const double len = y.norm();
        if (len == 0.0) break;
        y /= len;
        const Eigen::VectorXcd my = m * y;
        const Complex zy = y.dot(my);
        if (std::abs(zy) < std::abs(z)) break;
        x = std::move(y);
        mx = my;
        z = zy;
    }
    return std::abs(z);
}

// Local ascent of g(phi) = lambda_max(Re e^{i phi} M) by successive parabolic
// interpolation from phi. Every value is attained, so the result is a lower
// bound on omega(M).
double local_lower_bound(const M& m, double phi) {
    constexpr double kStep = 0.05;
    constexpr int kIters = 6;
    std::array<double, 3> x{phi - kStep, phi, phi + kStep};
    std::array<double, 3> f{};
    for (int i = 0; i < 3; ++i) f[i] = rotated_real_norm(m, x[i]);
    for (int it = 0; it < kIters; ++it) {
        const auto top = std::max_element(f.begin(), f.end()) - f.begin();
        const double num = (x[1] - x[0]) * (x[1] - x[0]) * (f[1] - f[2]) - (x[1] - x[2]) * (x[1] - x[2]) * (f[1] - f[0]);
        const double den = (x[1] - x[0]) * (f[1] - f[2]) - (x[1] - x[2]) * (f[1] - f[0]);
        if (den == 0.0) break;
        const double v = x[1] - 0.5 * num / den;
        if (!std::isfinite(v) || std::abs(v - x[static_cast<std::size_t>(top)]) > 4.0 * kStep) break;
        const double fv = rotated_real_norm(m, v);
        const auto low = std::min_element(f.begin(), f.end()) - f.begin();
        const double gain = fv - f[static_cast<std::size_t>(top)];
        x[static_cast<std::size_t>(low)] = v;
        f[static_cast<std::size_t>(low)] = fv;
        std::array<std::size_t, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
        x = {x[idx[0]], x[idx[1]], x[idx[2]]};
        f = {f[idx[0]], f[idx[1]], f[idx[2]]};
        if (gain >= 0.0 && gain <= 1e-15 * std::abs(fv)) break;
    }
    return *std::max_element(f.begin(), f.end());
}

// Chains [lhs(theta), omega(M(theta)) / 2] on a theta grid, reported at the
// worst angle. Unit vectors carried from angle to angle give lower bounds on
// omega(M(theta)) that screen the grid; full sweeps run only where the screened
// slack could still undercut the smallest exact slack found so far. Angles are
// refined by local_lower_bound before paying for a sweep. Screened values equal
// to the running minimum up to eigensolver rounding count as settled.
void worst_half_omega(ReportSink& sink, const std::string& variant, const std::vector<double>& thetas,
                      const std::function<double(double)>& lhs, const std::function<M(double)>& make,
                      const SweepOptions& sweep, std::optional<double> t = std::nullopt) {
    constexpr int kAscentSteps = 12;
    const std::size_t count = thetas.size();
    std::vector<double> lhs_v(count);
    std::vector<double> screen(count);
    std::vector<double> hint(count);   // angle suggested by the best carried vector
    std::vector<double> margin(count); // rounding floor of omega(M(theta))

    // The maximizer can jump between two peaks half a turn apart, so a vector
    // is carried for each.
    const M first = make(thetas.front());
    const double phi = numerical_radius(first, sweep).argmax_theta;
    std::array<Eigen::VectorXcd, 2> carried;
    for (int j = 0; j < 2; ++j) {
        const HermEigResult eig = herm_eig(real_part(rotate(first, phi + j * kPi)));
        carried[static_cast<std::size_t>(j)] = eig.eigenvectors.col(first.rows() - 1);
    }
    for (std::size_t k = 0; k < count; ++k) {
        lhs_v[k] = lhs(thetas[k]);
        const M m = make(thetas[k]);
        const double shift = m.norm(); // Frobenius, bounds ||Re e^{i phi} M||
        const double lb0 = ascend(m, carried[0], shift, kAscentSteps);
        const double lb1 = ascend(m, carried[1], shift, kAscentSteps);
        const Eigen::VectorXcd& x = lb0 >= lb1 ? carried[0] : carried[1];
        hint[k] = -std::arg(x.dot(m * x));
        margin[k] = 32.0 * static_cast<double>(m.rows()) * kEpsilon * shift;
        screen[k] = 0.5 * std::max(lb0, lb1) - lhs_v[k];
    }
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return screen[a] < screen[b]; });

    double worst_slack = std::numeric_limits<double>::infinity();
    std::size_t worst_k = order.front();
    double worst_half = 0.0;
    for (std::size_t k : order) {
        if (screen[k] >= worst_slack - margin[k]) break;
        const M m = make(thetas[k]);
        const double refined = 0.5 * local_lower_bound(m, hint[k]) - lhs_v[k];
        if (refined >= worst_slack - margin[k]) continue;
        const double half = 0.5 * numradius(m, sweep);
        const double s = half - lhs_v[k];
        if (s < worst_slack) {
            worst_slack = s;
            worst_k = k;
            worst_half = half;
        }
    }
    sink.chain(variant, {lhs_v[worst_k], worst_half}, t, thetas[worst_k]);
}

// [[e^{i theta} X, e^{-i theta} Y], [e^{i theta} Z, (e^{i theta} X)*]]
M product_block(const M& x, const M& y, const M& z, double theta) {
    const Complex e = std::polar(1.0, theta);
    const M ex = e * x;
    return make_block(FullBlock{ex, std::conj(e) * y, e * z, ex.adjoint()});
}

// ------------------------------------------------------------------ entries

void e01(EvalContext& c, ReportSink& s) {
    Single x(c);
    s.chain("spectral-radius", {x.r(), x.w(), x.n()});
    s.chain("half-norm", {0.5 * x.n(), x.w(), x.n()});
}

void e02(EvalContext& c, ReportSink& s) {
    Single x(c);
    s.chain("real-part", {x.n_re(), x.w()});
    s.chain("imaginary-part", {x.n_im(), x.w()});
}

void e03(EvalContext& c, ReportSink& s) {
    Single x(c);
    const AngleSweep& sw = c.sweep("T", [&] { return x.T; });
    // The top eigenvector at the maximizing angle is an explicit unit vector
    // whose quadratic form reaches the sweep value.
    const HermEigResult eig = herm_eig(real_part(rotate(x.T, sw.argmax_theta)));
    const Eigen::VectorXcd v = eig.eigenvectors.col(eig.eigenvectors.cols() - 1);
    const double witness = std::abs(v.dot(x.T * v));
    const double oracle = c.value("fov(T)", [&] { return fov_oracle(x.T, c.settings().oracle); });
    const double definition = std::max(witness, oracle);
    s.chain("sup-theta", {sw.omega, definition, sw.omega}, std::nullopt, sw.argmax_theta);
}

void e04(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const double sum = p.n("A+B", [&] { return M(p.A + p.B); });
    s.chain("triangle", {sum, 2.0 * p.w_blk_star(), p.nA() + p.nB()});
}

void e05(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const double plus = p.w("A+B", [&] { return M(p.A + p.B); });
    const double minus = p.w("A-B", [&] { return M(p.A - p.B); });
    s.chain("lower", {0.5 * std::max(plus, minus), p.w_blk()});
}

void e06(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const double plus = p.w("A+B", [&] { return M(p.A + p.B); });
    const double minus = p.w("A-B", [&] { return M(p.A - p.B); });
    s.chain("upper", {p.w_blk(), 0.5 * (plus + minus)});
}

void e07(EvalContext& c, ReportSink& s) {
    Pair p(c);
    s.chain("block-bound", {2.0 * p.w_blk_star(), p.davidson_power_rhs()});
}

void e08(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const M& a = p.sqrt_abs("A", [&] { return p.A; });
    const M& b = p.sqrt_abs("B", [&] { return p.B; });
    const M& as = p.sqrt_abs("A*", [&] { return M(p.A.adjoint()); });
    const M& bs = p.sqrt_abs("B*", [&] { return M(p.B.adjoint()); });
    const double x = p.n("|A|^1/2|B*|^1/2", [&] { return M(a * bs); });
    const double y = p.n("|A*|^1/2|B|^1/2", [&] { return M(as * b); });
    const double lhs = p.n("A+B*", [&] { return M(p.A + p.B.adjoint()); });
    s.chain("generalized", {lhs, std::max(p.nA(), p.nB()) + std::max(x, y)});
}

void e09(EvalContext& c, ReportSink& s) {
    Single x(c);
    const QuadResult& f = x.int_w_seg();
    const QuadResult& g = x.int_n_seg();
    s.chain("numrad", {f.f_mid, f.value, 0.5 * (f.f_left + f.f_right)});
    s.chain("norm", {g.f_mid, g.value, 0.5 * (g.f_left + g.f_right)});
}

void e10(EvalContext& c, ReportSink& s) {
    Single x(c);
    const QuadResult& a = x.int_w_seg();
    const QuadResult& b = x.int_w_seg_star();
    const QuadResult& d = x.int_n_seg();
    const QuadResult& e = x.int_n_seg_star();
    s.chain("numrad-segment", {x.n_re(), a.value, x.w()});
    s.chain("numrad-segment-star", {x.n_im(), b.value, x.w()});
    s.chain("norm-segment", {x.n_re(), d.value, x.n()});
    s.chain("norm-segment-star", {x.n_im(), e.value, x.n()});
    hermite_hadamard(s, {&a, &b, &d, &e});
}

void e11(EvalContext& c, ReportSink& s) {
    Single x(c);
    const auto angles = x.integral_angles();
    std::vector<const QuadResult*> used;
    double sup_plain = -std::numeric_limits<double>::infinity();
    double sup_star = -std::numeric_limits<double>::infinity();
    for (double th : angles) {
        used.push_back(&x.int_w_seg_rot(th));
        used.push_back(&x.int_w_seg_star_rot(th));
        sup_plain = std::max(sup_plain, x.int_w_seg_rot(th).value);
        sup_star = std::max(sup_star, x.int_w_seg_star_rot(th).value);
    }
    s.worst_over_theta("rotated", angles, [&](double th) {
        return std::vector<double>{x.n_re_rot(th), x.int_w_seg_rot(th).value, x.w()};
    });
    s.worst_over_theta("rotated-star", angles, [&](double th) {
        return std::vector<double>{x.n_im_rot(th), x.int_w_seg_star_rot(th).value, x.w()};
    });
    s.chain("sup", {x.w(), sup_plain, x.w()});
    s.chain("sup-star", {x.w(), sup_star, x.w()});
    hermite_hadamard(s, used);
}

void e12(EvalContext& c, ReportSink& s) {
    Single x(c);
    const auto angles = x.integral_angles();
    std::vector<const QuadResult*> used;
    double lambda1 = -std::numeric_limits<double>::infinity();
    double lambda2 = -std::numeric_limits<double>::infinity();
    for (double th : angles) {
        used.push_back(&x.int_n_seg_rot(th));
        used.push_back(&x.int_n_seg_star_rot(th));
        lambda1 = std::max(lambda1, x.int_n_seg_rot(th).value);
        lambda2 = std::max(lambda2, x.int_n_seg_star_rot(th).value);
    }
    s.worst_over_theta("rotated", angles, [&](double th) {
        return std::vector<double>{x.n_re_rot(th), x.int_n_seg_rot(th).value, x.n()};
    });
    s.worst_over_theta("rotated-star", angles, [&](double th) {
        return std::vector<double>{x.n_im_rot(th), x.int_n_seg_star_rot(th).value, x.n()};
    });
    s.chain("min-lambda", {x.w(), std::min(lambda1, lambda2), x.n()});
    hermite_hadamard(s, used);
}

void e13(EvalContext& c, ReportSink& s) {
    Single x(c);
    const QuadResult& a = x.int_w_seg();
    const QuadResult& b = x.int_w_seg_star();
    s.chain("segment", {0.5 * x.w(), a.value});
    s.chain("segment-star", {0.5 * x.w(), b.value});
    hermite_hadamard(s, {&a, &b});
}

void e14(EvalContext& c, ReportSink& s) {
    Single x(c);
    if (x.n() < c.settings().degenerate_norm) {
        s.skipped("norm");
        s.skipped("numrad");
        return;
    }
    const QuadResult& a = x.int_n_seg();
    const QuadResult& b = x.int_w_seg();
    s.chain("norm", {x.n(), 2.0 * a.value, 2.0 * x.n()});
    s.chain("numrad", {x.w(), 2.0 * b.value, 2.0 * x.w()});
    hermite_hadamard(s, {&a, &b});
}

void e15(EvalContext& c, ReportSink& s) {
    Single x(c);
    for (double t : c.settings().open_grid()) {
        const double r = r_of(t);
        const double big_r = big_r_of(t);
        const double dw = x.w() - x.w_seg(t);
        const double dn = x.n() - x.n_seg(t);
        s.chain("numrad", {dw / (2.0 * big_r), x.w() - x.n_re(), dw / (2.0 * r)}, t);
        s.chain("norm", {dn / (2.0 * big_r), x.n() - x.n_re(), dn / (2.0 * r)}, t);
    }
}

void e16(EvalContext& c, ReportSink& s) {
    Single x(c);
    for (double t : c.settings().open_grid()) {
        const double big_r = big_r_of(t);
        const double lhs = 0.5 * x.n() + (2.0 * x.w() - (x.w_seg_star(t) + x.w_seg(t))) / (4.0 * big_r);
        s.chain("refinement", {lhs, x.w()}, t);
    }
}

void e17(EvalContext& c, ReportSink& s) {
    Single x(c);
    const double half = 0.5 * x.n();
    s.chain("double", {half + 0.5 * std::abs(x.n_im() - x.n_re()), half + 0.5 * (2.0 * x.w() - (x.n_im() + x.n_re())),
                       x.w()});
}

void e18(EvalContext& c, ReportSink& s) {
    Single x(c);
    const double half = 0.5 * x.n();
    const double tol = c.settings().tolerance.tolerance(std::max(c.operand_scale(), x.w()));
    if (std::abs(x.w() - half) > tol) {
        s.chain("premise-false", {half, x.w()});
        return;
    }
    const auto angles = uniform_angles(c.settings().theta_grid);
    s.worst_over_theta("real-part", angles, [&](double th) {
        const double v = x.n_re_rot(th);
        return std::vector<double>{v, half, v};
    });
    s.worst_over_theta("imaginary-part", angles, [&](double th) {
        const double v = x.n_im_rot(th);
        return std::vector<double>{v, half, v};
    });
}

void e19(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const double nt = p.n("[O,A;B,O]", [&] { return p.blk(); });
    const double x = p.n("A-B*", [&] { return M(p.A - p.B.adjoint()); });
    const double y = p.n("A+B*", [&] { return M(p.A + p.B.adjoint()); });
    const double w = p.w_blk();
    s.chain("block", {0.5 * nt + 0.25 * std::abs(x - y), 0.5 * nt + 0.5 * (2.0 * w - 0.5 * (x + y)), w});
}

void e20(EvalContext& c, ReportSink& s) {
    Single x(c);
    for (double t : c.settings().open_grid()) {
        const double r = r_of(t);
        const double big_r = big_r_of(t);
        const double dn = (x.n() - x.n_seg(t)) / (2.0 * r);
        const double dw = (x.w() - x.w_seg(t)) / (2.0 * big_r);
        s.chain("reverse", {x.n(), x.w() + dn - dw}, t);
        s.chain("quotient", {dw, dn}, t);
    }
}

void e21(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const double sum = p.n("A+B", [&] { return M(p.A + p.B); });
    for (double t : c.settings().open_grid()) {
        const double gap = (p.w_blk_star() - p.w_blk_star_seg(t)) / big_r_of(t);
        s.chain("triangle", {sum, 2.0 * p.w_blk_star() - gap, p.nA() + p.nB() - gap}, t);
    }
}

void e22(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const M& A = p.A;
    const M& B = p.B;
    const M as = A.adjoint();
    const M bs = B.adjoint();
    const double w4 = 4.0 * p.w_blk_star();
    for (double t : c.settings().closed_grid()) {
        const double u = 1.0 - t;
        const std::string k = key(t);
        const double m1 = std::max(p.w("m1a" + k, [&] { return M(u * (B + as) - t * (A + bs)); }),
                                   p.w("m1b" + k, [&] { return M(u * (B - as) + t * (bs - A)); }));
        const double m2 = std::max(p.w("m2a" + k, [&] { return M(u * (A + bs) + t * (B + as)); }),
                                   p.w("m2b" + k, [&] { return M(u * (A - bs) + t * (B - as)); }));
        const double mid = 2.0 * p.w_blk_star_seg(t) + 2.0 * p.w_blk_star_seg_star(t);
        s.chain("segment-blocks", {m1 + m2, mid, w4}, t);
    }
    const double re_minus = p.n("Re A-Re B", [&] { return M(real_part(A) - real_part(B)); });
    const double im_minus = p.n("Im A-Im B", [&] { return M(imag_part(A) - imag_part(B)); });
    const double re_plus = p.n("Re A+Re B", [&] { return M(real_part(A) + real_part(B)); });
    const double im_plus = p.n("Im A+Im B", [&] { return M(imag_part(A) + imag_part(B)); });
    const double sum = p.n("A+B", [&] { return M(A + B); });
    const double diff = p.n("A-B", [&] { return M(A - B); });
    s.chain("cartesian", {std::max(im_minus, re_minus) + std::max(re_plus, im_plus), sum + diff, w4});
    const double wp = p.w("A+B*", [&] { return M(A + bs); });
    const double wm = p.w("A-B*", [&] { return M(A - bs); });
    s.chain("average", {0.5 * (sum + diff), 2.0 * p.w_blk_star(), wp + wm});
}

void e23(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const QuadResult& q = p.int_w_blk();
    const double sum = p.n("A+B", [&] { return M(p.A + p.B); });
    s.chain("integral", {sum, 2.0 * q.value, p.nA() + p.nB()});
    hermite_hadamard(s, {&q});
}

void e24(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const double sum = p.n("A+B", [&] { return M(p.A + p.B); });
    const double rhs = p.davidson_power_rhs();
    const double scale = std::max(1.0, c.operand_scale());
    const bool self_adjoint =
        is_hermitian(p.A, default_tolerance(scale)) && is_hermitian(p.B, default_tolerance(scale));
    for (double t : c.settings().open_grid()) {
        const double big_r = big_r_of(t);
        const double gap = (p.w_blk_star() - p.w_blk_star_seg(t)) / big_r;
        s.chain("general", {sum + gap, 2.0 * p.w_blk_star(), rhs}, t);
        if (self_adjoint) {
            const double gap_sa = (p.w_blk() - p.w_blk_seg(t)) / big_r;
            const M& a = p.sqrt_abs("A", [&] { return p.A; });
            const M& b = p.sqrt_abs("B", [&] { return p.B; });
            const double x = p.n("|A|^1/2|B|^1/2", [&] { return M(a * b); });
            s.chain("self-adjoint", {sum + gap_sa, std::max(p.nA(), p.nB()) + x}, t);
        }
    }
}

void e25(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const double half = 0.5 * p.n("A+B", [&] { return M(p.A + p.B); });
    for (double t : c.settings().closed_grid()) {
        const double w = p.w_blk_seg(t);
        s.chain("positive-identity", {w, half, w}, t);
    }
}

void e26(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const double lhs = std::sqrt(p.w("AB", [&] { return M(p.A * p.B); }));
    const double half = 0.5 * p.n("A+B*", [&] { return M(p.A + p.B.adjoint()); });
    for (double t : c.settings().open_grid()) {
        const double gap = (p.w_blk() - p.w_blk_seg(t)) / (2.0 * r_of(t));
        s.chain("product", {lhs, p.w_blk(), half + gap}, t);
    }
}

void e27(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const M ab = p.A * p.B;
    const M& a_half = c.matrix("A^1/2", [&] { return frac_power(p.A, 0.5); });
    const M& b_half = c.matrix("B^1/2", [&] { return frac_power(p.B, 0.5); });
    const double geo = p.n("A^1/2B^1/2", [&] { return M(a_half * b_half); });
    const double r = std::sqrt(c.value("r(AB)", [&] { return spectral_radius(ab); }));
    const double w = std::sqrt(p.w("AB", [&] { return ab; }));
    const double half = 0.5 * p.n("A+B", [&] { return M(p.A + p.B); });
    s.chain("identity", {geo, r, geo});
    s.chain("chain", {r, w, half});
}

void e28(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const double w_ab = p.w("AB", [&] { return M(p.A * p.B); });
    const double w_ba = p.w("BA", [&] { return M(p.B * p.A); });
    const double d = c.scalar_dist("[O,A;B,O]", [&] { return p.blk(); }).distance;
    s.chain("block-bound", {p.w_blk(), std::sqrt(std::max(w_ab, w_ba) + d * d)});
    for (std::size_t i = 0; i < 2; ++i) {
        const M& x = c.op(i);
        const std::string name = i == 0 ? "A" : "B";
        const double w = p.w(name, [&] { return x; });
        const double w_sq = p.w(name + "^2", [&] { return M(x * x); });
        const double dx = c.scalar_dist(name, [&] { return x; }).distance;
        s.chain("square-lower-" + name, {w * w - dx * dx, w_sq});
        s.chain("power-" + name, {w_sq, w * w});
    }
}

void e29(EvalContext& c, ReportSink& s) {
    const M& x1 = c.op(0);
    const M& x2 = c.op(1);
    const M& x3 = c.op(2);
    const M& x4 = c.op(3);
    const M zero = M::Zero(x1.rows(), x1.cols());
    const double w = c.omega("X", [&] { return make_block(FullBlock{x1, x2, x3, x4}); });
    const double w_diag = c.omega("diag(X1,X4)", [&] { return make_block(FullBlock{x1, zero, zero, x4}); });
    const M& e = c.matrix("E", [&] { return off_diagonal(x2, x3); });
    const double w_e = c.omega("E", [&] { return e; });
    const double w1 = c.omega("X1", [&] { return x1; });
    const double w4 = c.omega("X4", [&] { return x4; });
    const double w23 = c.omega("X2X3", [&] { return M(x2 * x3); });
    const double w32 = c.omega("X3X2", [&] { return M(x3 * x2); });
    const double d = c.scalar_dist("E", [&] { return e; }).distance;
    s.chain("remark", {w, w_diag + w_e, std::max(w1, w4) + std::sqrt(std::max(w23, w32) + d * d)});

    const double alpha1 =
        0.5 * std::sqrt(c.norm("|X2|^2+|X3*|^2", [&] { return M(x2.adjoint() * x2 + x3 * x3.adjoint()); }) +
                        2.0 * w32);
    const double alpha2 =
        0.5 * std::sqrt(c.norm("|X2*|^2+|X3|^2", [&] { return M(x2 * x2.adjoint() + x3.adjoint() * x3); }) +
                        2.0 * w23);
    const double alpha = std::min(alpha1, alpha2);
    const auto bound = [&](double we) {
        return 0.5 * (w1 + w4 + std::sqrt((w1 - w4) * (w1 - w4) + 4.0 * we * we));
    };
    s.chain("off-diagonal-bound", {w, bound(w_e), bound(alpha)});
    s.chain("alpha", {w_e, alpha});
}

void e30(EvalContext& c, ReportSink& s) {
    Pair p(c);
    const M& A = p.A;
    const M& B = p.B;
    const auto& st = c.settings();
    const auto angles = uniform_angles(st.theta_grid);
    const M ab = A * B;
    const M ba = B * A;
    const M bbs = B * B.adjoint(); // |B*|^2
    const M asa = A.adjoint() * A; // |A|^2
    const auto lhs_ab = [&](double th) { return hermitian_norm(real_part(rotate(ab, th))); };

    worst_half_omega(
        s, "product", angles, lhs_ab, [&](double th) { return product_block(ba, bbs, asa, th); }, st.sweep);

    const double na = p.nA();
    const double nb = p.nB();
    const bool degenerate = na < st.degenerate_norm || nb < st.degenerate_norm;
    if (degenerate) {
        s.skipped("product-rescaled");
    } else {
        const double ratio = na / nb;
        worst_half_omega(
            s, "product-rescaled", angles, lhs_ab,
            [&](double th) { return product_block(ba, ratio * bbs, asa / ratio, th); }, st.sweep);
    }

    // Aluthge instantiation with T = A: A' = U|T|^{1-t}, B' = |T|^t, so A'B' = T,
    // B'A' is the weighted Aluthge transform, B'B'* = |T|^{2t}, A'*A' = |T|^{2(1-t)}.
    const M gram = A.adjoint() * A;
    const auto lhs_t = [&](double th) { return hermitian_norm(real_part(rotate(A, th))); };
    for (double wt : st.aluthge_weights) {
        const M tilde = aluthge(A, wt);
        const M upper = frac_power(gram, wt);
        const M lower = frac_power(gram, 1.0 - wt);
        worst_half_omega(
            s, "aluthge", angles, lhs_t, [&](double th) { return product_block(tilde, upper, lower, th); }, st.sweep,
            wt);
        if (na < st.degenerate_norm) {
            s.skipped("aluthge-rescaled");
        } else {
            const double f = std::pow(na, 1.0 - 2.0 * wt);
            worst_half_omega(
                s, "aluthge-rescaled", angles, lhs_t,
                [&](double th) { return product_block(tilde, f * upper, lower / f, th); }, st.sweep, wt);
        }
    }

    const double w_ab = p.w("AB", [&] { return ab; });
    const double w_ba = p.w("BA", [&] { return ba; });
    const M a4 = asa * asa;
    const M b4 = bbs * bbs;
    const double m1 = p.w("|A|^2|B*|^2", [&] { return M(asa * bbs); });
    const double m2 = p.w("|B*|^2|A|^2", [&] { return M(bbs * asa); });
    const double mixed = 2.0 * std::min(m1, m2);
    s.chain("closing", {w_ab, 0.5 * w_ba + 0.25 * std::sqrt(spectral_norm(M(b4 + a4)) + mixed)});
    if (degenerate) {
        s.skipped("closing-rescaled");
        s.skipped("beta");
    } else {
        const double q = (na * na) / (nb * nb);
        const double core = spectral_norm(M(q * b4 + a4 / q));
        s.chain("closing-rescaled", {w_ab, 0.5 * w_ba + 0.25 * std::sqrt(core + mixed)});
        const double beta = 0.5 * std::sqrt(core + mixed);
        s.worst_over_theta("beta", angles,
                           [&](double th) { return std::vector<double>{lhs_ab(th), 0.5 * (w_ba + beta)}; });
    }
}

std::vector<InequalityEntry> build() {
    using OK = OperandKind;
    using PK = ParamKind;
    return {
        {"E01", "r(T) <= w(T) <= ||T||, ||T||/2 <= w(T)", OK::single, PK::none, false, e01},
        {"E02", "||Re T||, ||Im T|| <= w(T)", OK::single, PK::none, false, e02},
        {"E03", "sup_theta ||Re e^{i theta} T|| = sup_x |<Tx,x>|", OK::single, PK::none, false, e03},
        {"E04", "||A+B|| <= 2 w([O,A;B*,O]) <= ||A|| + ||B||", OK::pair, PK::none, false, e04},
        {"E05", "max{w(S+T), w(S-T)}/2 <= w([O,S;T,O])", OK::pair, PK::none, false, e05},
        {"E06", "w([O,S;T,O]) <= (w(S+T) + w(S-T))/2", OK::pair, PK::none, false, e06},
        {"E07", "2 w([O,A;B*,O]) <= max{||A||,||B||} + (|||A|^1/2|B|^1/2|| + |||B*|^1/2|A*|^1/2||)/2", OK::pair,
         PK::none, false, e07},
        {"E08", "||A+B*|| <= max{||A||,||B||} + max{|||A|^1/2|B*|^1/2||, |||A*|^1/2|B|^1/2||}", OK::pair, PK::none,
         false, e08},
        {"E09", "Hermite-Hadamard for t -> w((1-t)T + tT*) and t -> ||(1-t)T + tT*||", OK::single, PK::none, false,
         e09},
        {"E10", "Cartesian parts <= segment integrals <= w(T) or ||T||", OK::single, PK::none, false, e10},
        {"E11", "w(T) = sup_theta of the rotated segment integrals of w", OK::single, PK::theta_grid, false, e11},
        {"E12", "w(T) <= min{lambda1, lambda2} <= ||T||", OK::single, PK::theta_grid, false, e12},
        {"E13", "w(T)/2 <= segment integrals of w", OK::single, PK::none, false, e13},
        {"E14", "||T|| <= 2 int ||seg|| <= 2||T||, w(T) <= 2 int w(seg) <= 2 w(T)", OK::single, PK::none, false, e14},
        {"E15", "convexity refinement and reverse of ||Re T|| <= w(T) and ||Re T|| <= ||T||", OK::single,
         PK::open_t_grid, false, e15},
        {"E16", "||T||/2 + (2w(T) - w(seg*) - w(seg))/(4R) <= w(T)", OK::single, PK::open_t_grid, false, e16},
        {"E17", "||T||/2 + |(||Im T|| - ||Re T||)|/2 <= ||T||/2 + (2w - ||Im T|| - ||Re T||)/2 <= w(T)", OK::single,
         PK::none, false, e17},
        {"E18", "w(T) = ||T||/2 implies ||Re e^{i theta} T|| = ||Im e^{i theta} T|| = ||T||/2", OK::single,
         PK::theta_grid, false, e18},
        {"E19", "refinement for [O,A;B,O] with ||A -+ B*||", OK::pair, PK::none, false, e19},
        {"E20", "||T|| <= w(T) + (||T|| - ||seg||)/(2r) - (w(T) - w(seg))/(2R)", OK::single, PK::open_t_grid, false,
         e20},
        {"E21", "||A+B|| <= ||A|| + ||B|| - (w(T) - w(T_t))/R, T = [O,A;B*,O]", OK::pair, PK::open_t_grid, false, e21},
        {"E22", "segment-block chains and (||A+B|| + ||A-B||)/2 <= 2w(T) <= w(A+B*) + w(A-B*)", OK::pair, PK::t_grid,
         false, e22},
        {"E23", "||A+B|| <= 2 int w(T_t) dt <= ||A|| + ||B||", OK::pair, PK::none, false, e23},
        {"E24", "||A+B|| + (w(T) - w(T_t))/R <= Davidson-Power type bound", OK::pair, PK::open_t_grid, false, e24},
        {"E25", "positive A, B: w(T_t) = w(T) = ||A+B||/2", OK::pair, PK::t_grid, true, e25},
        {"E26", "w(AB)^1/2 <= ||A+B*||/2 + (w(T) - w(T_t))/(2r), T = [O,A;B,O]", OK::pair, PK::open_t_grid, false,
         e26},
        {"E27", "positive A, B: ||A^1/2 B^1/2|| = r(AB)^1/2 <= w(AB)^1/2 <= ||A+B||/2", OK::pair, PK::none, true,
         e27},
        {"E28", "w([O,A;B,O]) <= sqrt(max{w(AB), w(BA)} + inf ||T - lambda||^2)", OK::pair, PK::none, false, e28},
        {"E29", "2x2 operator matrix bounds via the off-diagonal part", OK::quadruple, PK::none, false, e29},
        {"E30", "||Re e^{i theta} AB|| <= w(4-block)/2 and product bounds", OK::pair, PK::theta_grid, false, e30},
    };
}

} // namespace

const std::vector<InequalityEntry>& catalog() {
    static const std::vector<InequalityEntry> entries = build();
    return entries;
}

CharacterizationProbe characterization_probe(const ComplexMatrix& t, int theta_grid, const EvalSettings& settings) {
    require_valid(t);
    CharacterizationProbe probe;
    const double norm = spectral_norm(t);
    const double w = numradius(t, settings.sweep);
    const double half = 0.5 * norm;
    probe.tolerance = settings.tolerance.tolerance(norm);
    probe.premise = std::abs(w - half) <= probe.tolerance;
    for (double th : uniform_angles(theta_grid)) {
        const M rt = rotate(t, th);
        probe.max_deviation = std::max({probe.max_deviation, std::abs(hermitian_norm(real_part(rt)) - half),
                                        std::abs(hermitian_norm(imag_part(rt)) - half)});
    }
    probe.conclusion = probe.max_deviation <= probe.tolerance;
    return probe;
}

} // namespace numrad
