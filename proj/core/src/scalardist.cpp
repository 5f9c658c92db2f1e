#include "numrad/scalardist.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "numrad/transforms.hpp"

namespace numrad {

namespace {

struct Vertex {
    double x;
    double y;
    double f;
};

class ShiftedNorm {
public:
    explicit ShiftedNorm(const ComplexMatrix& t) : t_(t), work_(t.rows(), t.cols()) {}

    double operator()(double x, double y) {
        work_ = t_;
        work_.diagonal().array() -= Complex(x, y);
        return spectral_norm(work_);
    }

private:
    const ComplexMatrix& t_;
    ComplexMatrix work_;
};

struct RunResult {
    Vertex best;
    int iterations;
    bool converged;
};

RunResult nelder_mead(ShiftedNorm& h, double x0, double y0, double step, double stop_diameter, int max_iters) {
    std::array<Vertex, 3> s{Vertex{x0, y0, h(x0, y0)}, Vertex{x0 + step, y0, 0.0}, Vertex{x0, y0 + step, 0.0}};
    s[1].f = h(s[1].x, s[1].y);
    s[2].f = h(s[2].x, s[2].y);

    auto diameter = [&] {
        double d = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) d = std::max(d, std::hypot(s[i].x - s[j].x, s[i].y - s[j].y));
        return d;
    };

    int iter = 0;
    bool converged = false;
    for (; iter < max_iters; ++iter) {
        std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
        if (diameter() <= stop_diameter) {
            converged = true;
            break;
        }
        const double cx = 0.5 * (s[0].x + s[1].x);
        const double cy = 0.5 * (s[0].y + s[1].y);
        auto along = [&](double coef) {
            const double x = cx + coef * (s[2].x - cx);
            const double y = cy + coef * (s[2].y - cy);
            return Vertex{x, y, h(x, y)};
        };

        const Vertex reflected = along(-1.0);
        if (reflected.f < s[0].f) {
            const Vertex expanded = along(-2.0);
            s[2] = expanded.f < reflected.f ? expanded : reflected;
        } else if (reflected.f < s[1].f) {
            s[2] = reflected;
        } else {
            const bool outside = reflected.f < s[2].f;
            const Vertex contracted = along(outside ? -0.5 : 0.5);
            if (contracted.f < std::min(reflected.f, s[2].f)) {
                s[2] = contracted;
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i].x = s[0].x + 0.5 * (s[i].x - s[0].x);
                    s[i].y = s[0].y + 0.5 * (s[i].y - s[0].y);
                    s[i].f = h(s[i].x, s[i].y);
                }
            }
        }
    }
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    return {s[0], iter, converged};
}

} // namespace

ScalarDistResult min_scalar_distance(const ComplexMatrix& t, const ScalarDistOptions& options) {
    require_valid(t);
    const double norm = spectral_norm(t);
    const double scale = std::max(1.0, norm);
    const double stop = options.tol * scale;
    ShiftedNorm h(t);

    const Complex centroid = t.trace() / static_cast<double>(t.rows());
    const std::array<Complex, 2> starts{centroid, Complex(0.0, 0.0)};

    ScalarDistResult out;
    out.lambda_star = Complex(0.0, 0.0);
    out.distance = norm;
    out.converged = true;
    for (const Complex& start : starts) {
        double step = 0.1 * scale;
        Vertex current{start.real(), start.imag(), h(start.real(), start.imag())};
        bool run_converged = false;
        for (int restart = 0; restart < 8; ++restart) {
            const RunResult run = nelder_mead(h, current.x, current.y, step, stop, options.max_iters);
            out.iterations += run.iterations;
            run_converged = run.converged;
            const double gain = current.f - run.best.f;
            if (run.best.f < current.f) current = run.best;
            // A stalled run restarts from its best vertex with a fresh simplex.
            if (!run.converged) continue;
            if (gain <= stop) break;
            step = std::max(10.0 * stop, 0.1 * step);
        }
        out.converged = out.converged && run_converged;
        if (current.f < out.distance) {
            out.distance = current.f;
            out.lambda_star = Complex(current.x, current.y);
        }
    }
    return out;
}

ScalarDistResult min_block_scalar_distance(const ComplexMatrix& a, const ComplexMatrix& b,
                                           const ScalarDistOptions& options) {
    return min_scalar_distance(off_diagonal(a, b), options);
}

} // namespace numrad
