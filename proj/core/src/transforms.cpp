#include "numrad/transforms.hpp"

#include <cmath>

#include "numrad/errors.hpp"

namespace numrad {

ComplexMatrix real_part(const ComplexMatrix& t) { return 0.5 * (t + t.adjoint()); }

ComplexMatrix imag_part(const ComplexMatrix& t) { return Complex(0.0, -0.5) * (t - t.adjoint()); }

ComplexMatrix rotate(const ComplexMatrix& t, double theta) { return std::polar(1.0, theta) * t; }

ComplexMatrix segment(const ComplexMatrix& t, double s, SegmentKind kind) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("segment: t must lie in [0,1]");
    if (kind == SegmentKind::plain) return (1.0 - s) * t + s * t.adjoint();
    return (1.0 - s) * t.adjoint() - s * t;
}

namespace {

void require_same_square(std::initializer_list<const ComplexMatrix*> ms) {
    const ComplexMatrix& first = **ms.begin();
    for (const ComplexMatrix* m : ms) {
        if (m->rows() < 1 || m->rows() != m->cols() || m->rows() != first.rows())
            throw DimensionMismatch("block operands must all be n x n with the same n");
    }
}

} // namespace

ComplexMatrix make_block(const BlockSpec& spec) {
    if (const auto* od = std::get_if<OffDiagonal>(&spec)) {
        require_same_square({&od->upper, &od->lower});
        const Eigen::Index n = od->upper.rows();
        ComplexMatrix out = ComplexMatrix::Zero(2 * n, 2 * n);
        out.topRightCorner(n, n) = od->upper;
        out.bottomLeftCorner(n, n) = od->lower;
        return out;
    }
    const auto& fb = std::get<FullBlock>(spec);
    require_same_square({&fb.x1, &fb.x2, &fb.x3, &fb.x4});
    const Eigen::Index n = fb.x1.rows();
    ComplexMatrix out(2 * n, 2 * n);
    out.topLeftCorner(n, n) = fb.x1;
    out.topRightCorner(n, n) = fb.x2;
    out.bottomLeftCorner(n, n) = fb.x3;
    out.bottomRightCorner(n, n) = fb.x4;
    return out;
}

ComplexMatrix off_diagonal(const ComplexMatrix& a, const ComplexMatrix& b) {
    return make_block(OffDiagonal{a, b});
}

ComplexMatrix aluthge(const ComplexMatrix& t, double weight) {
    if (!(weight >= 0.0 && weight <= 1.0)) throw DomainError("aluthge: t must lie in [0,1]");
    const PolarResult p = polar(t);
    return frac_power(p.positive, weight) * p.unitary * frac_power(p.positive, 1.0 - weight);
}

} // namespace numrad
