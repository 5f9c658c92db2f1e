#pragma once

// Operator constructions: Cartesian parts, rotations, segment operators,
// 2x2 block operators and the weighted Aluthge transform.

#include <variant>

#include "numrad/matrix.hpp"

namespace numrad {

/// (T + T*) / 2
ComplexMatrix real_part(const ComplexMatrix& t);
/// (T - T*) / (2i)
ComplexMatrix imag_part(const ComplexMatrix& t);

/// e^{i theta} T
ComplexMatrix rotate(const ComplexMatrix& t, double theta);

enum class SegmentKind {
    plain,     // (1-t) T + t T*
    star_minus // (1-t) T* - t T
};

/// Points on the affine path between T and T*. Throws DomainError for t
/// outside [0,1].
ComplexMatrix segment(const ComplexMatrix& t, double s, SegmentKind kind = SegmentKind::plain);

/// [[O, A], [B, O]]
struct OffDiagonal {
    ComplexMatrix upper;
    ComplexMatrix lower;
};

/// [[X1, X2], [X3, X4]]
struct FullBlock {
    ComplexMatrix x1;
    ComplexMatrix x2;
    ComplexMatrix x3;
    ComplexMatrix x4;
};

using BlockSpec = std::variant<OffDiagonal, FullBlock>;

/// Materializes a 2n x 2n block operator. Throws DimensionMismatch unless all
/// operands are n x n.
ComplexMatrix make_block(const BlockSpec& spec);

/// Shorthand for make_block(OffDiagonal{a, b}).
ComplexMatrix off_diagonal(const ComplexMatrix& a, const ComplexMatrix& b);

/// Weighted Aluthge transform |T|^t U |T|^{1-t}, with U from polar(T) and the
/// support-projection convention for |T|^0. Throws DomainError for t outside [0,1].
ComplexMatrix aluthge(const ComplexMatrix& t, double weight);

} // namespace numrad
