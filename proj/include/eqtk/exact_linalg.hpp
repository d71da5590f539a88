#pragma once

#include "eqtk/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace eqtk {

/// Dense row-major rational matrix; rows are stored as RationalVectors.
using RationalMatrix = std::vector<RationalVector>;

struct RowEchelon {
    RationalMatrix reduced;             // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;    // pivot column of each kept row
};

RowEchelon row_reduce(RationalMatrix rows, std::size_t cols);

std::size_t rank(const RationalMatrix& rows, std::size_t cols);

/// Basis of {x : rows * x = 0}. Vectors are scaled to be primitive integral.
std::vector<RationalVector> nullspace(const RationalMatrix& rows, std::size_t cols);

/// Unique solution of a square system, or nullopt when singular.
std::optional<RationalVector> solve_square(RationalMatrix a, RationalVector b);

Rational determinant(RationalMatrix a);

/// Rescales v to a primitive integer vector with the same direction.
RationalVector primitive(const RationalVector& v);

/// Affine rank (dimension of the affine hull) of a point set; -1 for no points.
int affine_rank(const std::vector<RationalVector>& points);

}  // namespace eqtk
