#pragma once

#include "eqtk/cones.hpp"
#include "eqtk/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace eqtk {

/// normal . v >= offset
struct HalfSpace {
    RationalVector normal;
    Rational offset;
};

/// Intersection of closed rational half-spaces in Q^dim. Redundant and
/// mutually contradictory constraints are allowed; emptiness is a query result.
class HPolytope {
public:
    explicit HPolytope(std::size_t dim) : dim_(dim) {}
    HPolytope(std::size_t dim, std::vector<HalfSpace> constraints);

    void add(RationalVector normal, Rational offset);

    std::size_t dim() const { return dim_; }
    const std::vector<HalfSpace>& constraints() const { return constraints_; }

    bool contains(const RationalVector& point) const;

private:
    std::size_t dim_;
    std::vector<HalfSpace> constraints_;
};

/// Convex hull given by its extreme points, in the coordinates of some basis.
struct VertexHull {
    std::size_t dim = 0;
    std::vector<RationalVector> points;
};

bool is_empty(const HPolytope& p);

/// True when the polytope is nonempty and contains no ray.
bool is_bounded(const HPolytope& p);

/// Deduplicated vertex set, sorted lexicographically. Empty for an empty
/// polytope; throws UnboundedError when the polytope contains a ray.
std::vector<RationalVector> vertices(const HPolytope& p);

/// Exact Lebesgue volume; zero for empty or lower-dimensional polytopes.
Rational volume(const HPolytope& p);

/// Simplices (as vertex lists) of a pulling triangulation of a full-dimensional polytope.
std::vector<std::vector<RationalVector>> triangulate(const HPolytope& p);

/// Orthogonal projection onto span(basis); points are returned as coefficients
/// against `basis`, so the image is measured in those coordinates.
VertexHull project(const HPolytope& p, const std::vector<RationalVector>& basis);

/// Keeps only extreme points of a finite point set.
VertexHull convex_hull(std::size_t dim, const std::vector<RationalVector>& points);

/// Facet description of a full-dimensional hull. Throws DomainError if the hull is lower-dimensional.
HPolytope to_hpolytope(const VertexHull& hull);

Rational volume(const VertexHull& hull);

/// Every point of `inner` lies in `outer` (checked on vertices; `inner` must be bounded).
bool contains(const HPolytope& outer, const HPolytope& inner);

/// Omega(Phi, b) = {v : alpha(v) >= b(alpha)}.
HPolytope omega(const FunctionalSet& phi, const RationalVector& offsets);

/// Orthogonal projection onto span(w_basis) under `metric`, as a dim x dim matrix.
RationalMatrix projection_matrix(const std::vector<RationalVector>& w_basis, std::size_t dim,
                                 const DiagonalMetric& metric);

/// The split polytope: the U-projection of the phi0 part (offsets b(alpha)) plus
/// the W-slice of the phi_inf and phi1 constraints raised by omega.
HPolytope split_polytope(const FunctionalSet& phi, const Decomposition& dec, const RationalVector& offsets,
                         const Rational& omega);

struct RatioRow {
    std::int64_t n = 0;
    Rational omega;
    Rational split_volume;
    Rational full_volume;
    Rational ratio;
    bool contained = false;
};

struct RatioReport {
    std::vector<RatioRow> rows;
    double limit_estimate = 0.0;
    /// Last ratio within `tolerance` of one and ratios nondecreasing.
    bool converges_to_one = false;
};

using OffsetSchedule = std::function<RationalVector(std::int64_t)>;
using OmegaRule = std::function<Rational(std::int64_t)>;

RatioReport ratio_experiment(const FunctionalSet& phi, const Decomposition& dec, const OffsetSchedule& offsets_at,
                             const OmegaRule& omega_rule, const std::vector<std::int64_t>& n_list,
                             double tolerance = 0.05, unsigned threads = 1);

/// sqrt(n) rounded to the nearest multiple of 10^-digits; exact for perfect squares.
Rational rounded_sqrt(std::int64_t n, int digits = 9);

}  // namespace eqtk
