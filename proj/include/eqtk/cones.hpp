#pragma once

#include "eqtk/exact_linalg.hpp"
#include "eqtk/rational.hpp"

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace eqtk {

using IndexSet = std::vector<std::size_t>;

/// A finite set of distinct rational covectors on a `dim`-dimensional space.
class FunctionalSet {
public:
    FunctionalSet(std::size_t dim, std::vector<RationalVector> functionals);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return functionals_.size(); }
    const RationalVector& operator[](std::size_t i) const { return functionals_[i]; }
    const std::vector<RationalVector>& functionals() const { return functionals_; }

private:
    std::size_t dim_;
    std::vector<RationalVector> functionals_;
};

/// Positive diagonal inner product; an empty weight list means the standard one.
struct DiagonalMetric {
    RationalVector weights;

    Rational inner(const RationalVector& a, const RationalVector& b) const;
};

struct Decomposition {
    IndexSet phi0;
    IndexSet phi1;
    IndexSet phi_inf;
    std::vector<RationalVector> w_basis;
    std::vector<RationalVector> u_basis;
    DiagonalMetric metric;
};

/// Indices alpha in `bounded` that occur with a strictly positive coefficient in
/// some vanishing nonnegative combination of the bounded functionals.
IndexSet compute_phi0(const FunctionalSet& phi, const IndexSet& bounded);

/// Common kernel of the covectors; the whole space when the list is empty.
std::vector<RationalVector> compute_w(const std::vector<RationalVector>& functionals, std::size_t dim);

/// Complement of span(w_basis) orthogonal under `metric`.
std::vector<RationalVector> orthogonal_complement(const std::vector<RationalVector>& w_basis, std::size_t dim,
                                                  const DiagonalMetric& metric);

/// A vector v with alpha(v) = 0 on phi0 and alpha(v) >= 1 off phi0.
/// Throws InfeasibleError when no such vector exists.
RationalVector interior_vector(const FunctionalSet& phi, const IndexSet& phi0);

struct Diverges {};
using OffsetTag = std::variant<Diverges, Rational>;

Decomposition classify_sequence(const FunctionalSet& phi, const std::vector<OffsetTag>& schedule,
                                const DiagonalMetric& metric = {});

}  // namespace eqtk
