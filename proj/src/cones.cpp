#include "eqtk/cones.hpp"

#include "eqtk/errors.hpp"
#include "eqtk/simplex.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace eqtk {

FunctionalSet::FunctionalSet(std::size_t dim, std::vector<RationalVector> functionals)
    : dim_(dim), functionals_(std::move(functionals)) {
    if (dim_ == 0) throw DomainError("functional set dimension must be positive");
    std::set<RationalVector> seen;
    for (const auto& f : functionals_) {
        if (f.size() != dim_) {
            throw DimensionError("covector of length " + std::to_string(f.size()) + " in dimension " +
                                 std::to_string(dim_));
        }
        if (!seen.insert(f).second) throw DomainError("duplicate covector in functional set");
    }
}

Rational DiagonalMetric::inner(const RationalVector& a, const RationalVector& b) const {
    if (weights.empty()) return dot(a, b);
    if (a.size() != weights.size() || b.size() != weights.size()) throw DimensionError("metric dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += weights[i] * a[i] * b[i];
    return s;
}

IndexSet compute_phi0(const FunctionalSet& phi, const IndexSet& bounded) {
    for (auto i : bounded) {
        if (i >= phi.size()) throw DomainError("bounded index out of range");
    }
    IndexSet out;
    const std::size_t n = bounded.size();
    for (std::size_t target = 0; target < n; ++target) {
        LinearProgram lp(n);
        for (std::size_t k = 0; k < phi.dim(); ++k) {
            RationalVector row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = phi[bounded[j]][k];
            lp.add_row(std::move(row), Relation::Equal, 0);
        }
        RationalVector cap(n, Rational(0));
        cap[target] = 1;
        lp.add_row(cap, Relation::LessEq, 1);
        lp.objective = cap;
        const LpSolution sol = maximize(lp);
        if (sol.status == LpStatus::Optimal && sol.value == 1) out.push_back(bounded[target]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RationalVector> compute_w(const std::vector<RationalVector>& functionals, std::size_t dim) {
    return nullspace(functionals, dim);
}

std::vector<RationalVector> orthogonal_complement(const std::vector<RationalVector>& w_basis, std::size_t dim,
                                                  const DiagonalMetric& metric) {
    RationalMatrix rows;
    for (const auto& w : w_basis) {
        RationalVector row(w);
        if (!metric.weights.empty()) {
            for (std::size_t i = 0; i < dim; ++i) row[i] *= metric.weights[i];
        }
        rows.push_back(std::move(row));
    }
    return nullspace(rows, dim);
}

RationalVector interior_vector(const FunctionalSet& phi, const IndexSet& phi0) {
    const std::size_t dim = phi.dim();
    std::vector<bool> in_phi0(phi.size(), false);
    for (auto i : phi0) in_phi0.at(i) = true;

    // variables: v (free, dim entries) then slack s
    LinearProgram lp(dim + 1);
    for (std::size_t k = 0; k < dim; ++k) lp.is_free[k] = true;
    bool has_strict = false;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        RationalVector row(phi[i]);
        if (in_phi0[i]) {
            row.push_back(0);
            lp.add_row(std::move(row), Relation::Equal, 0);
        } else {
            row.push_back(-1);
            lp.add_row(std::move(row), Relation::GreaterEq, 0);
            has_strict = true;
        }
    }
    if (!has_strict) return RationalVector(dim, Rational(0));
    RationalVector cap(dim + 1, Rational(0));
    cap[dim] = 1;
    lp.add_row(cap, Relation::LessEq, 1);
    lp.objective = cap;
    const LpSolution sol = maximize(lp);
    if (sol.status != LpStatus::Optimal || sol.value < 1) {
        throw InfeasibleError("no vector is positive off phi0 and zero on phi0");
    }
    return RationalVector(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(dim));
}

Decomposition classify_sequence(const FunctionalSet& phi, const std::vector<OffsetTag>& schedule,
                                const DiagonalMetric& metric) {
    if (schedule.size() != phi.size()) throw DimensionError("offset schedule must tag every functional");
    if (!metric.weights.empty()) {
        if (metric.weights.size() != phi.dim()) throw DimensionError("metric dimension mismatch");
        for (const auto& w : metric.weights) {
            if (w <= 0) throw DomainError("metric weights must be positive");
        }
    }
    Decomposition dec;
    dec.metric = metric;
    IndexSet bounded;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (std::holds_alternative<Diverges>(schedule[i])) dec.phi_inf.push_back(i);
        else bounded.push_back(i);
    }
    dec.phi0 = compute_phi0(phi, bounded);
    std::set_difference(bounded.begin(), bounded.end(), dec.phi0.begin(), dec.phi0.end(),
                        std::back_inserter(dec.phi1));
    std::vector<RationalVector> phi0_functionals;
    for (auto i : dec.phi0) phi0_functionals.push_back(phi[i]);
    dec.w_basis = compute_w(phi0_functionals, phi.dim());
    dec.u_basis = orthogonal_complement(dec.w_basis, phi.dim(), metric);
    return dec;
}

}  // namespace eqtk
