#pragma once

#include "eqtk/rational.hpp"

#include <cstddef>
#include <vector>

namespace eqtk {

enum class Relation { LessEq, Equal, GreaterEq };

/// maximize objective . x subject to rows; variables are nonnegative unless marked free.
struct LinearProgram {
    struct Row {
        RationalVector coeffs;
        Relation relation = Relation::LessEq;
        Rational rhs = 0;
    };

    explicit LinearProgram(std::size_t vars) : num_vars(vars), is_free(vars, false), objective(vars, Rational(0)) {}

    void add_row(RationalVector coeffs, Relation relation, Rational rhs);

    std::size_t num_vars;
    std::vector<bool> is_free;
    RationalVector objective;
    std::vector<Row> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational value = 0;
    RationalVector x;
};

/// Two-phase dense tableau simplex in exact arithmetic with Bland's anti-cycling rule.
LpSolution maximize(const LinearProgram& lp);

}  // namespace eqtk
