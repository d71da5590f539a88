#include "eqtk/simplex.hpp"

#include "eqtk/errors.hpp"
#include "eqtk/exact_linalg.hpp"

#include <optional>
#include <utility>

namespace eqtk {

void LinearProgram::add_row(RationalVector coeffs, Relation relation, Rational rhs) {
    if (coeffs.size() != num_vars) throw DimensionError("LP row has wrong number of coefficients");
    rows.push_back(Row{std::move(coeffs), relation, std::move(rhs)});
}

namespace {

class Tableau {
public:
    Tableau(RationalMatrix rows, std::vector<std::size_t> basis)
        : rows_(std::move(rows)), basis_(std::move(basis)) {}

    /// Runs Bland's-rule iterations on `cost` (reduced costs over all columns + value slot).
    /// Returns false when the objective is unbounded.
    bool optimize(RationalVector& cost, const std::vector<bool>& allowed) {
        const std::size_t rhs = cost.size() - 1;
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < rhs; ++j) {
                if (allowed[j] && cost[j] > 0) {
                    entering = j;
                    break;
                }
            }
            if (!entering) return true;
            std::optional<std::size_t> leaving;
            Rational best_ratio;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][*entering] <= 0) continue;
                Rational ratio = rows_[i][rhs] / rows_[i][*entering];
                if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (!leaving) return false;
            pivot(*leaving, *entering, cost);
        }
    }

    void pivot(std::size_t r, std::size_t c, RationalVector& cost) {
        const Rational inv = Rational(1) / rows_[r][c];
        for (auto& x : rows_[r]) x *= inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || rows_[i][c] == 0) continue;
            const Rational f = rows_[i][c];
            for (std::size_t k = 0; k < rows_[i].size(); ++k) rows_[i][k] -= f * rows_[r][k];
        }
        if (cost[c] != 0) {
            const Rational f = cost[c];
            for (std::size_t k = 0; k < cost.size(); ++k) cost[k] -= f * rows_[r][k];
        }
        basis_[r] = c;
    }

    void drop_row(std::size_t r) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    }

    RationalMatrix& rows() { return rows_; }
    std::vector<std::size_t>& basis() { return basis_; }

private:
    RationalMatrix rows_;
    std::vector<std::size_t> basis_;
};

// cost row for maximizing c.x given the current basis: r_j = c_j - c_B . T_j, slot rhs = -c_B . b
RationalVector reduced_costs(const RationalVector& c, Tableau& t) {
    RationalVector cost = c;
    for (std::size_t i = 0; i < t.rows().size(); ++i) {
        const Rational cb = c[t.basis()[i]];
        if (cb == 0) continue;
        for (std::size_t k = 0; k < cost.size(); ++k) cost[k] -= cb * t.rows()[i][k];
    }
    return cost;
}

}  // namespace

LpSolution maximize(const LinearProgram& lp) {
    // Column layout: [split structural vars | slack/surplus | artificial | rhs]
    std::vector<std::size_t> pos_col(lp.num_vars), neg_col(lp.num_vars, SIZE_MAX);
    std::size_t ncols = 0;
    for (std::size_t v = 0; v < lp.num_vars; ++v) {
        pos_col[v] = ncols++;
        if (lp.is_free[v]) neg_col[v] = ncols++;
    }
    const std::size_t structural = ncols;
    const std::size_t m = lp.rows.size();

    std::vector<Relation> rel(m);
    std::vector<Rational> rhs(m);
    std::vector<RationalVector> coeffs(m);
    std::size_t slack_count = 0;
    for (std::size_t i = 0; i < m; ++i) {
        coeffs[i] = lp.rows[i].coeffs;
        rel[i] = lp.rows[i].relation;
        rhs[i] = lp.rows[i].rhs;
        if (rhs[i] < 0) {
            for (auto& x : coeffs[i]) x = -x;
            rhs[i] = -rhs[i];
            if (rel[i] == Relation::LessEq) rel[i] = Relation::GreaterEq;
            else if (rel[i] == Relation::GreaterEq) rel[i] = Relation::LessEq;
        }
        if (rel[i] != Relation::Equal) ++slack_count;
    }
    std::size_t artificial_count = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (rel[i] != Relation::LessEq) ++artificial_count;
    }
    const std::size_t first_artificial = structural + slack_count;
    const std::size_t total = first_artificial + artificial_count;

    RationalMatrix rows(m, RationalVector(total + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    std::size_t next_slack = structural;
    std::size_t next_art = first_artificial;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t v = 0; v < lp.num_vars; ++v) {
            rows[i][pos_col[v]] = coeffs[i][v];
            if (neg_col[v] != SIZE_MAX) rows[i][neg_col[v]] = -coeffs[i][v];
        }
        rows[i][total] = rhs[i];
        if (rel[i] == Relation::LessEq) {
            rows[i][next_slack] = 1;
            basis[i] = next_slack++;
        } else {
            if (rel[i] == Relation::GreaterEq) rows[i][next_slack++] = -1;
            rows[i][next_art] = 1;
            basis[i] = next_art++;
        }
    }

    Tableau tab(std::move(rows), std::move(basis));
    std::vector<bool> allowed(total, true);

    LpSolution out;
    if (artificial_count > 0) {
        RationalVector phase1(total + 1, Rational(0));
        for (std::size_t j = first_artificial; j < total; ++j) phase1[j] = -1;
        RationalVector cost = reduced_costs(phase1, tab);
        tab.optimize(cost, allowed);
        // cost[total] holds -(objective value); phase-one optimum must be zero.
        if (cost[total] != 0) {
            out.status = LpStatus::Infeasible;
            return out;
        }
        // Pivot zero-level artificials out of the basis, dropping redundant rows.
        for (std::size_t i = 0; i < tab.rows().size();) {
            if (tab.basis()[i] < first_artificial) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < first_artificial; ++j) {
                if (tab.rows()[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col) {
                tab.pivot(i, *col, cost);
                ++i;
            } else {
                tab.drop_row(i);
            }
        }
        for (std::size_t j = first_artificial; j < total; ++j) allowed[j] = false;
    }

    RationalVector phase2(total + 1, Rational(0));
    for (std::size_t v = 0; v < lp.num_vars; ++v) {
        phase2[pos_col[v]] = lp.objective[v];
        if (neg_col[v] != SIZE_MAX) phase2[neg_col[v]] = -lp.objective[v];
    }
    RationalVector cost = reduced_costs(phase2, tab);
    if (!tab.optimize(cost, allowed)) {
        out.status = LpStatus::Unbounded;
        return out;
    }

    RationalVector values(total, Rational(0));
    for (std::size_t i = 0; i < tab.rows().size(); ++i) values[tab.basis()[i]] = tab.rows()[i][total];
    out.status = LpStatus::Optimal;
    out.value = -cost[total];
    out.x.assign(lp.num_vars, Rational(0));
    for (std::size_t v = 0; v < lp.num_vars; ++v) {
        out.x[v] = values[pos_col[v]];
        if (neg_col[v] != SIZE_MAX) out.x[v] -= values[neg_col[v]];
    }
    return out;
}

}  // namespace eqtk
