#include "eqtk/exact_linalg.hpp"

#include "eqtk/errors.hpp"

#include <utility>

namespace eqtk {

RowEchelon row_reduce(RationalMatrix rows, std::size_t cols) {
    for (const auto& r : rows) {
        if (r.size() != cols) throw DimensionError("row length does not match column count");
    }
    RowEchelon out;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < cols && lead_row < rows.size(); ++c) {
        std::size_t pivot = lead_row;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[lead_row]);
        const Rational inv = Rational(1) / rows[lead_row][c];
        for (auto& x : rows[lead_row]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead_row || rows[r][c] == 0) continue;
            const Rational f = rows[r][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[lead_row][k];
        }
        out.pivots.push_back(c);
        ++lead_row;
    }
    rows.resize(lead_row);
    out.reduced = std::move(rows);
    return out;
}

std::size_t rank(const RationalMatrix& rows, std::size_t cols) {
    return row_reduce(rows, cols).pivots.size();
}

RationalVector primitive(const RationalVector& v) {
    BigInt den_lcm = 1;
    for (const auto& x : v) {
        const BigInt d = boost::multiprecision::denominator(x);
        den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, d) * d;
    }
    BigInt num_gcd = 0;
    for (const auto& x : v) {
        const Rational scaled = x * den_lcm;
        const BigInt n = boost::multiprecision::numerator(scaled);
        num_gcd = boost::multiprecision::gcd(num_gcd, n);
    }
    if (num_gcd == 0) return v;
    RationalVector out;
    out.reserve(v.size());
    const Rational scale = Rational(den_lcm) / Rational(num_gcd);
    for (const auto& x : v) out.push_back(x * scale);
    return out;
}

std::vector<RationalVector> nullspace(const RationalMatrix& rows, std::size_t cols) {
    const RowEchelon ech = row_reduce(rows, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RationalVector v(cols, Rational(0));
        v[free_col] = 1;
        for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
            v[ech.pivots[r]] = -ech.reduced[r][free_col];
        }
        basis.push_back(primitive(v));
    }
    return basis;
}

std::optional<RationalVector> solve_square(RationalMatrix a, RationalVector b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw DimensionError("right-hand side length mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw DimensionError("solve_square needs a square matrix");
        a[i].push_back(b[i]);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a[pivot][c] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    RationalVector x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational s = a[i][n];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

Rational determinant(RationalMatrix a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        if (a[c].size() != n) throw DimensionError("determinant needs a square matrix");
        std::size_t pivot = c;
        while (pivot < n && a[pivot][c] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != c) {
            std::swap(a[pivot], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

int affine_rank(const std::vector<RationalVector>& points) {
    if (points.empty()) return -1;
    RationalMatrix diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        RationalVector d(points[i].size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = points[i][k] - points[0][k];
        diffs.push_back(std::move(d));
    }
    return static_cast<int>(rank(diffs, points[0].size()));
}

}  // namespace eqtk
