#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the algorithms they are compared against.

#include "eqtk/exact_linalg.hpp"
#include "eqtk/rational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using eqtk::Rational;
using eqtk::RationalVector;

// target lies in the cone spanned by some linearly independent subset of gens
// (Caratheodory), checked by exact elimination on every subset of size <= dim.
inline bool in_cone(const std::vector<RationalVector>& gens, const RationalVector& target) {
    const std::size_t dim = target.size();
    if (std::all_of(target.begin(), target.end(), [](const Rational& x) { return x == 0; })) return true;
    const std::size_t k = gens.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        std::vector<std::size_t> pick;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask >> i & 1) pick.push_back(i);
        }
        if (pick.size() > dim) continue;
        // rows: coordinates; columns: chosen generators, then the target
        eqtk::RationalMatrix aug(dim, RationalVector(pick.size() + 1));
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < pick.size(); ++c) aug[r][c] = gens[pick[c]][r];
            aug[r][pick.size()] = target[r];
        }
        const auto ech = eqtk::row_reduce(aug, pick.size() + 1);
        if (ech.pivots.size() != pick.size()) continue;  // dependent columns or inconsistent system
        bool independent = true;
        for (std::size_t i = 0; i < pick.size(); ++i) independent = independent && ech.pivots[i] == i;
        if (!independent) continue;
        bool nonneg = true;
        for (std::size_t i = 0; i < pick.size(); ++i) nonneg = nonneg && ech.reduced[i][pick.size()] >= 0;
        if (nonneg) return true;
    }
    return false;
}

// alpha is in phi0 iff -alpha is a nonnegative combination of the other bounded functionals.
inline std::vector<std::size_t> phi0_by_subsets(const std::vector<RationalVector>& phi,
                                                const std::vector<std::size_t>& bounded) {
    std::vector<std::size_t> out;
    for (std::size_t a : bounded) {
        std::vector<RationalVector> others;
        for (std::size_t b : bounded) {
            if (b != a) others.push_back(phi[b]);
        }
        RationalVector neg = phi[a];
        for (auto& x : neg) x = -x;
        if (in_cone(others, neg)) out.push_back(a);
    }
    return out;
}

// min ||B z|| over 0 != z in [-box, box]^m.
inline double shortest_in_box(const Eigen::MatrixXd& b, int box, bool sup_norm = false) {
    const auto m = b.cols();
    std::vector<int> z(static_cast<std::size_t>(m), -box);
    double best = std::numeric_limits<double>::infinity();
    for (;;) {
        if (std::any_of(z.begin(), z.end(), [](int v) { return v != 0; })) {
            Eigen::VectorXd zz(m);
            for (Eigen::Index i = 0; i < m; ++i) zz(i) = z[static_cast<std::size_t>(i)];
            const Eigen::VectorXd v = b * zz;
            best = std::min(best, sup_norm ? v.cwiseAbs().maxCoeff() : v.norm());
        }
        std::size_t i = 0;
        while (i < z.size() && z[i] == box) z[i++] = -box;
        if (i == z.size()) break;
        ++z[i];
    }
    return best;
}

// Integer solutions of a^2 + b c = d^2 with 2a^2 + b^2 + c^2 <= r2, by triple loop.
inline std::uint64_t count_sl2_orbit(std::int64_t d, std::int64_t r2) {
    std::int64_t lim = 0;
    while ((lim + 1) * (lim + 1) <= r2) ++lim;
    std::uint64_t n = 0;
    for (std::int64_t a = -lim; a <= lim; ++a) {
        for (std::int64_t b = -lim; b <= lim; ++b) {
            for (std::int64_t c = -lim; c <= lim; ++c) {
                if (a * a + b * c == d * d && 2 * a * a + b * b + c * c <= r2) ++n;
            }
        }
    }
    return n;
}

// Area of a convex polygon {x : A x >= b} in the plane from all pairwise line intersections.
inline double polygon_area(const std::vector<std::pair<std::array<double, 2>, double>>& halfplanes) {
    std::vector<std::array<double, 2>> pts;
    for (std::size_t i = 0; i < halfplanes.size(); ++i) {
        for (std::size_t j = i + 1; j < halfplanes.size(); ++j) {
            const auto& [a, s] = halfplanes[i];
            const auto& [b, t] = halfplanes[j];
            const double det = a[0] * b[1] - a[1] * b[0];
            if (std::abs(det) < 1e-12) continue;
            const std::array<double, 2> p{(s * b[1] - t * a[1]) / det, (a[0] * t - b[0] * s) / det};
            bool ok = true;
            for (const auto& [n, o] : halfplanes) ok = ok && n[0] * p[0] + n[1] * p[1] >= o - 1e-9;
            if (ok) pts.push_back(p);
        }
    }
    if (pts.size() < 3) return 0;
    double cx = 0, cy = 0;
    for (const auto& p : pts) {
        cx += p[0];
        cy += p[1];
    }
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const auto& p, const auto& q) {
        return std::atan2(p[1] - cy, p[0] - cx) < std::atan2(q[1] - cy, q[0] - cx);
    });
    double area = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        const auto& q = pts[(i + 1) % pts.size()];
        area += p[0] * q[1] - q[0] * p[1];
    }
    return std::abs(area) / 2;
}

struct McVolume {
    double volume;
    double standard_error;
};

// Rejection sampling in an axis-aligned box.
template <typename Inside>
McVolume box_monte_carlo(const std::vector<double>& lo, const std::vector<double>& hi, std::uint64_t samples,
                         std::uint64_t seed, Inside inside) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double box = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) box *= hi[i] - lo[i];
    std::vector<double> x(lo.size());
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < lo.size(); ++i) x[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
        if (inside(x)) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p * box, box * std::sqrt(p * (1 - p) / static_cast<double>(samples))};
}

// Volume of {x : normal . x >= offset for every row} inside the box [lo, hi].
inline McVolume halfspace_monte_carlo(const std::vector<std::vector<double>>& normals,
                                      const std::vector<double>& offsets, const std::vector<double>& lo,
                                      const std::vector<double>& hi, std::uint64_t samples, std::uint64_t seed) {
    return box_monte_carlo(lo, hi, samples, seed, [&](const std::vector<double>& x) {
        for (std::size_t r = 0; r < normals.size(); ++r) {
            double s = 0;
            for (std::size_t i = 0; i < x.size(); ++i) s += normals[r][i] * x[i];
            if (s < offsets[r]) return false;
        }
        return true;
    });
}

}  // namespace oracle
