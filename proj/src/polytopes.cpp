#include "eqtk/polytopes.hpp"

#include "eqtk/errors.hpp"
#include "eqtk/exact_linalg.hpp"
#include "eqtk/simplex.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>
#include <string>

namespace eqtk {

HPolytope::HPolytope(std::size_t dim, std::vector<HalfSpace> constraints) : dim_(dim) {
    for (auto& c : constraints) add(std::move(c.normal), std::move(c.offset));
}

void HPolytope::add(RationalVector normal, Rational offset) {
    if (normal.size() != dim_) {
        throw DimensionError("constraint of length " + std::to_string(normal.size()) + " in dimension " +
                             std::to_string(dim_));
    }
    constraints_.push_back(HalfSpace{std::move(normal), std::move(offset)});
}

bool HPolytope::contains(const RationalVector& point) const {
    if (point.size() != dim_) throw DimensionError("point dimension mismatch");
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [&](const HalfSpace& h) { return dot(h.normal, point) >= h.offset; });
}

namespace {

// Calls visit(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        visit(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

RationalVector subtract(const RationalVector& a, const RationalVector& b) {
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Rational factorial(std::size_t n) {
    Rational f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<long long>(i);
    return f;
}

Rational simplex_volume(const std::vector<RationalVector>& simplex) {
    RationalMatrix edges;
    for (std::size_t i = 1; i < simplex.size(); ++i) edges.push_back(subtract(simplex[i], simplex[0]));
    Rational det = determinant(edges);
    if (det < 0) det = -det;
    return det / factorial(edges.size());
}

struct FaceLattice {
    std::vector<RationalVector> verts;
    std::vector<std::vector<std::size_t>> tight;  // per constraint: sorted vertex indices on it
};

FaceLattice face_lattice(const HPolytope& p) {
    FaceLattice f;
    f.verts = vertices(p);
    for (const auto& h : p.constraints()) {
        std::vector<std::size_t> on;
        for (std::size_t v = 0; v < f.verts.size(); ++v) {
            if (dot(h.normal, f.verts[v]) == h.offset) on.push_back(v);
        }
        f.tight.push_back(std::move(on));
    }
    return f;
}

void pull(const FaceLattice& f, const std::vector<std::size_t>& face, int face_dim,
          std::vector<std::vector<std::size_t>>& out) {
    if (face_dim == 0) {
        out.push_back({face.front()});
        return;
    }
    const std::size_t apex = face.front();
    std::set<std::vector<std::size_t>> facets;
    for (const auto& on : f.tight) {
        std::vector<std::size_t> sub;
        std::set_intersection(face.begin(), face.end(), on.begin(), on.end(), std::back_inserter(sub));
        if (sub.size() < static_cast<std::size_t>(face_dim) || sub.size() == face.size()) continue;
        if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
        facets.insert(std::move(sub));
    }
    for (const auto& facet : facets) {
        std::vector<RationalVector> pts;
        for (auto v : facet) pts.push_back(f.verts[v]);
        if (affine_rank(pts) != face_dim - 1) continue;
        std::vector<std::vector<std::size_t>> sub;
        pull(f, facet, face_dim - 1, sub);
        for (auto& s : sub) {
            s.push_back(apex);
            out.push_back(std::move(s));
        }
    }
}

bool feasible(const HPolytope& p) {
    LinearProgram lp(p.dim());
    std::fill(lp.is_free.begin(), lp.is_free.end(), true);
    for (const auto& h : p.constraints()) lp.add_row(h.normal, Relation::GreaterEq, h.offset);
    return maximize(lp).status == LpStatus::Optimal;
}

// No nonzero x with A x >= 0: rows positively span and have full rank.
bool recession_cone_trivial(const HPolytope& p) {
    const auto& cs = p.constraints();
    RationalMatrix normals;
    for (const auto& h : cs) normals.push_back(h.normal);
    if (rank(normals, p.dim()) < p.dim()) return false;
    LinearProgram lp(cs.size());
    for (std::size_t k = 0; k < p.dim(); ++k) {
        RationalVector row(cs.size());
        for (std::size_t i = 0; i < cs.size(); ++i) row[i] = cs[i].normal[k];
        lp.add_row(std::move(row), Relation::Equal, 0);
    }
    for (std::size_t i = 0; i < cs.size(); ++i) {
        RationalVector row(cs.size(), Rational(0));
        row[i] = 1;
        lp.add_row(std::move(row), Relation::GreaterEq, 1);
    }
    return maximize(lp).status == LpStatus::Optimal;
}

}  // namespace

bool is_empty(const HPolytope& p) { return !feasible(p); }

bool is_bounded(const HPolytope& p) { return feasible(p) && recession_cone_trivial(p); }

std::vector<RationalVector> vertices(const HPolytope& p) {
    if (!feasible(p)) return {};
    if (!recession_cone_trivial(p)) throw UnboundedError("polytope is unbounded");
    const auto& cs = p.constraints();
    std::set<RationalVector> found;
    for_each_subset(cs.size(), p.dim(), [&](const std::vector<std::size_t>& idx) {
        RationalMatrix a;
        RationalVector b;
        for (auto i : idx) {
            a.push_back(cs[i].normal);
            b.push_back(cs[i].offset);
        }
        auto x = solve_square(std::move(a), std::move(b));
        if (x && p.contains(*x)) found.insert(std::move(*x));
    });
    return {found.begin(), found.end()};
}

std::vector<std::vector<RationalVector>> triangulate(const HPolytope& p) {
    const FaceLattice f = face_lattice(p);
    std::vector<std::vector<RationalVector>> out;
    if (f.verts.empty() || affine_rank(f.verts) < static_cast<int>(p.dim())) return out;
    std::vector<std::size_t> all(f.verts.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::vector<std::size_t>> simplices;
    pull(f, all, static_cast<int>(p.dim()), simplices);
    for (const auto& s : simplices) {
        std::vector<RationalVector> pts;
        for (auto v : s) pts.push_back(f.verts[v]);
        out.push_back(std::move(pts));
    }
    return out;
}

Rational volume(const HPolytope& p) {
    Rational total = 0;
    for (const auto& s : triangulate(p)) total += simplex_volume(s);
    return total;
}

VertexHull convex_hull(std::size_t dim, const std::vector<RationalVector>& points) {
    std::set<RationalVector> unique(points.begin(), points.end());
    std::vector<RationalVector> pts(unique.begin(), unique.end());
    VertexHull hull{dim, {}};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].size() != dim) throw DimensionError("hull point dimension mismatch");
        // is pts[i] a convex combination of the others?
        const std::size_t others = pts.size() - 1;
        if (others == 0) {
            hull.points.push_back(pts[i]);
            continue;
        }
        LinearProgram lp(others);
        for (std::size_t k = 0; k < dim; ++k) {
            RationalVector row;
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (j != i) row.push_back(pts[j][k]);
            }
            lp.add_row(std::move(row), Relation::Equal, pts[i][k]);
        }
        lp.add_row(RationalVector(others, Rational(1)), Relation::Equal, 1);
        if (maximize(lp).status != LpStatus::Optimal) hull.points.push_back(pts[i]);
    }
    return hull;
}

VertexHull project(const HPolytope& p, const std::vector<RationalVector>& basis) {
    for (const auto& b : basis) {
        if (b.size() != p.dim()) throw DimensionError("projection basis vector has wrong length");
    }
    const std::size_t k = basis.size();
    if (rank(basis, p.dim()) != k) throw DomainError("projection basis is linearly dependent");
    RationalMatrix gram(k, RationalVector(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
    }
    std::vector<RationalVector> images;
    for (const auto& v : vertices(p)) {
        RationalVector rhs(k);
        for (std::size_t i = 0; i < k; ++i) rhs[i] = dot(basis[i], v);
        images.push_back(*solve_square(gram, rhs));
    }
    return convex_hull(k, images);
}

HPolytope to_hpolytope(const VertexHull& hull) {
    const std::size_t d = hull.dim;
    if (affine_rank(hull.points) != static_cast<int>(d)) {
        throw DomainError("hull is not full-dimensional");
    }
    HPolytope out(d);
    std::set<std::pair<RationalVector, Rational>> seen;
    for_each_subset(hull.points.size(), d, [&](const std::vector<std::size_t>& idx) {
        RationalMatrix diffs;
        for (std::size_t i = 1; i < idx.size(); ++i) diffs.push_back(subtract(hull.points[idx[i]], hull.points[idx[0]]));
        auto normals = nullspace(diffs, d);
        if (normals.size() != 1) return;
        RationalVector n = normals.front();
        Rational off = dot(n, hull.points[idx[0]]);
        bool above = true, below = true;
        for (const auto& q : hull.points) {
            const Rational s = dot(n, q);
            if (s < off) above = false;
            if (s > off) below = false;
        }
        if (!above && !below) return;
        if (!above) {
            for (auto& x : n) x = -x;
            off = -off;
        }
        if (seen.emplace(n, off).second) out.add(n, off);
    });
    return out;
}

Rational volume(const VertexHull& hull) {
    if (affine_rank(hull.points) < static_cast<int>(hull.dim)) return 0;
    return volume(to_hpolytope(hull));
}

bool contains(const HPolytope& outer, const HPolytope& inner) {
    if (outer.dim() != inner.dim()) throw DimensionError("containment between different dimensions");
    const auto vs = vertices(inner);
    return std::all_of(vs.begin(), vs.end(), [&](const RationalVector& v) { return outer.contains(v); });
}

HPolytope omega(const FunctionalSet& phi, const RationalVector& offsets) {
    if (offsets.size() != phi.size()) throw DimensionError("one offset per functional required");
    HPolytope p(phi.dim());
    for (std::size_t i = 0; i < phi.size(); ++i) p.add(phi[i], offsets[i]);
    return p;
}

RationalMatrix projection_matrix(const std::vector<RationalVector>& w_basis, std::size_t dim,
                                 const DiagonalMetric& metric) {
    RationalMatrix proj(dim, RationalVector(dim, Rational(0)));
    const std::size_t k = w_basis.size();
    if (k == 0) return proj;
    RationalMatrix gram(k, RationalVector(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = metric.inner(w_basis[i], w_basis[j]);
    }
    // column e_c maps to sum_i coeff_i w_i with gram * coeff = <w_i, e_c>
    for (std::size_t c = 0; c < dim; ++c) {
        RationalVector unit(dim, Rational(0));
        unit[c] = 1;
        RationalVector rhs(k);
        for (std::size_t i = 0; i < k; ++i) rhs[i] = metric.inner(w_basis[i], unit);
        const RationalVector coeff = *solve_square(gram, rhs);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t r = 0; r < dim; ++r) proj[r][c] += coeff[i] * w_basis[i][r];
        }
    }
    return proj;
}

HPolytope split_polytope(const FunctionalSet& phi, const Decomposition& dec, const RationalVector& offsets,
                         const Rational& omega_value) {
    if (offsets.size() != phi.size()) throw DimensionError("one offset per functional required");
    const std::size_t dim = phi.dim();
    HPolytope out(dim);
    // alpha in phi0 vanishes on W, so alpha(v) = alpha(pi_U v).
    for (auto i : dec.phi0) out.add(phi[i], offsets[i]);
    const RationalMatrix proj = projection_matrix(dec.w_basis, dim, dec.metric);
    IndexSet raised = dec.phi_inf;
    raised.insert(raised.end(), dec.phi1.begin(), dec.phi1.end());
    std::sort(raised.begin(), raised.end());
    for (auto i : raised) {
        RationalVector pulled(dim, Rational(0));
        for (std::size_t c = 0; c < dim; ++c) {
            for (std::size_t r = 0; r < dim; ++r) pulled[c] += phi[i][r] * proj[r][c];
        }
        out.add(std::move(pulled), offsets[i] + omega_value);
    }
    return out;
}

RatioReport ratio_experiment(const FunctionalSet& phi, const Decomposition& dec, const OffsetSchedule& offsets_at,
                             const OmegaRule& omega_rule, const std::vector<std::int64_t>& n_list,
                             double tolerance, unsigned threads) {
    auto compute = [&](std::int64_t n) {
        RatioRow row;
        row.n = n;
        row.omega = omega_rule(n);
        const RationalVector offsets = offsets_at(n);
        const HPolytope full = omega(phi, offsets);
        const HPolytope split = split_polytope(phi, dec, offsets, row.omega);
        row.full_volume = volume(full);
        row.split_volume = volume(split);
        if (row.full_volume == 0) throw DomainError("full polytope has zero volume at n = " + std::to_string(n));
        row.ratio = row.split_volume / row.full_volume;
        row.contained = contains(full, split);
        return row;
    };

    RatioReport report;
    if (threads <= 1) {
        for (auto n : n_list) report.rows.push_back(compute(n));
    } else {
        std::vector<std::future<RatioRow>> futures;
        for (auto n : n_list) futures.push_back(std::async(std::launch::async, compute, n));
        for (auto& f : futures) report.rows.push_back(f.get());
    }
    if (!report.rows.empty()) {
        report.limit_estimate = to_double(report.rows.back().ratio);
        bool monotone = true;
        for (std::size_t i = 1; i < report.rows.size(); ++i) {
            if (report.rows[i].ratio < report.rows[i - 1].ratio) monotone = false;
        }
        report.converges_to_one = monotone && std::abs(report.limit_estimate - 1.0) <= tolerance;
    }
    return report;
}

Rational rounded_sqrt(std::int64_t n, int digits) {
    if (n < 0) throw DomainError("square root of a negative number");
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    const BigInt target = BigInt(n) * scale * scale;
    BigInt root = boost::multiprecision::sqrt(target);
    // nearest integer to sqrt(target): compare target with (root + 1/2)^2
    if (4 * target > (2 * root + 1) * (2 * root + 1)) root += 1;
    return Rational(root) / Rational(scale);
}

}  // namespace eqtk
