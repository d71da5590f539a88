#include "doctest.h"
#include "oracles.hpp"

#include "eqtk/errors.hpp"
#include "eqtk/polytopes.hpp"

#include <random>

using namespace eqtk;

namespace {

RationalVector rv(std::initializer_list<int> xs) {
    RationalVector v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

HPolytope unit_cube(std::size_t d) {
    HPolytope p(d);
    for (std::size_t i = 0; i < d; ++i) {
        RationalVector e(d, Rational(0));
        e[i] = 1;
        p.add(e, 0);
        e[i] = -1;
        p.add(e, -1);
    }
    return p;
}

FunctionalSet cylinder_example() {
    return FunctionalSet(3, {rv({0, 0, 1}), rv({0, 0, -1}), rv({-1, -1, 0}), rv({1, -1, 0}), rv({0, 1, 0})});
}

RationalVector cylinder_offsets(std::int64_t n) {
    return {Rational(0), Rational(-n), Rational(-1), Rational(-1), Rational(-1)};
}

}  // namespace

TEST_CASE("cube and simplex volumes") {
    for (std::size_t d = 1; d <= 4; ++d) {
        CHECK(volume(unit_cube(d)) == 1);
        CHECK(vertices(unit_cube(d)).size() == (std::size_t{1} << d));
    }
    // standard simplex x_i >= 0, sum <= 1 has volume 1/d!
    HPolytope s(3);
    s.add(rv({1, 0, 0}), 0);
    s.add(rv({0, 1, 0}), 0);
    s.add(rv({0, 0, 1}), 0);
    s.add(rv({-1, -1, -1}), -1);
    CHECK(volume(s) == Rational(1, 6));
    CHECK(triangulate(s).size() == 1);
}

TEST_CASE("emptiness, unboundedness and degenerate cases") {
    HPolytope empty(2);
    empty.add(rv({1, 0}), 1);
    empty.add(rv({-1, 0}), 0);
    CHECK(is_empty(empty));
    CHECK(vertices(empty).empty());
    CHECK(volume(empty) == 0);

    HPolytope ray(2);
    ray.add(rv({1, 0}), 0);
    ray.add(rv({0, 1}), 0);
    CHECK_FALSE(is_bounded(ray));
    CHECK_THROWS_AS(vertices(ray), UnboundedError);

    HPolytope flat = unit_cube(2);
    flat.add(rv({0, -1}), 0);  // y <= 0 squeezes the square to a segment
    CHECK(volume(flat) == 0);
    CHECK(vertices(flat).size() == 2);

    CHECK_THROWS_AS(unit_cube(2).add(rv({1, 0, 0}), 0), DimensionError);
}

TEST_CASE("redundant constraints do not change the volume") {
    HPolytope p = unit_cube(3);
    p.add(rv({1, 1, 1}), -10);
    p.add(rv({1, 0, 0}), 0);
    CHECK(volume(p) == 1);
}

TEST_CASE("hull conversions") {
    const auto verts = vertices(unit_cube(3));
    auto pts = verts;
    pts.push_back({Rational(1, 2), Rational(1, 2), Rational(1, 2)});
    const auto hull = convex_hull(3, pts);
    CHECK(hull.points.size() == 8);
    CHECK(volume(hull) == 1);
    const auto back = to_hpolytope(hull);
    CHECK(volume(back) == 1);
    CHECK(contains(unit_cube(3), back));
    CHECK(contains(back, unit_cube(3)));
}

TEST_CASE("projection onto a coordinate plane") {
    const auto img = project(unit_cube(3), {rv({1, 0, 0}), rv({0, 1, 0})});
    CHECK(img.dim == 2);
    CHECK(volume(img) == 1);
}

TEST_CASE("cylinder example: triangle base, closed-form split ratio") {
    const auto phi = cylinder_example();
    std::vector<OffsetTag> schedule{Rational(0), Diverges{}, Rational(-1), Rational(-1), Rational(-1)};
    const auto dec = classify_sequence(phi, schedule);
    for (std::int64_t n : {4, 9, 100, 10000}) {
        const auto full = omega(phi, cylinder_offsets(n));
        CHECK(volume(full) == 4 * n);
        const Rational w = rounded_sqrt(n);
        CHECK(w * w == n);
        const auto split = split_polytope(phi, dec, cylinder_offsets(n), w);
        CHECK(contains(full, split));
        CHECK(volume(split) / volume(full) == (Rational(n) - 2 * w) / n);
    }
}

TEST_CASE("ratio experiment on the cylinder example") {
    const auto phi = cylinder_example();
    std::vector<OffsetTag> schedule{Rational(0), Diverges{}, Rational(-1), Rational(-1), Rational(-1)};
    const auto dec = classify_sequence(phi, schedule);
    const auto report = ratio_experiment(phi, dec, cylinder_offsets, [](std::int64_t n) { return rounded_sqrt(n); },
                                         {100, 1000, 10000}, 0.05, 2);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0].ratio == Rational(4, 5));
    CHECK(report.rows[2].ratio == Rational(49, 50));
    CHECK(std::abs(to_double(report.rows[1].ratio) - 0.93675) < 1e-5);
    for (const auto& r : report.rows) CHECK(r.contained);
    CHECK(report.converges_to_one);
}

TEST_CASE("rounded square roots") {
    CHECK(rounded_sqrt(16) == 4);
    CHECK(rounded_sqrt(2) == Rational(1414213562, 1000000000));
    CHECK_THROWS_AS(rounded_sqrt(-1), DomainError);
}

TEST_CASE("volume against rejection sampling") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> off(-3, -1);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t d = 2 + trial % 3;
        // -1 <= x_i <= 1 cut by random half-spaces that keep the origin
        const HPolytope cube = unit_cube(d);
        HPolytope q(d);
        for (const auto& h : cube.constraints()) q.add(h.normal, Rational(-1));
        for (int extra = 0; extra < 3; ++extra) {
            RationalVector n(d);
            for (auto& x : n) x = coef(rng);
            q.add(n, Rational(off(rng), 2));
        }
        const double exact = to_double(volume(q));
        std::vector<double> lo(d, -1.0), hi(d, 1.0);
        std::vector<std::vector<double>> normals;
        std::vector<double> offsets;
        for (const auto& h : q.constraints()) {
            normals.emplace_back();
            for (const auto& c : h.normal) normals.back().push_back(to_double(c));
            offsets.push_back(to_double(h.offset));
        }
        const auto mc = oracle::halfspace_monte_carlo(normals, offsets, lo, hi, 200000, 5 + trial);
        CHECK(std::abs(exact - mc.volume) <= 4 * mc.standard_error + 1e-12);
    }
}
