#include "doctest.h"
#include "oracles.hpp"

#include "eqtk/errors.hpp"
#include "eqtk/lattice.hpp"

#include <random>

using namespace eqtk;

namespace {

Eigen::MatrixXd random_well_conditioned(std::mt19937_64& rng, Eigen::Index m, double max_cond) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        Eigen::MatrixXd b(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) b(i, j) = u(rng);
        }
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
        const auto s = svd.singularValues();
        if (s(m - 1) > 0 && s(0) / s(m - 1) <= max_cond) return b;
    }
}

}  // namespace

TEST_CASE("shortest vector of simple lattices") {
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
    CHECK(shortest_vector_norm(id) == doctest::Approx(1.0));
    Eigen::MatrixXd skew(2, 2);
    skew << 1, 100, 0, 1;  // same lattice as Z^2
    const auto sv = shortest_vector(skew);
    CHECK(sv.norm == doctest::Approx(1.0));
    CHECK(sv.lower <= 1.0);
    CHECK(sv.upper >= 1.0);
    Eigen::MatrixXd hex(2, 2);
    hex << 1, 0.5, 0, std::sqrt(3.0) / 2;
    CHECK(shortest_vector_norm(hex) == doctest::Approx(1.0));
}

TEST_CASE("shortest vector rejects bad input") {
    CHECK_THROWS_AS(shortest_vector(Eigen::MatrixXd::Zero(2, 2)), SingularMatrixError);
    CHECK_THROWS_AS(shortest_vector(Eigen::MatrixXd::Identity(9, 9)), DomainError);
    CHECK_THROWS_AS(shortest_vector(Eigen::MatrixXd::Identity(2, 3)), DimensionError);
}

TEST_CASE("LLL transform is unimodular") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        const auto b = random_well_conditioned(rng, 4, 50);
        const auto u = lll_transform(b);
        CHECK(std::abs(std::abs(u.cast<double>().determinant()) - 1.0) < 1e-9);
    }
}

TEST_CASE("shortest vector against the box oracle") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 30; ++t) {
        const Eigen::Index m = 1 + t % 4;
        const auto b = random_well_conditioned(rng, m, 5);
        const auto sv = shortest_vector(b);
        const double expect = oracle::shortest_in_box(b, 10);
        CHECK(sv.norm == doctest::Approx(expect).epsilon(1e-12));
        CHECK(sv.lower <= expect);
        CHECK(sv.upper >= expect);
        const auto sup = shortest_vector(b, VectorNorm::Sup);
        CHECK(sup.norm == doctest::Approx(oracle::shortest_in_box(b, 10, true)).epsilon(1e-12));
    }
}

TEST_CASE("omega polytope and Mahler sets") {
    // one rank-one torus acting on two lines by e^{t} and e^{-t}
    WeightLatticeAction act;
    act.rank = 1;
    act.blocks.push_back({Character({1}), Eigen::MatrixXd::Constant(1, 1, 2.0)});
    act.blocks.push_back({Character({-1}), Eigen::MatrixXd::Constant(1, 1, 0.5)});
    const auto p = omega_polytope(act, 1.0);
    // eps = 1 gives t >= -ln 2 and -t >= ln 2, a single point
    const auto verts = vertices(p);
    REQUIRE(verts.size() == 1);
    CHECK(to_double(verts[0][0]) == doctest::Approx(-std::log(2.0)));
    CHECK(mahler_membership(Eigen::MatrixXd::Identity(2, 2), 1.0));
    CHECK_FALSE(mahler_membership(Eigen::MatrixXd::Identity(2, 2) * 0.5, 1.0));
    CHECK_THROWS_AS(omega_polytope(act, 0.0), DomainError);
}

TEST_CASE("parabolic omega") {
    std::vector<ParabolicEntry> data{{"P1", Character({1, 0}), 1.0}, {"P2", Character({0, 1}), 1.0},
                                     {"P3", Character({-1, -1}), 1.0}};
    const auto p = parabolic_omega(data, std::exp(-1.0));
    CHECK(is_bounded(p));
    // triangle t1 >= -1, t2 >= -1, t1 + t2 <= 1 has area 9/2
    CHECK(to_double(volume(p)) == doctest::Approx(4.5).epsilon(1e-9));
    data[0].d_value = 0;
    CHECK_THROWS_AS(parabolic_omega(data, 1.0), DomainError);
}
