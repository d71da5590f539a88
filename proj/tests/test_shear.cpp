#include "doctest.h"

#include "eqtk/errors.hpp"
#include "eqtk/shear.hpp"

#include <random>

using namespace eqtk;

TEST_CASE("identities at zero") {
    CHECK(a_t_matrix(3, 0).isIdentity());
    CHECK(u_v_matrix(Eigen::VectorXd::Zero(2)).isIdentity());
}

TEST_CASE("group laws and Lorentz invariance") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    for (int t = 0; t < 50; ++t) {
        Eigen::VectorXd v(3), w(3);
        for (int i = 0; i < 3; ++i) {
            v(i) = g(rng);
            w(i) = g(rng);
        }
        CHECK((u_v_matrix(v) * u_v_matrix(w) - u_v_matrix(v + w)).cwiseAbs().maxCoeff() < 1e-10);
        const double s = g(rng), r = g(rng);
        CHECK((a_t_matrix(4, s) * a_t_matrix(4, r) - a_t_matrix(4, s + r)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(lorentz_defect(a_t_matrix(4, s) * u_v_matrix(v)) < 1e-10);
    }
}

TEST_CASE("hyperboloid map") {
    Eigen::VectorXd apex = Eigen::VectorXd::Zero(3);
    apex(2) = 1;
    const auto o = hyperboloid_to_halfspace(apex);
    CHECK(o.isApprox(Eigen::Vector2d(0, 1)));
    Eigen::VectorXd off = apex;
    off(0) = 0.1;
    CHECK_THROWS_AS(hyperboloid_to_halfspace(off), DomainError);
    CHECK_THROWS_AS(hyperboloid_to_halfspace(-apex), DomainError);

    // images of distinct points are distinct and lie above the boundary
    std::vector<Eigen::VectorXd> images;
    for (int i = 0; i < 20; ++i) {
        Eigen::VectorXd v(2);
        v << 0.3 * i - 2, 0.1 * i;
        Eigen::VectorXd base = Eigen::VectorXd::Zero(4);
        base(3) = 1;
        const Eigen::VectorXd p = a_t_matrix(3, 0.05 * i) * u_v_matrix(v) * base;
        CHECK(std::abs(lorentz_form(p) + 1) < 1e-9);
        images.push_back(hyperboloid_to_halfspace(p, 1e-9));
        CHECK(images.back()(2) > 0);
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
        for (std::size_t j = i + 1; j < images.size(); ++j) CHECK((images[i] - images[j]).norm() > 1e-9);
    }
}

TEST_CASE("closed form of the sheared orbit point") {
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
    CHECK(sheared_orbit_point(0, zero).isApprox(Eigen::Vector2d(0, 1)));
    Eigen::VectorXd v(2);
    v << 0.6, -0.8;
    for (double t : {-2.0, 0.0, 1.0, 5.0}) {
        CHECK((sheared_orbit_point(t, v) - sheared_orbit_point_by_action(t, v)).cwiseAbs().maxCoeff() < 1e-9);
    }
    // e^t times the point tends to (v, 1) / (1 + |v|^2)
    const Eigen::VectorXd far = sheared_orbit_point(40, v) * std::exp(40.0);
    CHECK(far(2) == doctest::Approx(1 / (1 + v.squaredNorm())).epsilon(1e-9));
    CHECK(far(0) == doctest::Approx(v(0) / (1 + v.squaredNorm())).epsilon(1e-9));
    const auto report = shear_grid_check(v, -3, 3, -2, 2, 20, 3);
    CHECK(report.cells == 400);
    CHECK(report.max_difference < 1e-9);
    CHECK(report.max_lorentz_defect < 1e-10);
}

TEST_CASE("conjugation limit") {
    ShearConfig cfg;
    cfg.n = 2;
    cfg.v = Eigen::VectorXd::Ones(1);
    cfg.lambda = 1;
    cfg.k_list = {1e2, 1e3, 1e4};
    const auto rep = conjugation_limit_check(cfg);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.decreasing);
    CHECK(rep.rows[2].deviation < 1e-3);
    for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) {
        const double rate = rep.rows[i].deviation / rep.rows[i + 1].deviation;
        CHECK(rate >= 5);
        CHECK(rate <= 20);
    }

    cfg.lambda = 0;
    for (const auto& row : conjugation_limit_check(cfg).rows) CHECK(row.deviation == 0);

    cfg.k_list = {0.5};
    CHECK_THROWS_AS(conjugation_limit_check(cfg), DomainError);
    cfg.k_list = {10, 5};
    CHECK_THROWS_AS(conjugation_limit_check(cfg), DomainError);
}
