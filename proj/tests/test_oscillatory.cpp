#include "doctest.h"

#include "eqtk/errors.hpp"
#include "eqtk/oscillatory.hpp"

#include <cmath>

using namespace eqtk;

TEST_CASE("cubic bump shape") {
    const BumpFunction f(0, 1, 3);
    CHECK(f(0) == 0);
    CHECK(f(1) == 0);
    CHECK(f(-0.5) == 0);
    CHECK(f(0.5) == doctest::Approx(2.0 / 3.0));  // cardinal cubic B-spline peak
    CHECK(f(0.25) == doctest::Approx(1.0 / 6.0));
    CHECK(f.integral() == doctest::Approx(0.25));
    CHECK(f.integral(0, 1) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(f.integral(0, 0.5) == doctest::Approx(0.125).epsilon(1e-14));
    for (int i = 0; i <= 100; ++i) CHECK(f(i / 100.0) >= 0);
    CHECK_THROWS_AS(BumpFunction(1, 0), DomainError);
    CHECK_THROWS_AS(BumpFunction(0, 1, 0), DomainError);
}

TEST_CASE("oscillatory integral without phase is the plain integral") {
    for (unsigned k : {1u, 2u, 3u, 5u}) {
        const BumpFunction f(-0.3, 1.7, k);
        const auto r = oscillatory_integral(f, 1, 0);
        CHECK(std::abs(r.value - std::complex<double>(f.integral(), 0)) < 1e-8);
        CHECK(std::abs(oscillatory_integral(f, 0, 10).value.real() - f.integral()) < 1e-8);
    }
}

TEST_CASE("oscillatory integral is bounded by the integral of f and decays") {
    const BumpFunction f(0, 1, 3);
    double previous = 1;
    for (std::int64_t n : {10, 100, 1000, 10000}) {
        const auto r = oscillatory_integral(f, 1, n);
        CHECK(std::abs(r.value) <= f.integral() + 1e-8);
        CHECK(r.error_estimate < 1e-8);
        CHECK(std::abs(r.value) < previous);
        previous = std::abs(r.value);
    }
}

TEST_CASE("wrap discrepancy") {
    const auto modes = default_wrap_modes();
    // n = 0: y stays at zero and the m != 0 modes see the plain mean of g
    const BumpFunction g(0, 1, 3);
    const double d0 = wrap_curve_discrepancy(0, {0, 1}, 100000, {{1, g}});
    CHECK(d0 == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(wrap_curve_discrepancy(10000, {0, 1}, 100000, modes) < wrap_curve_discrepancy(10, {0, 1}, 100000, modes));
    CHECK(wrap_curve_discrepancy(10000, {0, 1}, 100000, {{0, g}}) < 1e-3);
    CHECK_THROWS_AS(wrap_curve_discrepancy(10, {0, 1}, 10, modes), DomainError);
}
