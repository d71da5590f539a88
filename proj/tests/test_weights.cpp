#include "doctest.h"

#include "eqtk/errors.hpp"
#include "eqtk/weights.hpp"

#include <random>

using namespace eqtk;

namespace {

Character ch(std::vector<std::int64_t> c) { return Character(std::move(c)); }

WeightSystem standard_sl3() {
    // weights e1, e2, e3 of the standard representation of the diagonal torus of GL3
    WeightSystem w(3);
    w.add(ch({1, 0, 0}));
    w.add(ch({0, 1, 0}));
    w.add(ch({0, 0, 1}));
    return w;
}

WeightSystem random_system(std::mt19937_64& rng, std::size_t rank, std::size_t dim) {
    std::uniform_int_distribution<int> coord(-2, 2);
    WeightSystem w(rank);
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<std::int64_t> c(rank);
        for (auto& x : c) x = coord(rng);
        w.add(Character(c));
    }
    return w;
}

}  // namespace

TEST_CASE("characters form an abelian group") {
    const auto a = ch({1, -2}), b = ch({3, 5}), c = ch({-1, 0});
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + Character::zero(2) == a);
    CHECK(a + (-a) == Character::zero(2));
    CHECK(a - b == ch({-2, -7}));
}

TEST_CASE("weight systems merge multiplicities") {
    WeightSystem w(1);
    w.add(ch({2}));
    w.add(ch({2}), 3);
    CHECK(w.entries().size() == 1);
    CHECK(w.multiplicity(ch({2})) == 4);
    CHECK(w.dimension() == 4);
    CHECK_THROWS(w.add(ch({1, 1})));
    CHECK_THROWS(w.add(ch({1}), 0));
}

TEST_CASE("direct sum and tensor") {
    const auto v = standard_sl3();
    CHECK(direct_sum(v, v).dimension() == 6);
    const auto t = tensor(v, v);
    CHECK(t.dimension() == 9);
    CHECK(t.multiplicity(ch({1, 1, 0})) == 2);
    CHECK(t.multiplicity(ch({2, 0, 0})) == 1);
    CHECK(tensor(v, WeightSystem::trivial(3)) == v);
    CHECK_THROWS_AS(direct_sum(v, WeightSystem::trivial(2)), DimensionError);
    CHECK_THROWS_AS(tensor(v, WeightSystem::trivial(2)), DimensionError);
}

TEST_CASE("exterior powers of the standard representation") {
    const auto v = standard_sl3();
    CHECK(exterior_power(v, 0) == WeightSystem::trivial(3));
    CHECK(exterior_power(v, 1) == v);
    const auto w2 = exterior_power(v, 2);
    CHECK(w2.dimension() == 3);
    CHECK(w2.multiplicity(ch({1, 1, 0})) == 1);
    const auto w3 = exterior_power(v, 3);
    CHECK(w3.dimension() == 1);
    CHECK(w3.multiplicity(ch({1, 1, 1})) == 1);
    CHECK_THROWS_AS(exterior_power(v, 4), DomainError);
    // top power carries the total weight
    CHECK(exterior_power(v, 3).entries().begin()->first == v.total_weight());
    CHECK(wedge_closure(v).dimension() == 8);
}

TEST_CASE("exterior power: subset enumeration agrees with the generating product") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const auto w = random_system(rng, 2, 3 + trial % 8);
        for (std::uint64_t k = 0; k <= w.dimension(); ++k) {
            CHECK(exterior_power(w, k) == exterior_power_generating(w, k));
        }
    }
}

TEST_CASE("exterior power dimensions are binomial") {
    std::mt19937_64 rng(11);
    const auto w = random_system(rng, 2, 16);  // above the enumeration limit
    std::uint64_t binom = 1;
    for (std::uint64_t k = 0; k <= 16; ++k) {
        CHECK(exterior_power(w, k).dimension() == binom);
        binom = binom * (16 - k) / (k + 1);
    }
}

TEST_CASE("phi of a representation is its weight support") {
    const auto t = tensor(standard_sl3(), standard_sl3());
    CHECK(phi_of(t).size() == 6);
    const auto w = wedge_closure(standard_sl3());
    CHECK(phi_of(w).count(Character::zero(3)) == 1);
}
