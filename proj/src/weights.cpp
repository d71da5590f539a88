#include "eqtk/weights.hpp"

#include "eqtk/errors.hpp"

#include <string>

namespace eqtk {

Character Character::operator+(const Character& other) const {
    if (rank() != other.rank()) throw DimensionError("adding characters of different rank");
    std::vector<std::int64_t> out(coords_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.coords_[i];
    return Character(std::move(out));
}

Character Character::operator-() const {
    std::vector<std::int64_t> out(coords_);
    for (auto& c : out) c = -c;
    return Character(std::move(out));
}

WeightSystem::WeightSystem(std::size_t rank) : rank_(rank) {
    if (rank == 0) throw DomainError("weight system rank must be positive");
}

WeightSystem::WeightSystem(std::size_t rank, const std::vector<std::pair<Character, std::uint64_t>>& entries)
    : WeightSystem(rank) {
    for (const auto& [c, m] : entries) add(c, m);
}

WeightSystem WeightSystem::trivial(std::size_t rank) {
    WeightSystem w(rank);
    w.add(Character::zero(rank), 1);
    return w;
}

void WeightSystem::add(const Character& character, std::uint64_t multiplicity) {
    if (character.rank() != rank_) {
        throw DimensionError("character of rank " + std::to_string(character.rank()) +
                             " added to weight system of rank " + std::to_string(rank_));
    }
    if (multiplicity == 0) throw DomainError("multiplicities must be positive");
    entries_[character] += multiplicity;
}

std::uint64_t WeightSystem::dimension() const {
    std::uint64_t d = 0;
    for (const auto& [c, m] : entries_) d += m;
    return d;
}

std::uint64_t WeightSystem::multiplicity(const Character& character) const {
    auto it = entries_.find(character);
    return it == entries_.end() ? 0 : it->second;
}

std::vector<Character> WeightSystem::expanded() const {
    std::vector<Character> out;
    for (const auto& [c, m] : entries_) out.insert(out.end(), m, c);
    return out;
}

Character WeightSystem::total_weight() const {
    std::vector<std::int64_t> sum(rank_, 0);
    for (const auto& [c, m] : entries_) {
        for (std::size_t i = 0; i < rank_; ++i) sum[i] += c[i] * static_cast<std::int64_t>(m);
    }
    return Character(std::move(sum));
}

namespace {

void require_same_rank(const WeightSystem& a, const WeightSystem& b) {
    if (a.rank() != b.rank()) {
        throw DimensionError("rank mismatch: " + std::to_string(a.rank()) + " vs " + std::to_string(b.rank()));
    }
}

void enumerate_subsets(const std::vector<Character>& weights, std::size_t start, std::uint64_t remaining,
                       const Character& partial, WeightSystem& out) {
    if (remaining == 0) {
        out.add(partial, 1);
        return;
    }
    for (std::size_t i = start; i + remaining <= weights.size(); ++i) {
        enumerate_subsets(weights, i + 1, remaining - 1, partial + weights[i], out);
    }
}

// binomial(n, j) for the small multiplicities that occur in practice
std::uint64_t binomial(std::uint64_t n, std::uint64_t j) {
    if (j > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= j; ++i) r = r * (n - j + i) / i;
    return r;
}

}  // namespace

WeightSystem direct_sum(const WeightSystem& a, const WeightSystem& b) {
    require_same_rank(a, b);
    WeightSystem out = a;
    for (const auto& [c, m] : b.entries()) out.add(c, m);
    return out;
}

WeightSystem tensor(const WeightSystem& a, const WeightSystem& b) {
    require_same_rank(a, b);
    WeightSystem out(a.rank());
    for (const auto& [ca, ma] : a.entries()) {
        for (const auto& [cb, mb] : b.entries()) out.add(ca + cb, ma * mb);
    }
    return out;
}

WeightSystem exterior_power_generating(const WeightSystem& a, std::uint64_t k) {
    if (k > a.dimension()) throw DomainError("exterior power degree exceeds dimension");
    // layers[j] is the weight multiset of the degree-j part of the partial product.
    std::vector<std::map<Character, std::uint64_t>> layers(k + 1);
    layers[0][Character::zero(a.rank())] = 1;
    for (const auto& [w, m] : a.entries()) {
        std::vector<std::map<Character, std::uint64_t>> next(k + 1);
        for (std::uint64_t deg = 0; deg <= k; ++deg) {
            for (const auto& [c, mult] : layers[deg]) {
                // (1 + x T^w)^m contributes binomial(m, j) x^j T^{j w}
                Character shifted = c;
                for (std::uint64_t j = 0; j <= m && deg + j <= k; ++j) {
                    next[deg + j][shifted] += mult * binomial(m, j);
                    shifted = shifted + w;
                }
            }
        }
        layers = std::move(next);
    }
    WeightSystem out(a.rank());
    for (const auto& [c, mult] : layers[k]) out.add(c, mult);
    return out;
}

WeightSystem exterior_power(const WeightSystem& a, std::uint64_t k) {
    const std::uint64_t dim = a.dimension();
    if (k > dim) throw DomainError("exterior power degree " + std::to_string(k) + " exceeds dimension " +
                                   std::to_string(dim));
    if (dim > kSubsetEnumerationLimit) return exterior_power_generating(a, k);
    WeightSystem out(a.rank());
    enumerate_subsets(a.expanded(), 0, k, Character::zero(a.rank()), out);
    return out;
}

WeightSystem wedge_closure(const WeightSystem& a) {
    WeightSystem out(a.rank());
    for (std::uint64_t k = 0; k <= a.dimension(); ++k) out = direct_sum(out, exterior_power(a, k));
    return out;
}

std::set<Character> phi_of(const WeightSystem& a) {
    std::set<Character> out;
    for (const auto& [c, m] : a.entries()) out.insert(c);
    return out;
}

}  // namespace eqtk
