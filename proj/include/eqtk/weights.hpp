#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace eqtk {

/// Integer covector on the Lie algebra of a split torus, in a fixed basis of the character lattice.
class Character {
public:
    Character() = default;
    explicit Character(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}

    static Character zero(std::size_t rank) { return Character(std::vector<std::int64_t>(rank, 0)); }

    std::size_t rank() const { return coords_.size(); }
    const std::vector<std::int64_t>& coords() const { return coords_; }
    std::int64_t operator[](std::size_t i) const { return coords_[i]; }

    Character operator+(const Character& other) const;
    Character operator-() const;
    Character operator-(const Character& other) const { return *this + (-other); }

    auto operator<=>(const Character&) const = default;

private:
    std::vector<std::int64_t> coords_;
};

/// Weights of a split-torus representation, as a multiset of characters.
///
/// Entries are merged and kept sorted lexicographically, so two systems
/// compare equal exactly when they are isomorphic representations.
class WeightSystem {
public:
    explicit WeightSystem(std::size_t rank);
    WeightSystem(std::size_t rank, const std::vector<std::pair<Character, std::uint64_t>>& entries);

    /// The trivial one-dimensional representation.
    static WeightSystem trivial(std::size_t rank);

    void add(const Character& character, std::uint64_t multiplicity = 1);

    std::size_t rank() const { return rank_; }
    std::uint64_t dimension() const;
    std::uint64_t multiplicity(const Character& character) const;
    const std::map<Character, std::uint64_t>& entries() const { return entries_; }

    /// Every weight repeated by its multiplicity, in sorted order.
    std::vector<Character> expanded() const;

    /// Sum of all weights counted with multiplicity.
    Character total_weight() const;

    bool operator==(const WeightSystem&) const = default;

private:
    std::size_t rank_;
    std::map<Character, std::uint64_t> entries_;
};

WeightSystem direct_sum(const WeightSystem& a, const WeightSystem& b);
WeightSystem tensor(const WeightSystem& a, const WeightSystem& b);

/// k-th exterior power. Dimensions up to `kSubsetEnumerationLimit` enumerate
/// k-subsets of the expanded weight list; larger ones expand the generating
/// product prod_w (1 + x T^w)^{m_w} truncated at x^k.
WeightSystem exterior_power(const WeightSystem& a, std::uint64_t k);

inline constexpr std::uint64_t kSubsetEnumerationLimit = 12;

/// Generating-function route of exterior_power, exposed for cross-checking.
WeightSystem exterior_power_generating(const WeightSystem& a, std::uint64_t k);

/// Direct sum of all exterior powers, degree 0 through dimension.
WeightSystem wedge_closure(const WeightSystem& a);

/// Support of the weight multiset.
std::set<Character> phi_of(const WeightSystem& a);

}  // namespace eqtk
