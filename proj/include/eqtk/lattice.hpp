#pragma once

#include "eqtk/polytopes.hpp"
#include "eqtk/weights.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace eqtk {

enum class VectorNorm { Euclidean, Sup };

struct ShortestVector {
    double norm = 0.0;
    std::vector<std::int64_t> z;  // a minimizer: norm == ||B z||
    double lower = 0.0;           // certified interval containing the true minimum
    double upper = 0.0;
    std::size_t candidates = 0;   // lattice vectors examined inside the enumeration radius
};

/// Minimum of ||B z|| over nonzero integer z, for invertible B of size <= 8.
///
/// LLL reduction gives an enumeration radius; Fincke-Pohst enumeration over the
/// reduced basis (radius inflated past floating-point error) collects every
/// candidate, and each candidate norm carries a rounding-error bound.
ShortestVector shortest_vector(const Eigen::MatrixXd& basis, VectorNorm norm = VectorNorm::Euclidean);

double shortest_vector_norm(const Eigen::MatrixXd& basis, VectorNorm norm = VectorNorm::Euclidean);

/// Floating LLL (delta = 0.99) on the columns of `basis`; returns the unimodular transform U
/// such that basis * U is reduced.
Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> lll_transform(const Eigen::MatrixXd& basis,
                                                                          double delta = 0.99);

/// Restriction of g to one weight space V_alpha, with V_alpha(Z) = Z^m.
struct WeightBlock {
    Character character;
    Eigen::MatrixXd action;
};

struct WeightLatticeAction {
    std::size_t rank = 0;
    std::vector<WeightBlock> blocks;

    void validate() const;
};

/// {t : d alpha(t) >= ln eps - ln min ||g v|| over nonzero v in V_alpha(Z)}, one constraint per
/// character in `phi_subset` (all characters when the subset is empty).
HPolytope omega_polytope(const WeightLatticeAction& act, double epsilon, const std::set<Character>& phi_subset = {},
                         VectorNorm norm = VectorNorm::Euclidean);

/// The lattice g Z^n lies in the Mahler set K_eta.
bool mahler_membership(const Eigen::MatrixXd& full_action, double eta, VectorNorm norm = VectorNorm::Euclidean);

struct ParabolicEntry {
    std::string label;
    Character character;
    double d_value = 1.0;
};

/// {t : d alpha_P(t) >= ln eps - ln d_P(g)} over the parabolic labels.
HPolytope parabolic_omega(const std::vector<ParabolicEntry>& data, double epsilon);

}  // namespace eqtk
