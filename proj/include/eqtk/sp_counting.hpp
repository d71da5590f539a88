#pragma once

#include "eqtk/exact_linalg.hpp"
#include "eqtk/polytopes.hpp"
#include "eqtk/weights.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace eqtk {

/// p(t) = prod_i (t^2 - d_i^2) with distinct positive integers d_i.
struct SymplecticSpec {
    SymplecticSpec(std::size_t n, std::vector<std::int64_t> d);

    std::size_t n;
    std::vector<std::int64_t> d;
};

/// Completed zeta function pi^{-z/2} Gamma(z/2) zeta(z), z > 1.
double xi(double z);

/// Lebesgue volume of the unit ball in R^n.
double unit_ball_volume(unsigned n);

/// [[0, J_N], [-J_N, 0]] with J_N the N x N antidiagonal of ones.
RationalMatrix symplectic_form(std::size_t n);

/// X^T J + J X = 0. Throws DimensionError unless X is 2N x 2N.
bool in_lie_algebra(const RationalMatrix& x, std::size_t n);

/// Coefficients of det(t I - X), constant term first.
RationalVector characteristic_polynomial(const RationalMatrix& x);

/// Coefficients of prod (t^2 - d_i^2), constant term first.
RationalVector target_polynomial(const SymplecticSpec& spec);

/// Integral, in sp_2N, with det(t I - X) = p(t).
bool in_variety(const RationalMatrix& x, const SymplecticSpec& spec);

/// diag(d_1, ..., d_N, -d_N, ..., -d_1)
RationalMatrix base_point(const SymplecticSpec& spec);

/// I = J + {2N+1-j' : j' in J'} with J, J' disjoint subsets of {1..N}; 1-based indices.
struct IsotropicSet {
    std::vector<int> indices;
    std::vector<int> j;
    std::vector<int> j_prime;

    bool operator==(const IsotropicSet&) const = default;
};

/// All nonempty isotropic coordinate subsets, 3^N - 1 of them, ordered by size then lexicographically.
std::vector<IsotropicSet> isotropic_subsets(std::size_t n);

/// Validates and decomposes a sorted index set; throws DomainError if it is not isotropic.
IsotropicSet isotropic_from_indices(std::vector<int> indices, std::size_t n);

/// sum over lambda of (i_lambda - lambda).
std::int64_t c_of(const IsotropicSet& set);

/// Torus weight of e_I: +1 at J, -1 at J'.
Character weight_of(const IsotropicSet& set, std::size_t n);

/// {t in R^N : <weight_of(I), t> >= -c_I for every isotropic I}.
HPolytope c1_polytope(std::size_t n);

/// 2^{(N^2+N)/2 - 1} / prod_k xi(2k)
double torus_measure_normalization(std::size_t n);

struct C1Result {
    Rational polytope_volume;
    double normalization = 0;
    double value = 0;
};

C1Result constant_c1(std::size_t n);

/// |prod_{i<j} (d_j - d_i) prod_{i<=j} (d_j + d_i)|
BigInt jacobian_divisor(const SymplecticSpec& spec);

/// Lebesgue volume of 2 sum y^2 + 2 sum_{off antidiagonal} z^2 + sum_{antidiagonal} z^2 <= 1 in R^{N^2}.
double quadric_volume(std::size_t n);

double constant_c2(const SymplecticSpec& spec);

/// C1 C2 R^{N^2} (ln R)^N
double asymptotic_count(const SymplecticSpec& spec, double radius);

struct CountEntry {
    double radius = 0;
    std::uint64_t count = 0;
    double expected = 0;        // N_R
    double fitted_constant = 0; // count / (R^{N^2} (ln R)^N)
};

/// Number of integer [[a, b], [c, -a]] with a^2 + bc = d^2 and 2a^2 + b^2 + c^2 <= R^2.
CountEntry count_points_n1(const SymplecticSpec& spec, double radius, unsigned threads = 1);

std::vector<CountEntry> count_series_n1(const SymplecticSpec& spec, const std::vector<double>& radii,
                                        unsigned threads = 1);

/// Free coordinates of the unipotent orbit U.x0: strict upper entries y of the
/// top-left block and the persymmetric top-right block Z (positions r + s <= N + 1).
class OrbitCoordinates {
public:
    explicit OrbitCoordinates(const SymplecticSpec& spec);

    struct Slot {
        bool is_y;
        int row;  // 0-based within the N x N block
        int col;
        double weight;  // coefficient in the squared Frobenius norm
    };

    std::size_t size() const { return slots_.size(); }
    const std::vector<Slot>& slots() const { return slots_; }

    /// X = [[Y, Z], [0, -J Y^T J]] for the given coordinate values.
    Eigen::MatrixXd matrix(const std::vector<double>& values) const;

    /// Squared Frobenius norm of matrix(values).
    double frobenius_sq(const std::vector<double>& values) const;

    /// Indices of the simple-root slots y_{i,i+1} and Z_{N,1}.
    const std::vector<std::size_t>& simple_root_slots() const { return simple_; }

    double diagonal_sq() const { return diag_sq_; }

private:
    SymplecticSpec spec_;
    std::vector<Slot> slots_;
    std::vector<std::size_t> simple_;
    double diag_sq_ = 0;
};

struct QuadricMonteCarlo {
    double volume = 0;
    double standard_error = 0;
};

QuadricMonteCarlo quadric_volume_mc(std::size_t n, std::uint64_t samples, std::uint64_t seed, unsigned threads = 1);

struct BallRatio {
    double ratio_eps = 0;         // mu(B_{R,eps}) / mu(B_R)
    double ratio_normalized = 0;  // mu(B_R) / (C2 R^{N^2})
    double standard_error = 0;    // of ratio_normalized
    std::uint64_t in_ball = 0;
    std::uint64_t in_eps_ball = 0;
};

BallRatio ball_ratio_mc(const SymplecticSpec& spec, double radius, double epsilon, std::uint64_t samples,
                        std::uint64_t seed, unsigned threads = 1);

/// Unipotent upper-triangular u with u x0 u^{-1} = X, for upper-triangular X with diagonal x0.
Eigen::MatrixXd unipotent_for(const Eigen::MatrixXd& x);

/// ||u e_I|| via the sum of squared maximal minors of the columns in I.
double wedge_norm(const Eigen::MatrixXd& u, const std::vector<int>& indices);

struct GrowthRow {
    double radius = 0;
    double max_normalized_deviation = 0;  // max |ln||u e_I|| / ln R - c_I|
    double max_absolute_deviation = 0;    // max |ln||u e_I|| - c_I ln R|
    std::uint64_t samples = 0;
};

/// Samples u in B'_{R,eps'} and measures how far ln||u e_I|| is from c_I ln R over all isotropic I.
std::vector<GrowthRow> growth_estimate_check(const SymplecticSpec& spec, std::uint64_t samples,
                                             const std::vector<double>& radii, double epsilon_prime,
                                             std::uint64_t seed, unsigned threads = 1);

/// Deviations for one explicit orbit point X at radius R.
GrowthRow growth_deviation(const SymplecticSpec& spec, const Eigen::MatrixXd& x, double radius);

}  // namespace eqtk
