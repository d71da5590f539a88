#include "eqtk/lattice.hpp"

#include "eqtk/errors.hpp"

#include <cmath>
#include <limits>

namespace eqtk {

namespace {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

double gamma(int k) { return k * kUnitRoundoff / (1 - k * kUnitRoundoff); }

void require_invertible(const Eigen::MatrixXd& b) {
    if (b.rows() != b.cols() || b.rows() == 0) throw DimensionError("lattice basis must be square and nonempty");
    if (b.rows() > 8) throw DomainError("lattice dimension above 8 is out of range");
    if (!b.allFinite()) throw NumericalError("lattice basis has non-finite entries");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) <= s(0) * 1e-13) throw SingularMatrixError("lattice basis is singular");
}

// ||B z|| evaluated in floating point together with a bound on its rounding error.
struct NormEval {
    double value;
    double error;
};

NormEval evaluate(const Eigen::MatrixXd& b, const std::vector<std::int64_t>& z, VectorNorm norm) {
    const int m = static_cast<int>(b.rows());
    double sq = 0, sq_abs = 0, sup = 0, sup_err = 0;
    for (int i = 0; i < m; ++i) {
        double row = 0, row_abs = 0;
        for (int j = 0; j < m; ++j) {
            const double term = b(i, j) * static_cast<double>(z[static_cast<std::size_t>(j)]);
            row += term;
            row_abs += std::abs(term);
        }
        sq += row * row;
        sq_abs += (row_abs * (1 + gamma(m))) * (row_abs * (1 + gamma(m)));
        if (std::abs(row) > sup) {
            sup = std::abs(row);
        }
        sup_err = std::max(sup_err, gamma(m) * row_abs);
    }
    if (norm == VectorNorm::Sup) return {sup, sup_err};
    // |fl(sq) - sq| <= gamma(2m + 2) * sum of |row bounds|^2; propagate through sqrt.
    const double sq_err = gamma(2 * m + 2) * sq_abs;
    const double value = std::sqrt(sq);
    const double lo = std::sqrt(std::max(0.0, sq - sq_err));
    const double hi = std::sqrt(sq + sq_err);
    return {value, std::max(value - lo, hi - value) * (1 + 4 * kUnitRoundoff)};
}

class Enumerator {
public:
    Enumerator(const Eigen::MatrixXd& reduced, double radius_sq) : m_(static_cast<int>(reduced.cols())) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(reduced);
        r_ = qr.matrixQR().triangularView<Eigen::Upper>();
        radius_sq_ = radius_sq;
        y_.assign(static_cast<std::size_t>(m_), 0);
    }

    template <typename Visit>
    void run(Visit&& visit) {
        recurse(m_ - 1, 0.0, visit);
    }

private:
    template <typename Visit>
    void recurse(int level, double partial, Visit& visit) {
        // center of coordinate `level` given the already fixed higher coordinates
        double shift = 0;
        for (int j = level + 1; j < m_; ++j) shift += r_(level, j) * static_cast<double>(y_[static_cast<std::size_t>(j)]);
        const double diag = r_(level, level);
        const double center = -shift / diag;
        const double room = radius_sq_ - partial;
        if (room < 0) return;
        const double half_width = std::sqrt(room) / std::abs(diag);
        const auto lo = static_cast<std::int64_t>(std::ceil(center - half_width));
        const auto hi = static_cast<std::int64_t>(std::floor(center + half_width));
        for (std::int64_t v = lo; v <= hi; ++v) {
            y_[static_cast<std::size_t>(level)] = v;
            const double t = diag * static_cast<double>(v) + shift;
            const double next = partial + t * t;
            if (next > radius_sq_) continue;
            if (level == 0) visit(y_);
            else recurse(level - 1, next, visit);
        }
        y_[static_cast<std::size_t>(level)] = 0;
    }

    int m_;
    Eigen::MatrixXd r_;
    double radius_sq_ = 0;
    std::vector<std::int64_t> y_;
};

}  // namespace

IntMatrix lll_transform(const Eigen::MatrixXd& basis, double delta) {
    const int m = static_cast<int>(basis.cols());
    Eigen::MatrixXd b = basis;
    IntMatrix u = IntMatrix::Identity(m, m);

    auto gram_schmidt = [&](Eigen::MatrixXd& bstar, Eigen::MatrixXd& mu) {
        bstar = b;
        mu = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < i; ++j) {
                mu(i, j) = b.col(i).dot(bstar.col(j)) / bstar.col(j).squaredNorm();
                bstar.col(i) -= mu(i, j) * bstar.col(j);
            }
        }
    };

    Eigen::MatrixXd bstar, mu;
    gram_schmidt(bstar, mu);
    int k = 1;
    int guard = 0;
    while (k < m) {
        if (++guard > 100000) throw NumericalError("LLL reduction did not terminate");
        for (int j = k - 1; j >= 0; --j) {
            const double q = std::round(mu(k, j));
            if (q != 0) {
                b.col(k) -= q * b.col(j);
                u.col(k) -= static_cast<std::int64_t>(q) * u.col(j);
                gram_schmidt(bstar, mu);
            }
        }
        if (bstar.col(k).squaredNorm() >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bstar.col(k - 1).squaredNorm()) {
            ++k;
        } else {
            b.col(k).swap(b.col(k - 1));
            u.col(k).swap(u.col(k - 1));
            gram_schmidt(bstar, mu);
            k = std::max(k - 1, 1);
        }
    }
    return u;
}

ShortestVector shortest_vector(const Eigen::MatrixXd& basis, VectorNorm norm) {
    require_invertible(basis);
    const int m = static_cast<int>(basis.rows());
    const IntMatrix u = lll_transform(basis);
    const Eigen::MatrixXd reduced = basis * u.cast<double>();

    // Upper bound on the minimum from the reduced basis columns.
    ShortestVector best;
    double bound = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
        std::vector<std::int64_t> z(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) z[static_cast<std::size_t>(i)] = u(i, j);
        const NormEval e = evaluate(basis, z, norm);
        bound = std::min(bound, e.value + e.error);
    }
    // Euclidean radius covering every vector whose chosen norm is <= bound.
    double radius = norm == VectorNorm::Sup ? bound * std::sqrt(static_cast<double>(m)) : bound;
    radius *= 1 + 1e-9;
    radius += 1e-300;

    best.norm = std::numeric_limits<double>::infinity();
    Enumerator en(reduced, radius * radius);
    en.run([&](const std::vector<std::int64_t>& y) {
        bool zero = true;
        for (auto v : y) zero = zero && v == 0;
        if (zero) return;
        std::vector<std::int64_t> z(static_cast<std::size_t>(m), 0);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) z[static_cast<std::size_t>(i)] += u(i, j) * y[static_cast<std::size_t>(j)];
        }
        ++best.candidates;
        const NormEval e = evaluate(basis, z, norm);
        if (e.value < best.norm || (e.value == best.norm && z > best.z)) {
            best.norm = e.value;
            best.z = z;
        }
        if (best.candidates == 1) {
            best.lower = e.value - e.error;
            best.upper = e.value + e.error;
        } else {
            best.lower = std::min(best.lower, e.value - e.error);
            best.upper = std::min(best.upper, e.value + e.error);
        }
    });
    if (best.candidates == 0) throw NumericalError("enumeration found no lattice vector inside the LLL bound");
    best.lower = std::max(best.lower, 0.0);
    return best;
}

double shortest_vector_norm(const Eigen::MatrixXd& basis, VectorNorm norm) { return shortest_vector(basis, norm).norm; }

void WeightLatticeAction::validate() const {
    std::set<Character> seen;
    for (const auto& block : blocks) {
        if (block.character.rank() != rank) throw DimensionError("block character rank differs from torus rank");
        if (!seen.insert(block.character).second) throw DomainError("repeated character across blocks");
        require_invertible(block.action);
    }
}

HPolytope omega_polytope(const WeightLatticeAction& act, double epsilon, const std::set<Character>& phi_subset,
                         VectorNorm norm) {
    if (!(epsilon > 0)) throw DomainError("epsilon must be positive");
    act.validate();
    for (const auto& c : phi_subset) {
        bool present = false;
        for (const auto& block : act.blocks) present = present || block.character == c;
        if (!present) throw DomainError("character outside the action's weight set");
    }
    HPolytope p(act.rank);
    for (const auto& block : act.blocks) {
        if (!phi_subset.empty() && !phi_subset.count(block.character)) continue;
        const double shortest = shortest_vector_norm(block.action, norm);
        p.add(to_rational(block.character.coords()), from_double(std::log(epsilon) - std::log(shortest)));
    }
    return p;
}

bool mahler_membership(const Eigen::MatrixXd& full_action, double eta, VectorNorm norm) {
    if (!(eta > 0)) throw DomainError("eta must be positive");
    return shortest_vector_norm(full_action, norm) >= eta;
}

HPolytope parabolic_omega(const std::vector<ParabolicEntry>& data, double epsilon) {
    if (!(epsilon > 0)) throw DomainError("epsilon must be positive");
    if (data.empty()) throw DomainError("no parabolic data");
    const std::size_t rank = data.front().character.rank();
    HPolytope p(rank);
    for (const auto& entry : data) {
        if (!(entry.d_value > 0)) throw DomainError("parabolic distance must be positive for '" + entry.label + "'");
        if (entry.character.rank() != rank) throw DimensionError("parabolic characters of mixed rank");
        p.add(to_rational(entry.character.coords()), from_double(std::log(epsilon) - std::log(entry.d_value)));
    }
    return p;
}

}  // namespace eqtk
