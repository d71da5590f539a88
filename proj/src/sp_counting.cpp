#include "eqtk/sp_counting.hpp"

#include "eqtk/errors.hpp"
#include "eqtk/substreams.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <set>
#include <string>

namespace eqtk {

SymplecticSpec::SymplecticSpec(std::size_t n_, std::vector<std::int64_t> d_) : n(n_), d(std::move(d_)) {
    if (n == 0) throw DomainError("N must be positive");
    if (d.size() != n) throw DomainError("expected " + std::to_string(n) + " values of d");
    std::set<std::int64_t> seen;
    for (auto v : d) {
        if (v <= 0) throw DomainError("d values must be positive");
        if (!seen.insert(v).second) throw DomainError("d values must be distinct");
    }
}

double xi(double z) {
    if (!(z > 1)) throw DomainError("xi is evaluated only for z > 1");
    return std::pow(std::numbers::pi, -z / 2) * std::tgamma(z / 2) * boost::math::zeta(z);
}

double unit_ball_volume(unsigned n) {
    return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1);
}

RationalMatrix symplectic_form(std::size_t n) {
    if (n == 0) throw DomainError("N must be positive");
    RationalMatrix j(2 * n, RationalVector(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        j[i][2 * n - 1 - i] = 1;
        j[n + i][n - 1 - i] = -1;
    }
    return j;
}

namespace {

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RationalMatrix out(n, RationalVector(m, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    }
    return out;
}

void require_square(const RationalMatrix& x, std::size_t size) {
    if (x.size() != size) throw DimensionError("expected a " + std::to_string(size) + "x" + std::to_string(size) + " matrix");
    for (const auto& row : x) {
        if (row.size() != size) throw DimensionError("matrix is not square");
    }
}

RationalVector poly_multiply(const RationalVector& a, const RationalVector& b) {
    RationalVector out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

}  // namespace

bool in_lie_algebra(const RationalMatrix& x, std::size_t n) {
    require_square(x, 2 * n);
    const RationalMatrix j = symplectic_form(n);
    RationalMatrix xt(2 * n, RationalVector(2 * n));
    for (std::size_t r = 0; r < 2 * n; ++r) {
        for (std::size_t c = 0; c < 2 * n; ++c) xt[r][c] = x[c][r];
    }
    const RationalMatrix lhs = multiply(xt, j);
    const RationalMatrix rhs = multiply(j, x);
    for (std::size_t r = 0; r < 2 * n; ++r) {
        for (std::size_t c = 0; c < 2 * n; ++c) {
            if (lhs[r][c] + rhs[r][c] != 0) return false;
        }
    }
    return true;
}

RationalVector characteristic_polynomial(const RationalMatrix& x) {
    const std::size_t n = x.size();
    require_square(x, n);
    // Faddeev-LeVerrier: M_k = X M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(X M_k) / k
    RationalVector coeffs(n + 1, Rational(0));
    coeffs[n] = 1;
    RationalMatrix m(n, RationalVector(n, Rational(0)));
    for (std::size_t k = 1; k <= n; ++k) {
        RationalMatrix next = multiply(x, m);
        for (std::size_t i = 0; i < n; ++i) next[i][i] += coeffs[n - k + 1];
        m = std::move(next);
        const RationalMatrix xm = multiply(x, m);
        Rational trace = 0;
        for (std::size_t i = 0; i < n; ++i) trace += xm[i][i];
        coeffs[n - k] = -trace / static_cast<long long>(k);
    }
    return coeffs;
}

RationalVector target_polynomial(const SymplecticSpec& spec) {
    RationalVector p{Rational(1)};
    for (auto d : spec.d) {
        const Rational d2 = Rational(static_cast<long long>(d)) * static_cast<long long>(d);
        p = poly_multiply(p, RationalVector{-d2, Rational(0), Rational(1)});
    }
    return p;
}

bool in_variety(const RationalMatrix& x, const SymplecticSpec& spec) {
    require_square(x, 2 * spec.n);
    for (const auto& row : x) {
        for (const auto& v : row) {
            if (boost::multiprecision::denominator(v) != 1) return false;
        }
    }
    return in_lie_algebra(x, spec.n) && characteristic_polynomial(x) == target_polynomial(spec);
}

RationalMatrix base_point(const SymplecticSpec& spec) {
    const std::size_t n = spec.n;
    RationalMatrix x(2 * n, RationalVector(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        x[i][i] = static_cast<long long>(spec.d[i]);
        x[2 * n - 1 - i][2 * n - 1 - i] = -static_cast<long long>(spec.d[i]);
    }
    return x;
}

std::vector<IsotropicSet> isotropic_subsets(std::size_t n) {
    if (n == 0) throw DomainError("N must be positive");
    if (n > 12) throw DomainError("N too large to enumerate isotropic subsets");
    std::vector<IsotropicSet> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 1; code < total; ++code) {
        IsotropicSet s;
        std::size_t rest = code;
        for (int j = 1; j <= static_cast<int>(n); ++j, rest /= 3) {
            if (rest % 3 == 1) s.j.push_back(j);
            if (rest % 3 == 2) s.j_prime.push_back(j);
        }
        for (int j : s.j) s.indices.push_back(j);
        for (int jp : s.j_prime) s.indices.push_back(2 * static_cast<int>(n) + 1 - jp);
        std::sort(s.indices.begin(), s.indices.end());
        std::sort(s.j_prime.begin(), s.j_prime.end());
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const IsotropicSet& a, const IsotropicSet& b) {
        if (a.indices.size() != b.indices.size()) return a.indices.size() < b.indices.size();
        return a.indices < b.indices;
    });
    return out;
}

IsotropicSet isotropic_from_indices(std::vector<int> indices, std::size_t n) {
    std::sort(indices.begin(), indices.end());
    if (indices.empty()) throw DomainError("isotropic sets are nonempty");
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) throw DomainError("repeated index");
    const int two_n = 2 * static_cast<int>(n);
    IsotropicSet s;
    s.indices = indices;
    for (int i : indices) {
        if (i < 1 || i > two_n) throw DomainError("index " + std::to_string(i) + " outside 1.." + std::to_string(two_n));
        if (i <= static_cast<int>(n)) s.j.push_back(i);
        else s.j_prime.push_back(two_n + 1 - i);
    }
    std::sort(s.j_prime.begin(), s.j_prime.end());
    for (int jp : s.j_prime) {
        if (std::binary_search(s.j.begin(), s.j.end(), jp)) {
            throw DomainError("indices " + std::to_string(jp) + " and " + std::to_string(two_n + 1 - jp) +
                              " pair under the symplectic form");
        }
    }
    return s;
}

std::int64_t c_of(const IsotropicSet& set) {
    std::int64_t c = 0;
    for (std::size_t lambda = 1; lambda <= set.indices.size(); ++lambda) {
        c += set.indices[lambda - 1] - static_cast<std::int64_t>(lambda);
    }
    return c;
}

Character weight_of(const IsotropicSet& set, std::size_t n) {
    std::vector<std::int64_t> coords(n, 0);
    for (int j : set.j) coords.at(static_cast<std::size_t>(j - 1)) += 1;
    for (int jp : set.j_prime) coords.at(static_cast<std::size_t>(jp - 1)) -= 1;
    return Character(std::move(coords));
}

HPolytope c1_polytope(std::size_t n) {
    HPolytope p(n);
    for (const auto& set : isotropic_subsets(n)) {
        p.add(to_rational(weight_of(set, n).coords()), Rational(static_cast<long long>(-c_of(set))));
    }
    return p;
}

double torus_measure_normalization(std::size_t n) {
    double denom = 1;
    for (std::size_t k = 1; k <= n; ++k) denom *= xi(2.0 * static_cast<double>(k));
    const double exponent = static_cast<double>(n * n + n) / 2 - 1;
    return std::pow(2.0, exponent) / denom;
}

C1Result constant_c1(std::size_t n) {
    if (n == 0 || n > 3) throw DomainError("C1 is computed for 1 <= N <= 3");
    C1Result r;
    const HPolytope p = c1_polytope(n);
    if (!is_bounded(p)) throw UnboundedError("isotropic weight polytope is unbounded");
    r.polytope_volume = volume(p);
    r.normalization = torus_measure_normalization(n);
    r.value = r.normalization * to_double(r.polytope_volume);
    return r;
}

BigInt jacobian_divisor(const SymplecticSpec& spec) {
    BigInt prod = 1;
    const auto& d = spec.d;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i; j < d.size(); ++j) {
            if (i < j) prod *= BigInt(d[j] - d[i]);
            prod *= BigInt(d[j] + d[i]);
        }
    }
    return prod < 0 ? BigInt(-prod) : prod;
}

double quadric_volume(std::size_t n) {
    const unsigned dim = static_cast<unsigned>(n * n);
    return unit_ball_volume(dim) * std::pow(2.0, -static_cast<double>(n * n - n) / 2);
}

double constant_c2(const SymplecticSpec& spec) {
    return quadric_volume(spec.n) / jacobian_divisor(spec).convert_to<double>();
}

double asymptotic_count(const SymplecticSpec& spec, double radius) {
    if (!(radius > 1)) throw DomainError("R must exceed 1");
    const double nn = static_cast<double>(spec.n);
    return constant_c1(spec.n).value * constant_c2(spec) * std::pow(radius, nn * nn) * std::pow(std::log(radius), nn);
}

namespace {

// Solutions (b, c) of b c = m with b^2 + c^2 <= budget, m != 0.
std::uint64_t divisor_pairs(std::int64_t m, std::int64_t budget) {
    const std::int64_t am = m < 0 ? -m : m;
    std::uint64_t count = 0;
    for (std::int64_t q = 1; q * q <= am; ++q) {
        if (am % q != 0) continue;
        const std::int64_t other = am / q;
        if (q * q + other * other > budget) continue;
        // (q, other) and (other, q) orderings, each with two sign choices
        count += q == other ? 2 : 4;
    }
    return count;
}

std::uint64_t count_rows(std::int64_t d, std::int64_t r2, std::int64_t a_lo, std::int64_t a_hi) {
    std::uint64_t total = 0;
    for (std::int64_t a = a_lo; a <= a_hi; ++a) {
        const std::int64_t rem = r2 - 2 * a * a;
        if (rem < 0) continue;
        const std::int64_t m = d * d - a * a;
        if (m == 0) {
            // b c = 0: one of b, c vanishes
            std::int64_t s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rem)));
            while (s * s > rem) --s;
            while ((s + 1) * (s + 1) <= rem) ++s;
            total += static_cast<std::uint64_t>(2 * (2 * s + 1) - 1);
        } else {
            total += divisor_pairs(m, rem);
        }
    }
    return total;
}

}  // namespace

CountEntry count_points_n1(const SymplecticSpec& spec, double radius, unsigned threads) {
    if (spec.n != 1) throw DomainError("brute-force counting is implemented for N = 1 only");
    if (!(radius > 0) || radius > 1e4) throw DomainError("R must lie in (0, 1e4]");
    const auto r2 = static_cast<std::int64_t>(std::floor(radius * radius));
    std::int64_t a_max = static_cast<std::int64_t>(std::sqrt(static_cast<double>(r2) / 2)) + 1;
    while (2 * a_max * a_max > r2) --a_max;
    const std::int64_t d = spec.d[0];

    std::uint64_t total = 0;
    const std::int64_t span = 2 * a_max + 1;
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(span)));
    if (workers == 1) {
        total = count_rows(d, r2, -a_max, a_max);
    } else {
        std::vector<std::future<std::uint64_t>> parts;
        for (unsigned w = 0; w < workers; ++w) {
            const std::int64_t lo = -a_max + span * w / workers;
            const std::int64_t hi = -a_max + span * (w + 1) / workers - 1;
            parts.push_back(std::async(std::launch::async, count_rows, d, r2, lo, hi));
        }
        for (auto& p : parts) total += p.get();
    }

    CountEntry e;
    e.radius = radius;
    e.count = total;
    if (radius > 1) {
        e.expected = asymptotic_count(spec, radius);
        e.fitted_constant = static_cast<double>(total) / (radius * std::log(radius));
    }
    return e;
}

std::vector<CountEntry> count_series_n1(const SymplecticSpec& spec, const std::vector<double>& radii,
                                        unsigned threads) {
    std::vector<CountEntry> out;
    for (double r : radii) out.push_back(count_points_n1(spec, r, threads));
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i].radius >= out[i - 1].radius && out[i].count < out[i - 1].count) {
            throw InvariantViolation("count decreased as R increased");
        }
    }
    return out;
}

OrbitCoordinates::OrbitCoordinates(const SymplecticSpec& spec) : spec_(spec) {
    const int n = static_cast<int>(spec.n);
    for (int r = 0; r < n; ++r) {
        for (int c = r + 1; c < n; ++c) {
            if (c == r + 1) simple_.push_back(slots_.size());
            slots_.push_back(Slot{true, r, c, 2.0});
        }
    }
    for (int r = 0; r < n; ++r) {
        for (int s = 0; r + s <= n - 1; ++s) {
            if (r == n - 1 && s == 0) simple_.push_back(slots_.size());
            slots_.push_back(Slot{false, r, s, r + s == n - 1 ? 1.0 : 2.0});
        }
    }
    for (auto d : spec.d) diag_sq_ += 2.0 * static_cast<double>(d) * static_cast<double>(d);
}

Eigen::MatrixXd OrbitCoordinates::matrix(const std::vector<double>& values) const {
    const int n = static_cast<int>(spec_.n);
    if (values.size() != slots_.size()) throw DimensionError("wrong number of orbit coordinates");
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) y(i, i) = static_cast<double>(spec_.d[static_cast<std::size_t>(i)]);
    for (std::size_t k = 0; k < slots_.size(); ++k) {
        const Slot& s = slots_[k];
        if (s.is_y) {
            y(s.row, s.col) = values[k];
        } else {
            z(s.row, s.col) = values[k];
            z(n - 1 - s.col, n - 1 - s.row) = values[k];
        }
    }
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    x.topLeftCorner(n, n) = y;
    x.topRightCorner(n, n) = z;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) x(n + a, n + b) = -y(n - 1 - b, n - 1 - a);
    }
    return x;
}

double OrbitCoordinates::frobenius_sq(const std::vector<double>& values) const {
    double s = diag_sq_;
    for (std::size_t k = 0; k < slots_.size(); ++k) s += slots_[k].weight * values[k] * values[k];
    return s;
}

QuadricMonteCarlo quadric_volume_mc(std::size_t n, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
    if (samples == 0) throw DomainError("need at least one sample");
    std::vector<std::int64_t> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = static_cast<std::int64_t>(i + 1);
    const OrbitCoordinates coords(SymplecticSpec(n, d));
    double box = 1;
    std::vector<double> half;
    for (const auto& s : coords.slots()) {
        half.push_back(1 / std::sqrt(s.weight));
        box *= 2 * half.back();
    }
    const auto hits = run_blocks(samples, threads, [&](std::size_t block, std::size_t begin, std::size_t end) {
        Substream rng(seed, 0x517, block);
        std::uint64_t inside = 0;
        for (std::size_t i = begin; i < end; ++i) {
            double q = 0;
            for (std::size_t k = 0; k < half.size(); ++k) {
                const double v = rng.uniform(-half[k], half[k]);
                q += coords.slots()[k].weight * v * v;
            }
            if (q <= 1) ++inside;
        }
        return inside;
    });
    std::uint64_t inside = 0;
    for (auto h : hits) inside += h;
    const double p = static_cast<double>(inside) / static_cast<double>(samples);
    return {p * box, box * std::sqrt(p * (1 - p) / static_cast<double>(samples))};
}

BallRatio ball_ratio_mc(const SymplecticSpec& spec, double radius, double epsilon, std::uint64_t samples,
                        std::uint64_t seed, unsigned threads) {
    if (samples < 100000) throw DomainError("ball ratio estimates need at least 1e5 samples");
    if (!(radius > 0) || epsilon < 0) throw DomainError("need R > 0 and epsilon >= 0");
    const OrbitCoordinates coords(spec);
    const double budget = radius * radius - coords.diagonal_sq();
    if (budget <= 0) throw DomainError("R is below the norm of the base point");
    // box volume divided by R^{N^2}
    double scaled_box = 1;
    std::vector<double> half;
    for (const auto& s : coords.slots()) {
        half.push_back(radius / std::sqrt(s.weight));
        scaled_box *= 2 / std::sqrt(s.weight);
    }
    struct Hits {
        std::uint64_t ball = 0;
        std::uint64_t eps_ball = 0;
    };
    const auto parts = run_blocks(samples, threads, [&](std::size_t block, std::size_t begin, std::size_t end) {
        Substream rng(seed, 0xba11, block);
        Hits h;
        std::vector<double> v(half.size());
        for (std::size_t i = begin; i < end; ++i) {
            double q = 0;
            for (std::size_t k = 0; k < half.size(); ++k) {
                v[k] = rng.uniform(-half[k], half[k]);
                q += coords.slots()[k].weight * v[k] * v[k];
            }
            if (q > budget) continue;
            ++h.ball;
            bool thick = true;
            for (auto k : coords.simple_root_slots()) thick = thick && std::abs(v[k]) >= epsilon * radius;
            if (thick) ++h.eps_ball;
        }
        return h;
    });
    BallRatio out;
    for (const auto& h : parts) {
        out.in_ball += h.ball;
        out.in_eps_ball += h.eps_ball;
    }
    const double p = static_cast<double>(out.in_ball) / static_cast<double>(samples);
    const double divisor = jacobian_divisor(spec).convert_to<double>();
    const double c2 = constant_c2(spec);
    // mu_U(B_R) / R^{N^2} = p * box / R^{N^2} / divisor
    out.ratio_normalized = p * scaled_box / divisor / c2;
    out.standard_error = scaled_box / divisor / c2 * std::sqrt(p * (1 - p) / static_cast<double>(samples));
    out.ratio_eps = out.in_ball == 0 ? 0.0 : static_cast<double>(out.in_eps_ball) / static_cast<double>(out.in_ball);
    return out;
}

Eigen::MatrixXd unipotent_for(const Eigen::MatrixXd& x) {
    const Eigen::Index m = x.rows();
    if (x.cols() != m) throw DimensionError("orbit point must be square");
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            if (x(i, j) != 0) throw DomainError("orbit point must be upper triangular");
        }
    }
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index i = j - 1; i >= 0; --i) {
            double s = 0;
            for (Eigen::Index k = i + 1; k <= j; ++k) s += x(i, k) * u(k, j);
            const double gap = x(j, j) - x(i, i);
            if (gap == 0) throw DomainError("diagonal entries must be distinct");
            u(i, j) = s / gap;
        }
    }
    return u;
}

double wedge_norm(const Eigen::MatrixXd& u, const std::vector<int>& indices) {
    const auto k = static_cast<Eigen::Index>(indices.size());
    const Eigen::Index rows = u.rows();
    Eigen::MatrixXd cols(rows, k);
    for (Eigen::Index c = 0; c < k; ++c) cols.col(c) = u.col(indices[static_cast<std::size_t>(c)] - 1);
    // Cauchy-Binet: ||v_1 ^ ... ^ v_k||^2 = sum of squared k x k minors
    double sum = 0;
    std::vector<Eigen::Index> pick(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
        Eigen::MatrixXd minor(k, k);
        for (Eigen::Index r = 0; r < k; ++r) minor.row(r) = cols.row(pick[static_cast<std::size_t>(r)]);
        const double det = minor.determinant();
        sum += det * det;
        Eigen::Index i = k;
        while (i > 0 && pick[static_cast<std::size_t>(i - 1)] == rows - k + i - 1) --i;
        if (i == 0) break;
        ++pick[static_cast<std::size_t>(i - 1)];
        for (Eigen::Index j = i; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return std::sqrt(sum);
}

GrowthRow growth_deviation(const SymplecticSpec& spec, const Eigen::MatrixXd& x, double radius) {
    if (!(radius > 1)) throw DomainError("R must exceed 1");
    const Eigen::MatrixXd u = unipotent_for(x);
    const double log_r = std::log(radius);
    GrowthRow row;
    row.radius = radius;
    row.samples = 1;
    for (const auto& set : isotropic_subsets(spec.n)) {
        const double log_norm = std::log(wedge_norm(u, set.indices));
        const double c = static_cast<double>(c_of(set));
        row.max_absolute_deviation = std::max(row.max_absolute_deviation, std::abs(log_norm - c * log_r));
        row.max_normalized_deviation = std::max(row.max_normalized_deviation, std::abs(log_norm / log_r - c));
    }
    return row;
}

std::vector<GrowthRow> growth_estimate_check(const SymplecticSpec& spec, std::uint64_t samples,
                                             const std::vector<double>& radii, double epsilon_prime,
                                             std::uint64_t seed, unsigned threads) {
    if (spec.n > 2) throw DomainError("growth estimates are sampled for N <= 2");
    if (samples == 0) throw DomainError("need at least one sample");
    if (!(epsilon_prime >= 0)) throw DomainError("epsilon' must be nonnegative");
    const OrbitCoordinates coords(spec);
    std::vector<bool> simple(coords.size(), false);
    for (auto k : coords.simple_root_slots()) simple[k] = true;

    std::vector<GrowthRow> out;
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        const double radius = radii[ri];
        const double budget = radius * radius - coords.diagonal_sq();
        if (budget <= 0) throw DomainError("R is below the norm of the base point");
        std::vector<double> half;
        for (const auto& s : coords.slots()) half.push_back(radius / std::sqrt(s.weight));
        const double floor_value = epsilon_prime * radius;
        for (auto k : coords.simple_root_slots()) {
            if (floor_value > half[k]) throw DomainError("epsilon' leaves no room in the ball");
        }

        const auto parts = run_blocks(samples, threads, [&](std::size_t block, std::size_t begin, std::size_t end) {
            Substream rng(seed, 0x6400 + ri, block);
            GrowthRow acc;
            std::vector<double> v(half.size());
            for (std::size_t i = begin; i < end; ++i) {
                for (int attempt = 0;; ++attempt) {
                    if (attempt > 1000000) throw NumericalError("rejection sampling of B'_{R,eps'} stalled");
                    for (std::size_t k = 0; k < v.size(); ++k) {
                        if (simple[k]) {
                            const double mag = rng.uniform(floor_value, half[k]);
                            v[k] = (rng.next() & 1) ? mag : -mag;
                        } else {
                            v[k] = rng.uniform(-half[k], half[k]);
                        }
                    }
                    if (coords.frobenius_sq(v) <= radius * radius) break;
                }
                const GrowthRow one = growth_deviation(spec, coords.matrix(v), radius);
                acc.max_absolute_deviation = std::max(acc.max_absolute_deviation, one.max_absolute_deviation);
                acc.max_normalized_deviation = std::max(acc.max_normalized_deviation, one.max_normalized_deviation);
                ++acc.samples;
            }
            return acc;
        });
        GrowthRow row;
        row.radius = radius;
        for (const auto& p : parts) {
            row.max_absolute_deviation = std::max(row.max_absolute_deviation, p.max_absolute_deviation);
            row.max_normalized_deviation = std::max(row.max_normalized_deviation, p.max_normalized_deviation);
            row.samples += p.samples;
        }
        out.push_back(row);
    }
    return out;
}

}  // namespace eqtk
