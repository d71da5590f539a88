#include "eqtk/shear.hpp"

#include "eqtk/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

namespace eqtk {

namespace {

// u_{-w} a_t u_w has entries of size |w|^2 that cancel down to O(1), so the
// conjugation limit is evaluated with 50 significant digits.
using Wide = boost::multiprecision::cpp_bin_float_50;
using WideMatrix = std::vector<std::vector<Wide>>;

WideMatrix wide_identity(std::size_t size) {
    WideMatrix m(size, std::vector<Wide>(size, Wide(0)));
    for (std::size_t i = 0; i < size; ++i) m[i][i] = 1;
    return m;
}

WideMatrix wide_u(const std::vector<Wide>& v) {
    const std::size_t m = v.size();
    Wide half = 0;
    for (const auto& x : v) half += x * x;
    half /= 2;
    WideMatrix u = wide_identity(m + 2);
    for (std::size_t i = 0; i < m; ++i) {
        u[i][m] = -v[i];
        u[i][m + 1] = v[i];
        u[m][i] = v[i];
        u[m + 1][i] = v[i];
    }
    u[m][m] = 1 - half;
    u[m][m + 1] = half;
    u[m + 1][m] = -half;
    u[m + 1][m + 1] = 1 + half;
    return u;
}

WideMatrix wide_a(std::size_t n, const Wide& t) {
    WideMatrix a = wide_identity(n + 1);
    a[n - 1][n - 1] = cosh(t);
    a[n - 1][n] = sinh(t);
    a[n][n - 1] = sinh(t);
    a[n][n] = cosh(t);
    return a;
}

WideMatrix wide_mul(const WideMatrix& a, const WideMatrix& b) {
    WideMatrix out(a.size(), std::vector<Wide>(b[0].size(), Wide(0)));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < b.size(); ++k) {
            for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
        }
    }
    return out;
}

Eigen::MatrixXd lorentz_metric(Eigen::Index size) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(size, size);
    q(size - 1, size - 1) = -1;
    return q;
}

}  // namespace

double lorentz_form(const Eigen::VectorXd& p) {
    if (p.size() < 2) throw DimensionError("points need at least two coordinates");
    const Eigen::Index last = p.size() - 1;
    return p.head(last).squaredNorm() - p(last) * p(last);
}

Eigen::MatrixXd a_t_matrix(std::size_t n, double t) {
    if (n < 2) throw DomainError("hyperbolic dimension n must be at least 2");
    const auto size = static_cast<Eigen::Index>(n + 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(size, size);
    a(size - 2, size - 2) = std::cosh(t);
    a(size - 2, size - 1) = std::sinh(t);
    a(size - 1, size - 2) = std::sinh(t);
    a(size - 1, size - 1) = std::cosh(t);
    return a;
}

Eigen::MatrixXd u_v_matrix(const Eigen::VectorXd& v) {
    if (v.size() < 1) throw DomainError("v must have length n - 1 >= 1");
    const Eigen::Index m = v.size();
    const double half = v.squaredNorm() / 2;
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(m + 2, m + 2);
    for (Eigen::Index i = 0; i < m; ++i) {
        u(i, m) = -v(i);
        u(i, m + 1) = v(i);
        u(m, i) = v(i);
        u(m + 1, i) = v(i);
    }
    u(m, m) = 1 - half;
    u(m, m + 1) = half;
    u(m + 1, m) = -half;
    u(m + 1, m + 1) = 1 + half;
    return u;
}

double lorentz_defect(const Eigen::MatrixXd& g) {
    const Eigen::MatrixXd q = lorentz_metric(g.rows());
    const double scale = std::max(1.0, g.squaredNorm());
    return (g.transpose() * q * g - q).cwiseAbs().maxCoeff() / scale;
}

Eigen::VectorXd hyperboloid_to_halfspace(const Eigen::VectorXd& p, double tolerance) {
    const double q = lorentz_form(p);
    const Eigen::Index n = p.size() - 1;
    const double y = p(n);
    if (!(y > 0)) throw DomainError("point is not on the upper sheet (y <= 0)");
    if (std::abs(q + 1) > tolerance * std::max(1.0, y * y)) {
        throw DomainError("point is off the hyperboloid: Q = " + std::to_string(q));
    }
    Eigen::VectorXd x = p.head(n) / (1 + y);
    x(n - 1) += 1;
    Eigen::VectorXd out = 2 * x / x.squaredNorm();
    out(n - 1) -= 1;
    return out;
}

Eigen::VectorXd sheared_orbit_point(double t, const Eigen::VectorXd& v) {
    const double v2 = v.squaredNorm();
    const double et = std::exp(t);
    const double denom_root = et + 1 + v2 * et;
    const double scale = (2 + 2 * std::cosh(t) + v2 * et) / (v2 + denom_root * denom_root);
    Eigen::VectorXd out(v.size() + 1);
    out.head(v.size()) = scale * v;
    out(v.size()) = scale;
    return out;
}

Eigen::VectorXd sheared_orbit_point_by_action(double t, const Eigen::VectorXd& v) {
    const auto n = static_cast<std::size_t>(v.size() + 1);
    Eigen::VectorXd base = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n + 1));
    base(static_cast<Eigen::Index>(n)) = 1;
    const Eigen::VectorXd p = a_t_matrix(n, t) * (u_v_matrix(v) * base);
    // Large t or |v| pushes Q(p) away from -1 by rounding alone.
    return hyperboloid_to_halfspace(p, 1e-9);
}

ShearGridReport shear_grid_check(const Eigen::VectorXd& direction, double t_lo, double t_hi, double s_lo,
                                 double s_hi, std::size_t steps, unsigned threads) {
    if (steps < 2) throw DomainError("grid needs at least two steps per axis");
    auto row = [&](std::size_t i) {
        ShearGridReport r;
        const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
        for (std::size_t j = 0; j < steps; ++j) {
            const double s = s_lo + (s_hi - s_lo) * static_cast<double>(j) / static_cast<double>(steps - 1);
            const Eigen::VectorXd v = s * direction;
            const Eigen::VectorXd closed = sheared_orbit_point(t, v);
            const Eigen::VectorXd action = sheared_orbit_point_by_action(t, v);
            r.max_difference = std::max(r.max_difference, (closed - action).cwiseAbs().maxCoeff());
            const Eigen::MatrixXd g = a_t_matrix(static_cast<std::size_t>(v.size() + 1), t) * u_v_matrix(v);
            r.max_lorentz_defect = std::max(r.max_lorentz_defect, lorentz_defect(g));
            ++r.cells;
        }
        return r;
    };
    std::vector<ShearGridReport> rows(steps);
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, steps));
    if (workers == 1) {
        for (std::size_t i = 0; i < steps; ++i) rows[i] = row(i);
    } else {
        std::vector<std::future<void>> pending;
        for (std::size_t w = 0; w < workers; ++w) {
            pending.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t i = w; i < steps; i += workers) rows[i] = row(i);
            }));
        }
        for (auto& f : pending) f.get();
    }
    ShearGridReport total;
    for (const auto& r : rows) {
        total.cells += r.cells;
        total.max_difference = std::max(total.max_difference, r.max_difference);
        total.max_lorentz_defect = std::max(total.max_lorentz_defect, r.max_lorentz_defect);
    }
    return total;
}

void ShearConfig::validate() const {
    if (n < 2) throw DomainError("n must be at least 2");
    if (static_cast<std::size_t>(v.size()) != n - 1) throw DimensionError("v must have length n - 1");
    if (!(v.norm() > 0)) throw DomainError("v must be nonzero");
    if (k_list.empty()) throw DomainError("k_list is empty");
    for (std::size_t i = 1; i < k_list.size(); ++i) {
        if (!(k_list[i] > k_list[i - 1])) throw DomainError("k_list must be increasing");
    }
}

ShearReport conjugation_limit_check(const ShearConfig& cfg) {
    cfg.validate();
    const Eigen::VectorXd unit = cfg.v / cfg.v.norm();
    ShearReport report;
    for (double k : cfg.k_list) {
        Eigen::VectorXd vk(unit.size());
        for (Eigen::Index i = 0; i < unit.size(); ++i) vk(i) = 2 * std::round(k * unit(i) / 2);
        const double norm = vk.norm();
        if (norm == 0) throw DomainError("v^k rounds to zero at k = " + std::to_string(k));
        if (!(cfg.lambda / norm > -1)) throw DomainError("lambda <= -||v^k|| has no real t_k");
        std::vector<Wide> wv(static_cast<std::size_t>(vk.size())), neg(wv.size()), limit(wv.size());
        Wide wnorm = 0;
        for (std::size_t i = 0; i < wv.size(); ++i) {
            wv[i] = vk(static_cast<Eigen::Index>(i));
            neg[i] = -wv[i];
            wnorm += wv[i] * wv[i];
        }
        wnorm = sqrt(wnorm);
        for (std::size_t i = 0; i < wv.size(); ++i) limit[i] = Wide(cfg.lambda) * wv[i] / wnorm;
        const Wide t = log1p(Wide(cfg.lambda) / wnorm);
        const WideMatrix m = wide_mul(wide_mul(wide_u(neg), wide_a(cfg.n, t)), wide_u(wv));
        const WideMatrix target = wide_u(limit);
        Wide dev = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = 0; j < m.size(); ++j) dev += (m[i][j] - target[i][j]) * (m[i][j] - target[i][j]);
        }
        ShearRow row;
        row.k = k;
        row.norm_vk = norm;
        row.t_k = t.convert_to<double>();
        row.deviation = sqrt(dev).convert_to<double>();
        report.rows.push_back(row);
    }
    report.decreasing = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        report.decreasing = report.decreasing && report.rows[i].deviation < report.rows[i - 1].deviation;
    }
    return report;
}

}  // namespace eqtk
