#include "eqtk/oscillatory.hpp"

#include "eqtk/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace eqtk {

BumpFunction::BumpFunction(double x0, double x1, unsigned degree) : x0_(x0), x1_(x1), degree_(degree) {
    if (!(x1 > x0)) throw DomainError("bump support needs x0 < x1");
    if (degree < 1 || degree > 10) throw DomainError("bump degree must lie in 1..10");
}

double BumpFunction::operator()(double x) const {
    if (x <= x0_ || x >= x1_) return 0;
    const double u = (x - x0_) / (x1_ - x0_) * (degree_ + 1);
    // Cox-de Boor on integer knots 0..degree+1
    const auto cell = std::min<std::size_t>(static_cast<std::size_t>(u), degree_);
    std::array<double, 12> basis{};
    basis[cell] = 1;
    for (unsigned p = 1; p <= degree_; ++p) {
        for (unsigned i = 0; i + p <= degree_; ++i) {
            basis[i] = ((u - i) * basis[i] + (i + p + 1 - u) * basis[i + 1]) / p;
        }
    }
    return std::max(0.0, basis[0]);
}

std::vector<double> BumpFunction::knots() const {
    std::vector<double> k;
    for (unsigned i = 0; i <= degree_ + 1; ++i) {
        k.push_back(x0_ + (x1_ - x0_) * static_cast<double>(i) / static_cast<double>(degree_ + 1));
    }
    k.back() = x1_;
    return k;
}

double BumpFunction::integral(double lo, double hi) const {
    if (hi < lo) return -integral(hi, lo);
    double total = 0;
    const auto k = knots();
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        const double a = std::max(lo, k[i]);
        const double b = std::min(hi, k[i + 1]);
        if (b <= a) continue;
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(*this, a, b, 0);
    }
    return total;
}

OscillatoryResult oscillatory_integral(const BumpFunction& f, std::int64_t m, std::int64_t n,
                                       double abs_tolerance) {
    if (!(abs_tolerance > 0)) throw DomainError("tolerance must be positive");
    using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double freq = 2 * std::numbers::pi * static_cast<double>(m) * static_cast<double>(n);
    auto integrand = [&](double x) {
        const double phase = freq * std::exp(-2 * x);
        return f(x) * std::complex<double>(std::cos(phase), std::sin(phase));
    };
    const auto knots = f.knots();
    OscillatoryResult out;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        double a = knots[i];
        const double b = knots[i + 1];
        while (a < b) {
            // |phase'| = 2|freq| e^{-2x} is largest at the left end; keep panels under half a cycle.
            const double slope = 2 * std::abs(freq) * std::exp(-2 * a);
            const double width = slope > 0 ? std::min(b - a, std::numbers::pi / slope) : b - a;
            const double right = width >= b - a ? b : a + width;
            double err = 0;
            out.value += Quad::integrate(integrand, a, right, 6, 1e-10, &err);
            // Boost reports the Kronrod-Gauss gap on the rescaled [-1, 1] panel
            out.error_estimate += err * (right - a) / 2;
            ++out.panels;
            a = right;
        }
    }
    if (out.error_estimate > abs_tolerance) {
        throw NumericalError("oscillatory quadrature missed its error budget");
    }
    return out;
}

std::vector<WrapMode> default_wrap_modes() {
    std::vector<WrapMode> modes;
    for (std::int64_t m = 0; m <= 3; ++m) modes.push_back({m, BumpFunction(0, 1, 3)});
    return modes;
}

double wrap_curve_discrepancy(std::int64_t n, std::pair<double, double> window, std::size_t num_points,
                              const std::vector<WrapMode>& modes) {
    if (num_points < 1000) throw DomainError("need at least 1e3 sample points");
    const auto [lo, hi] = window;
    if (!(hi > lo)) throw DomainError("empty window");
    if (modes.empty()) throw DomainError("no test modes");
    const double step = (hi - lo) / static_cast<double>(num_points);
    double worst = 0;
    for (const auto& mode : modes) {
        std::complex<double> sum = 0;
        for (std::size_t i = 0; i < num_points; ++i) {
            const double x = lo + (static_cast<double>(i) + 0.5) * step;
            const double raw = static_cast<double>(n) * std::exp(-2 * x);
            const double y = raw - std::floor(raw);
            const double phase = 2 * std::numbers::pi * static_cast<double>(mode.m) * y;
            sum += mode.g(x) * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        const std::complex<double> mean = sum / static_cast<double>(num_points);
        const double target = mode.m == 0 ? mode.g.integral(lo, hi) / (hi - lo) : 0.0;
        worst = std::max(worst, std::abs(mean - target));
    }
    return worst;
}

}  // namespace eqtk
