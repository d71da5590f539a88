#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace eqtk {

/// Uniform cardinal B-spline of the given degree stretched over [x0, x1]:
/// nonnegative, C^{degree-1}, supported on [x0, x1], integral (x1 - x0) / (degree + 1).
class BumpFunction {
public:
    BumpFunction(double x0, double x1, unsigned degree = 3);

    double operator()(double x) const;

    double x0() const { return x0_; }
    double x1() const { return x1_; }
    unsigned degree() const { return degree_; }

    /// Exact total integral.
    double integral() const { return (x1_ - x0_) / (degree_ + 1); }

    /// Integral over [lo, hi] by Gauss-Kronrod on the polynomial pieces.
    double integral(double lo, double hi) const;

    /// Polynomial break points inside the support, endpoints included.
    std::vector<double> knots() const;

private:
    double x0_;
    double x1_;
    unsigned degree_;
};

struct OscillatoryResult {
    std::complex<double> value;
    double error_estimate = 0;
    std::size_t panels = 0;
};

/// Integral of f(x) exp(2 pi i m n e^{-2x}) over the support of f, absolute error <= abs_tolerance.
OscillatoryResult oscillatory_integral(const BumpFunction& f, std::int64_t m, std::int64_t n,
                                       double abs_tolerance = 1e-8);

struct WrapMode {
    std::int64_t m;
    BumpFunction g;
};

/// Default test modes: m in {0, 1, 2, 3} against a cubic bump on [0, 1].
std::vector<WrapMode> default_wrap_modes();

/// Sup over modes of |mean_x g(x) e^{2 pi i m frac(n e^{-2x})| - [m = 0] avg g| on a midpoint grid of the window.
double wrap_curve_discrepancy(std::int64_t n, std::pair<double, double> window, std::size_t num_points,
                              const std::vector<WrapMode>& modes);

}  // namespace eqtk
