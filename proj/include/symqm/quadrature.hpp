#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace symqm {

/// Composite Simpson rule with a caller-chosen interval count (rounded up to
/// even). Used where a contract exposes the point count explicitly.
template <typename F>
double simpson(F&& f, double a, double b, int intervals) {
    if (intervals < 2) throw std::invalid_argument("simpson: need at least 2 intervals");
    int n = intervals + (intervals % 2);
    double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

/// Adaptive Gauss-Kronrod integration to an absolute tolerance.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol) {
    using boost::math::quadrature::gauss_kronrod;
    double error = 0.0;
    double scale = std::max(1.0, std::abs(b - a));
    double value = gauss_kronrod<double, 15>::integrate(f, a, b, 15, abs_tol / scale, &error);
    if (error > abs_tol)
        throw std::runtime_error("integrate_adaptive: tolerance not reached");
    return value;
}

} // namespace symqm
