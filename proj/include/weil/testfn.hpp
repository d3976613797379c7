#pragma once
// Smooth compactly supported test functions g on (0, inf), their involution
// g*(x) = (1/x) g(1/x), Mellin transforms, and multiplicative convolution
// squares g0 * g0~ used by the positivity checks.

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "quadrature.hpp"

namespace weil {

struct TestFunction {
    std::function<double(double)> evaluate;
    double support_lo = 0.0;
    double support_hi = 0.0;
    bool smooth = true;
    std::string label;

    double operator()(double x) const { return evaluate(x); }
};

struct MellinValue {
    cplx s;
    cplx value;
    double quadrature_error_estimate = 0.0;
};

// Canonical C_c^inf family: g(x) = exp(-1/(1-u^2)) with
// u = (log x - log_center)/log_radius, supported on
// [exp(log_center - log_radius), exp(log_center + log_radius)].
inline TestFunction bump(double log_radius, double log_center) {
    if (!(log_radius > 0.0))
        throw std::invalid_argument("bump: log_radius must be positive");
    TestFunction g;
    g.support_lo = std::exp(log_center - log_radius);
    g.support_hi = std::exp(log_center + log_radius);
    g.label = "bump:logr=" + std::to_string(log_radius) +
              ",center=" + std::to_string(log_center);
    g.evaluate = [log_radius, log_center](double x) -> double {
        if (x <= 0.0) return 0.0;
        double u = (std::log(x) - log_center) / log_radius;
        if (std::fabs(u) >= 1.0) return 0.0;
        return std::exp(-1.0 / (1.0 - u * u));
    };
    return g;
}

inline TestFunction involution(const TestFunction& g) {
    TestFunction r;
    r.support_lo = 1.0 / g.support_hi;
    r.support_hi = 1.0 / g.support_lo;
    r.smooth = g.smooth;
    r.label = g.label + "*";
    auto eval = g.evaluate;
    r.evaluate = [eval](double x) -> double {
        if (x <= 0.0) return 0.0;
        return eval(1.0 / x) / x;
    };
    return r;
}

// ghat(s) = int_0^inf g(x) x^{s-1} dx, evaluated in log coordinates
// u = log x where the integrand g(e^u) e^{su} is smooth on a compact box.
inline MellinValue mellin(const TestFunction& g, cplx s, double tol = 1e-12) {
    const double a = std::log(g.support_lo), b = std::log(g.support_hi);
    auto res = tanh_sinh([&](double u) -> cplx {
        return g.evaluate(std::exp(u)) * std::exp(s * u);
    }, a, b, tol);
    return {s, res.value, res.error_estimate};
}

// Multiplicative autocorrelation g(x) = int_0^inf g0(x*y) g0(y) dy for real
// g0; its Mellin transform is ghat0(s) * ghat0(1-s), which on the critical
// line is |ghat0(1/2+it)|^2.  The result is cached on a log-uniform grid with
// cubic interpolation so that downstream quadratures evaluate it in O(1).
inline TestFunction mult_convolve(const TestFunction& g0, int grid_nodes = 4096) {
    const double lo = g0.support_lo / g0.support_hi;
    const double hi = g0.support_hi / g0.support_lo;
    const double ulo = std::log(lo), uhi = std::log(hi);

    // Tabulate in u = log x.  Integrand y -> g0(xy) g0(y) in log-y coords.
    const double ya = std::log(g0.support_lo), yb = std::log(g0.support_hi);
    auto grid = std::make_shared<std::vector<double>>(grid_nodes);
    const double du = (uhi - ulo) / (grid_nodes - 1);
    const auto& gl = GaussLegendre::order(40);
    for (int i = 0; i < grid_nodes; ++i) {
        const double u = ulo + i * du;
        // value = int g0(e^{u+v}) g0(e^v) e^v dv over [ya, yb]
        double acc = 0.0;
        const int panels = 8;
        const double h = (yb - ya) / panels;
        for (int p = 0; p < panels; ++p) {
            const double c = ya + (p + 0.5) * h;
            for (int k = 0; k < 40; ++k) {
                const double v = c + 0.5 * h * gl.nodes[k];
                acc += g0.evaluate(std::exp(u + v)) * g0.evaluate(std::exp(v)) *
                       std::exp(v) * (0.5 * h * gl.weights[k]);
            }
        }
        (*grid)[i] = acc;
    }

    TestFunction g;
    g.support_lo = lo;
    g.support_hi = hi;
    g.label = "conv(" + g0.label + ")";
    g.evaluate = [grid, ulo, uhi, du, grid_nodes](double x) -> double {
        if (x <= 0.0) return 0.0;
        const double u = std::log(x);
        if (u <= ulo || u >= uhi) return 0.0;
        // Catmull-Rom cubic through the four surrounding grid nodes.
        double fi = (u - ulo) / du;
        int i = (int)fi;
        if (i < 1) i = 1;
        if (i > grid_nodes - 3) i = grid_nodes - 3;
        const double t = fi - i;
        const double p0 = (*grid)[i - 1], p1 = (*grid)[i];
        const double p2 = (*grid)[i + 1], p3 = (*grid)[i + 2];
        return p1 + 0.5 * t * (p2 - p0 +
               t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
               t * (3.0 * (p1 - p2) + p3 - p0)));
    };
    return g;
}

// Pointwise sum (used for involution-symmetrized inputs g + g*).
inline TestFunction add(const TestFunction& f, const TestFunction& g) {
    TestFunction r;
    r.support_lo = std::min(f.support_lo, g.support_lo);
    r.support_hi = std::max(f.support_hi, g.support_hi);
    r.smooth = f.smooth && g.smooth;
    r.label = f.label + "+" + g.label;
    auto fe = f.evaluate, ge = g.evaluate;
    r.evaluate = [fe, ge](double x) { return fe(x) + ge(x); };
    return r;
}

inline TestFunction scale(const TestFunction& f, double c) {
    TestFunction r = f;
    r.label = "scale(" + f.label + ")";
    auto fe = f.evaluate;
    r.evaluate = [fe, c](double x) { return c * fe(x); };
    return r;
}

} // namespace weil
