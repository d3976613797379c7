#pragma once
// Quadrature toolkit: adaptive tanh-sinh for smooth integrands on finite
// intervals, composite Gauss-Legendre for line integrals, and a Filon-type
// rule for integrands carrying an explicit e^{i*omega*t} phase.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace weil {

using cplx = std::complex<double>;

struct QuadratureError : std::runtime_error {
    double best_estimate;
    QuadratureError(const std::string& what, double best)
        : std::runtime_error(what), best_estimate(best) {}
};

namespace detail {

inline double abs_of(double x) { return std::fabs(x); }
inline double abs_of(const cplx& x) { return std::abs(x); }

} // namespace detail

// Tanh-sinh (double-exponential) quadrature over (a, b).  The substitution
// x = mid + half*tanh(pi/2 * sinh(u)) clusters nodes doubly-exponentially at
// both endpoints, so C^inf integrands that flatten at the ends converge at
// machine precision within a few refinement levels.
template <typename T>
struct TanhSinhResult {
    T value;
    double error_estimate; // |last refinement delta|, an upper bound in practice
};

template <typename F,
          typename T = std::invoke_result_t<F, double>>
TanhSinhResult<T> tanh_sinh(F&& f, double a, double b,
                            double tol = 1e-12, int max_level = 12) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    if (half == 0.0) return {T{}, 0.0};
    const double umax = 3.8; // tanh(pi/2*sinh(3.8)) == 1 in double precision

    auto eval = [&](double u, double& w) -> T {
        const double ch = std::cosh(u);
        const double s = std::sinh(u);
        const double t = std::tanh(1.5707963267948966 * s);
        const double c = std::cosh(1.5707963267948966 * s);
        w = 1.5707963267948966 * ch / (c * c);
        const double x = mid + half * t;
        if (x <= a || x >= b) { w = 0.0; return T{}; }
        return f(x);
    };

    double h = 1.0;
    double w;
    T sum = eval(0.0, w) * w;
    for (double u = h; u <= umax; u += h) {
        double w1, w2;
        T f1 = eval(u, w1), f2 = eval(-u, w2);
        sum += f1 * w1 + f2 * w2;
    }
    T integral = sum * (h * half);
    double err = detail::abs_of(integral);

    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        T add{};
        for (double u = h; u <= umax; u += 2.0 * h) {
            double w1, w2;
            T f1 = eval(u, w1), f2 = eval(-u, w2);
            add += f1 * w1 + f2 * w2;
        }
        T refined = integral * 0.5 + add * (h * half);
        err = detail::abs_of(refined - integral);
        integral = refined;
        if (level >= 3 && err <= tol * std::max(1.0, detail::abs_of(integral)))
            return {integral, err};
    }
    if (err > 1e3 * tol * std::max(1.0, detail::abs_of(integral)))
        throw QuadratureError("tanh-sinh failed to reach tolerance", err);
    return {integral, err};
}

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by Newton
// iteration on P_n and cached.
struct GaussLegendre {
    std::vector<double> nodes, weights;

    explicit GaussLegendre(int n) {
        nodes.resize(n);
        weights.resize(n);
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (x * p0 - p1) / (x * x - 1.0);
                double dx = p0 / pp;
                x -= dx;
                if (std::fabs(dx) < 1e-15) break;
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
        }
    }

    static const GaussLegendre& order(int n) {
        static GaussLegendre g16(16), g40(40);
        if (n == 16) return g16;
        if (n == 40) return g40;
        throw std::invalid_argument("unsupported Gauss-Legendre order");
    }
};

// Composite fixed-order Gauss-Legendre over [a, b] with panels no wider than
// max_panel.  Meant for mildly oscillatory line integrands where the
// oscillation scale is known a priori.
template <typename F,
          typename T = std::invoke_result_t<F, double>>
T gauss_composite(F&& f, double a, double b, double max_panel, int order = 40) {
    const auto& gl = GaussLegendre::order(order);
    int panels = std::max(1, (int)std::ceil((b - a) / max_panel));
    double h = (b - a) / panels;
    T total{};
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h, c = lo + 0.5 * h;
        for (int i = 0; i < order; ++i)
            total += f(c + 0.5 * h * gl.nodes[i]) * (0.5 * h * gl.weights[i]);
    }
    return total;
}

// Filon-type panel: integrate H(t) * e^{i*omega*t} over [a, b] with H smooth,
// fitting H by the quadratic through the panel endpoints and midpoint and
// using exact monomial moments against the phase.  Falls back to plain
// Gauss-Legendre when the panel carries less than half a radian of phase,
// where the moment formulas lose accuracy to cancellation.
template <typename F>
cplx filon_panel(F&& H, double a, double b, double omega) {
    const double L = b - a;
    if (std::fabs(omega) * L < 0.5) {
        return gauss_composite([&](double t) { return H(t) * std::exp(cplx(0.0, omega * t)); },
                               a, b, L, 16);
    }
    // Moments m_k = int_{-1}^{1} x^k e^{i w x} dx with w = omega*L/2, then map.
    const double w = 0.5 * omega * L;
    const cplx iw(0.0, w);
    const cplx e = std::exp(iw), em = std::exp(-iw);
    const cplx m0 = (e - em) / iw;
    const cplx m1 = (e + em) / iw - (e - em) / (iw * iw);
    const cplx m2 = (e - em) / iw - 2.0 * (e + em) / (iw * iw) + 2.0 * (e - em) / (iw * iw * iw);
    const double mid = 0.5 * (a + b);
    const cplx f0 = H(a), f1 = H(mid), f2 = H(b);
    // Quadratic through (-1,f0),(0,f1),(1,f2): c0 + c1 x + c2 x^2.
    const cplx c0 = f1;
    const cplx c1 = 0.5 * (f2 - f0);
    const cplx c2 = 0.5 * (f2 + f0) - f1;
    const cplx base = c0 * m0 + c1 * m1 + c2 * m2;
    return 0.5 * L * std::exp(cplx(0.0, omega * mid)) * base;
}

// Composite Filon rule over [a, b].
template <typename F>
cplx filon_composite(F&& H, double a, double b, double omega, double max_panel) {
    int panels = std::max(1, (int)std::ceil((b - a) / max_panel));
    double h = (b - a) / panels;
    cplx total{};
    for (int p = 0; p < panels; ++p)
        total += filon_panel(H, a + p * h, a + (p + 1) * h, omega);
    return total;
}

} // namespace weil
