#pragma once
// Truncation layer over the explicit-formula terms: the truncated
// continuous-spectrum functional with its oscillatory principal-value
// integral, the resulting lower bound for sums over zeros on a T-grid, the
// positivity functional for multiplicative convolution squares, and the
// scalar Maass-Selberg inner-product identity with its coincident limit.

#include <algorithm>
#include <string>
#include <vector>

#include "explicit_formula.hpp"

namespace weil {

struct TruncationParams {
    double T = 2.0;
    double pv_epsilon = 0.02;
    double line_cutoff = 200.0;

    void validate() const {
        if (!(T > 0.0)) throw std::invalid_argument("truncation: T must be > 0");
        if (!(pv_epsilon > 0.0 && pv_epsilon < 1.0))
            throw std::invalid_argument("truncation: pv_epsilon out of range");
        if (!(line_cutoff > 10.0))
            throw std::invalid_argument("truncation: line_cutoff too small");
    }
    // The positivity statement additionally needs T > sqrt(3)/2.
    bool in_positivity_range() const { return T > std::sqrt(3.0) / 2.0; }
};

// (1/(4 pi)) int_R ghat(it) {conj(m(it)) T^{it} - m(it) T^{-it}} dt / (it),
// the boundary term produced by the truncated-Eisenstein inner product.
// Folding t -> -t (the integrand is conjugate-symmetric) gives
// (1/(2 pi)) int_0^inf 2 Re[ghat(it)] Im[conj(m(it)) T^{it}] dt / t.
// The integrand is regular at t = 0: m(0) = -1 makes the brace vanish
// linearly.  A symmetric exclusion window plus two-level Richardson
// extrapolation in the window width removes the O(eps) bias from skipping
// [0, eps].  Past t = 5 the oscillation of conj(m(it)) T^{it} (frequency
// log T minus the local phase speed of m) is handled by moment-fitted
// quadrature.
inline double truncation_pv_integral(const TestFunction& g,
                                     const TruncationParams& params) {
    params.validate();
    const double logT = std::log(params.T);
    auto f = [&](double t) -> cplx {
        return 2.0 * mellin(g, cplx(0.0, t)).value.real() *
               std::conj(m_scalar(cplx(0.0, t))) *
               std::exp(cplx(0.0, logT * t));
    };
    auto inner = [&](double eps) -> double {
        return gauss_composite(
            [&](double t) -> double { return f(t).imag() / t; }, eps, 5.0, 1.0,
            40);
    };
    const double e = params.pv_epsilon;
    const double v1 = inner(e), v2 = inner(0.5 * e), v3 = inner(0.25 * e);
    const double r1 = 2.0 * v2 - v1, r2 = 2.0 * v3 - v2;
    double value = (8.0 * r2 - r1) / 7.0;

    // Oscillatory tail: panels of width 1/2; on each panel the fast factor
    // e^{i w_eff t} carries log T minus the local phase speed of m(it), the
    // remaining amplitude is slowly varying and safe to moment-fit.
    double t0 = 5.0;
    while (t0 < params.line_cutoff) {
        const double t1 = std::min(t0 + 0.5, params.line_cutoff);
        const double mid = 0.5 * (t0 + t1);
        const double w_eff =
            logT - m_logderiv(cplx(0.0, mid)).real();
        auto amp = [&](double t) -> cplx {
            return f(t) * std::exp(cplx(0.0, -w_eff * t)) / t;
        };
        value += filon_panel(amp, t0, t1, w_eff).imag();
        t0 = t1;
        if (t0 > 30.0 &&
            std::abs(mellin(g, cplx(0.0, t0)).value) < 1e-15)
            break;
    }
    return value / (2.0 * M_PI);
}

// g(1) log T + continuous-spectrum term + principal-value integral; for
// multiplicative convolution squares this truncated functional is
// nonnegative whenever T > sqrt(3)/2.
inline double truncated_spectral_term(const TestFunction& g,
                                      const TruncationParams& params) {
    return g(1.0) * std::log(params.T) + spectral_lhs_zeta(g) +
           truncation_pv_integral(g, params);
}

// Lower bound for sum_rho ghat(rho):  zero_sum >= -g(1) log T - PV - R, where
// R collects every non-zero-sum term of the resolved zeta identity.
inline double lower_bound_rhs(const TestFunction& g, double T) {
    TruncationParams params;
    params.T = T;
    if (!params.in_positivity_range())
        throw std::invalid_argument("lower_bound_rhs: need T > sqrt(3)/2");
    const double g1 = g(1.0);
    const double ghat1 = mellin(g, cplx(1.0, 0.0)).value.real();
    const double ghat0 = mellin(g, cplx(0.0, 0.0)).value.real();
    const double J =
        tanh_sinh([&](double x) { return g(x) / (x + 1.0); }, 1.0,
                  std::max(g.support_hi, 1.5), 1e-13)
            .value;
    const double R = prime_sum_g(g) - ghat1 - 0.5 * ghat0 +
                     boundary_kernel_integral(g) + 0.5 * J +
                     0.5 * (std::log(4.0 * M_PI) + consts::euler_gamma) * g1;
    return -g1 * std::log(T) - truncation_pv_integral(g, params) - R;
}

struct WeilFunctionalResult {
    double via_zero_sum = 0.0;     // zero_sum(mult_convolve(g0))
    double via_square_sum = 0.0;   // sum_{gamma>0} 2 |ghat0(1/2+i gamma)|^2
    double tail_bound = 0.0;
};

inline WeilFunctionalResult weil_functional(const TestFunction& g0,
                                            const ZeroList& zeros) {
    WeilFunctionalResult r;
    const TestFunction h = mult_convolve(g0, 16384);
    const auto zs = zero_sum(zeros, h);
    r.via_zero_sum = zs.value;
    r.tail_bound = zs.tail_bound;
    for (double gamma : zeros.gammas) {
        const double a = std::abs(mellin(g0, cplx(0.5, gamma)).value);
        r.via_square_sum += 2.0 * a * a;
    }
    return r;
}

struct PositivityRow {
    double support;      // additive support half-width of the square
    double min_value;    // minimum functional value over the shape family
    double tail_bound;   // tail bound at the minimizing shape
    std::string shape;   // label of the minimizing g0
};

// Sweep the additive support half-width t of g0 * g0~ over the grid; at each
// t evaluate the functional for a small family of bump shapes fitting inside
// and report the minimum.
inline std::vector<PositivityRow> positivity_scan(
    const std::vector<double>& support_grid, const ZeroList& zeros) {
    if (support_grid.empty())
        throw std::invalid_argument("positivity_scan: empty grid");
    std::vector<PositivityRow> table;
    for (double t : support_grid) {
        if (!(t > 0.0))
            throw std::invalid_argument("positivity_scan: support must be > 0");
        const TestFunction shapes[] = {
            bump(0.5 * t, 0.0),
            bump(0.25 * t, 0.25 * t),
            bump(0.25 * t, -0.25 * t),
            add(bump(0.3 * t, 0.15 * t), bump(0.3 * t, -0.15 * t)),
        };
        PositivityRow row{t, 0.0, 0.0, ""};
        bool first = true;
        for (const auto& g0 : shapes) {
            const auto wf = weil_functional(g0, zeros);
            if (first || wf.via_square_sum < row.min_value) {
                row.min_value = wf.via_square_sum;
                row.tail_bound = wf.tail_bound;
                row.shape = g0.label;
                first = false;
            }
        }
        table.push_back(row);
    }
    return table;
}

struct MsrScalarState {
    cplx s1, s2;
    cplx phi1 = 1.0, phi2 = 1.0;
    double T = 2.0;
};

// Scalar inner product of two truncated Eisenstein-type packets:
//   (2/(s1+s2)) { p T^{s1+s2} - m(s1) conj(m(conj s2)) p T^{-(s1+s2)} }
// + (2/(s1-s2)) { conj(m(conj s2)) p T^{s1-s2} - m(s1) p T^{-(s1-s2)} },
// p = phi1 conj(phi2).  Valid with Re s1 > Re s2; coincident or opposite
// spectral parameters are domain errors (see msr_limit for the former).
inline cplx msr_closed_form(const MsrScalarState& st) {
    if (std::abs(st.s1 + st.s2) < 1e-12)
        throw std::domain_error("msr_closed_form: s1 + s2 = 0");
    if (std::abs(st.s1 - st.s2) < 1e-12)
        throw std::domain_error("msr_closed_form: s1 - s2 = 0");
    if (!(st.T > 0.0)) throw std::domain_error("msr_closed_form: T <= 0");
    const cplx p = st.phi1 * std::conj(st.phi2);
    const cplx m1 = m_scalar(st.s1);
    const cplx m2c = std::conj(m_scalar(std::conj(st.s2)));
    auto Tpow = [&](cplx e) { return std::exp(e * std::log(st.T)); };
    const cplx sp = st.s1 + st.s2, sm = st.s1 - st.s2;
    return 2.0 / sp * (p * Tpow(sp) - m1 * m2c * p * Tpow(-sp)) +
           2.0 / sm * (m2c * p * Tpow(sm) - m1 * p * Tpow(-sm));
}

// Limit of msr_closed_form(s + h, -s) as h -> 0 (first order in h):
//   4 log T p - 2 (m'/m)(s) p + m(-s) p T^{2s}/s - m(s) p T^{-2s}/s.
inline cplx msr_limit(cplx s, double T, cplx phi1 = 1.0, cplx phi2 = 1.0) {
    if (std::abs(s) < 1e-12) throw std::domain_error("msr_limit: s = 0");
    if (!(T > 0.0)) throw std::domain_error("msr_limit: T <= 0");
    const cplx p = phi1 * std::conj(phi2);
    auto Tpow = [&](cplx e) { return std::exp(e * std::log(T)); };
    return 4.0 * std::log(T) * p - 2.0 * m_logderiv(s) * p +
           m_scalar(-s) * p * Tpow(2.0 * s) / s -
           m_scalar(s) * p * Tpow(-2.0 * s) / s;
}

} // namespace weil
