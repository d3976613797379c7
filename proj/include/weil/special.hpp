#pragma once
// From-scratch complex special functions: log-gamma and digamma via
// Stirling + upward recurrence, Riemann and Hurwitz zeta via Euler-Maclaurin
// (with termwise-differentiated derivative), the completed zeta
// xi(s) = pi^{-s/2} Gamma(s/2) zeta(s), the scattering scalar
// m(s) = xi(s)/xi(1+s) with a regularized log-derivative near s = 0, and the
// principal-value integral representing -2 psi(s).

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "quadrature.hpp"

namespace weil {

struct PrecisionConfig {
    int euler_maclaurin_terms = 12;    // Bernoulli correction terms
    double stirling_cutoff = 12.0;     // recurrence target for Re z
    double target_abs_error = 1e-12;
};

inline PrecisionConfig& precision() {
    static PrecisionConfig cfg;
    return cfg;
}

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

namespace consts {
inline constexpr double euler_gamma = 0.57721566490153286061;
// Stieltjes constants gamma_1..gamma_6 (gamma_0 = euler_gamma).
inline constexpr double stieltjes[7] = {
    0.57721566490153286061, -0.072815845483676724861,
    -0.0096903631928723184845, 0.0020538344203033458662,
    0.0023253700654673000575, 0.00079332381730106270175,
    -0.00023876934543019960987};
// B_2, B_4, ..., B_30.
inline constexpr double bernoulli2k[15] = {
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730,
    7.0 / 6, -3617.0 / 510, 54.971177944862155388, -529.12424242424242424,
    6192.1231884057971014, -86580.253113553113553, 1425517.1666666666667,
    -27298231.067816091954, 601580873.90064236838};
} // namespace consts

namespace detail {

inline bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 &&
           z.real() == std::floor(z.real());
}

// Stirling series for log Gamma, valid for Re z >= stirling_cutoff.
inline cplx log_gamma_stirling(cplx z) {
    const cplx lz = std::log(z);
    cplx r = (z - 0.5) * lz - z + 0.91893853320467274178; // 0.5*log(2*pi)
    cplx zpow = 1.0 / z;
    const cplx z2 = 1.0 / (z * z);
    for (int k = 1; k <= 9; ++k) {
        r += consts::bernoulli2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * zpow;
        zpow *= z2;
    }
    return r;
}

inline cplx digamma_stirling(cplx z) {
    cplx r = std::log(z) - 0.5 / z;
    cplx zpow = 1.0 / (z * z);
    const cplx z2 = zpow;
    for (int k = 1; k <= 9; ++k) {
        r -= consts::bernoulli2k[k - 1] / (2.0 * k) * zpow;
        zpow *= z2;
    }
    return r;
}

} // namespace detail

// Principal-branch log Gamma.  Conjugate symmetry handles Im z < 0; upward
// recurrence moves the argument to the Stirling region.
inline cplx log_gamma(cplx z) {
    if (detail::is_nonpositive_integer(z))
        throw PoleError("log_gamma: pole at nonpositive integer");
    if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
    const double cut = precision().stirling_cutoff;
    cplx shift{};
    while (z.real() < cut && std::abs(z) < cut) {
        shift += std::log(z);
        z += 1.0;
    }
    return detail::log_gamma_stirling(z) - shift;
}

inline cplx digamma(cplx z) {
    if (detail::is_nonpositive_integer(z))
        throw PoleError("digamma: pole at nonpositive integer");
    if (z.imag() < 0.0) return std::conj(digamma(std::conj(z)));
    const double cut = precision().stirling_cutoff;
    cplx shift{};
    while (z.real() < cut && std::abs(z) < cut) {
        shift += 1.0 / z;
        z += 1.0;
    }
    return detail::digamma_stirling(z) - shift;
}

// Euler-Maclaurin evaluation of the Hurwitz zeta zeta(s, a) together with its
// s-derivative (termwise differentiation of the same expansion).  a = 1 gives
// the Riemann zeta.  Accurate in -2 <= Re s <= 4, |Im s| <= ~1200 with the
// default term counts.
struct ZetaPair {
    cplx value;
    cplx deriv;
};

inline ZetaPair hurwitz_zeta_with_deriv(cplx s, double a = 1.0) {
    if (s == cplx(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
    const int K = precision().euler_maclaurin_terms;
    const int N = std::max(25, (int)std::ceil(1.3 * std::fabs(s.imag())) + 8);

    cplx sum{}, dsum{};
    for (int n = 0; n < N; ++n) {
        const double na = n + a;
        const double ln = std::log(na);
        const cplx t = std::exp(-s * ln);
        sum += t;
        dsum += -ln * t;
    }
    const double Na = N + a;
    const double lN = std::log(Na);
    const cplx NpS = std::exp(-s * lN); // Na^{-s}

    // Tail: Na^{1-s}/(s-1) + Na^{-s}/2.
    const cplx t1 = NpS * Na / (s - 1.0);
    sum += t1 + 0.5 * NpS;
    dsum += -lN * t1 - t1 / (s - 1.0) - 0.5 * lN * NpS;

    // Bernoulli corrections: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * Na^{-s-2k+1}.
    cplx poch = s;            // rising product s(s+1)...(s+2k-2)
    cplx dpoch = 1.0;         // its derivative
    double fact = 2.0;        // (2k)!
    for (int k = 1; k <= K; ++k) {
        const cplx np = std::exp(-(s + (2.0 * k - 1.0)) * lN);
        const double coef = consts::bernoulli2k[k - 1] / fact;
        sum += coef * poch * np;
        dsum += coef * (dpoch * np - lN * poch * np);
        // extend the product by (s+2k-1)(s+2k) for the next k
        const cplx f1 = s + (2.0 * k - 1.0), f2 = s + (2.0 * k);
        dpoch = dpoch * f1 * f2 + poch * (f1 + f2);
        poch *= f1 * f2;
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return {sum, dsum};
}

inline cplx zeta(cplx s) { return hurwitz_zeta_with_deriv(s).value; }
inline cplx zeta_deriv(cplx s) { return hurwitz_zeta_with_deriv(s).deriv; }
inline cplx hurwitz_zeta(cplx s, double a) {
    if (!(a > 0.0 && a <= 1.0))
        throw std::domain_error("hurwitz_zeta: need 0 < a <= 1");
    return hurwitz_zeta_with_deriv(s, a).value;
}

inline cplx zeta_logderiv(cplx s) {
    auto z = hurwitz_zeta_with_deriv(s);
    if (std::abs(z.value) < 1e-10)
        throw PoleError("zeta_logderiv: too close to a zero of zeta");
    return z.deriv / z.value;
}

// xi(s) = pi^{-s/2} Gamma(s/2) zeta(s); satisfies xi(s) = xi(1-s) and has
// simple poles at s = 0 and s = 1 (no polynomial factor is included).
inline cplx completed_zeta(cplx s) {
    if (s == cplx(0.0, 0.0) || s == cplx(1.0, 0.0))
        throw PoleError("completed_zeta: pole at s = 0 or 1");
    return std::exp(-0.5 * s * std::log(M_PI) + log_gamma(0.5 * s)) * zeta(s);
}

inline cplx m_scalar(cplx s) {
    return completed_zeta(s) / completed_zeta(1.0 + s);
}

// m'/m(s) = (1/2)psi(s/2) + zeta'/zeta(s) - (1/2)psi((1+s)/2) - zeta'/zeta(1+s).
// The two 1/s singularities at s = 0 (psi(s/2) pole and zeta(1+s) pole) cancel;
// near s = 0 both are removed analytically: (1/2)psi(s/2) = (1/2)psi(s/2+1) - 1/s
// and zeta'/zeta(1+s) = P'/P(s) - 1/s where P(s) = s*zeta(1+s) is entire with
// Taylor coefficients given by the Stieltjes constants.  The limit at s = 0 is
// log(4*pi) - gamma.
inline cplx m_logderiv(cplx s) {
    auto guard = [](cplx w) {
        auto z = hurwitz_zeta_with_deriv(w);
        if (std::abs(z.value) < 1e-8)
            throw PoleError("m_logderiv: input within 1e-8 of a zeta zero");
        return z.deriv / z.value;
    };
    if (std::abs(s) < 0.2) {
        // P(s) = 1 + g0 s - g1 s^2 + (g2/2!) s^3 - ... (alternating Stieltjes)
        cplx P = 1.0, dP = 0.0, spow = 1.0;
        double fact = 1.0;
        for (int n = 0; n <= 6; ++n) {
            const double c = (n == 0 ? consts::stieltjes[0]
                                     : (n % 2 ? -1.0 : 1.0) * consts::stieltjes[n] / fact);
            dP += c * (n + 1.0) * spow;
            P += c * spow * s;
            spow *= s;
            fact *= (n + 1.0);
        }
        cplx zl0 = (std::abs(s) < 1e-14)
                       ? cplx(std::log(2.0 * M_PI), 0.0) // zeta'/zeta(0)
                       : guard(s);
        return 0.5 * digamma(0.5 * s + 1.0) + zl0 -
               0.5 * digamma(0.5 * (1.0 + s)) - dP / P;
    }
    return 0.5 * digamma(0.5 * s) + guard(s) -
           0.5 * digamma(0.5 * (1.0 + s)) - guard(1.0 + s);
}

// Principal-value integral equal to -2 psi(s) for Re s > 0:
//   pv int_0^inf f0(x)^{2s-1} / f1(x) dx/x,  f0 = min(x^{1/2}, x^{-1/2}),
//   f1 = f0^{-1} - f0, with the t -> inf regularization
//   I(t) = int (1 - f0^{2t}) f0^{2s-1}/f1 dx/x  - 2 log t.
// In u = log x the folded integrand is (1 - e^{-tu}) e^{-(s-1/2)u}/sinh(u/2).
// We split off 2 e^{-u}/u (a Frullani term integrating to 2 log(1+t)), so the
// remainder converges to the limit with an O(1/t) error removed by a two-step
// Richardson extrapolation at cutoff, 2*cutoff, 4*cutoff.
inline cplx gauss_weil_pv(cplx s, double cutoff = 1000.0) {
    if (!(s.real() > 0.0))
        throw std::domain_error("gauss_weil_pv: need Re s > 0");
    const double umax = std::min(400.0, 80.0 / std::min(1.0, s.real()));
    auto core = [&](double u) -> cplx {
        // e^{-(s-1/2)u}/sinh(u/2) - 2 e^{-u}/u, smooth at u = 0
        if (u < 1e-7) {
            // both pieces ~ 2/u; expand each to first order to avoid the
            // cancellation: the difference is (3-2s) + (s^2-s-5/6)u + O(u^2)
            return (3.0 - 2.0 * s) + u * (s * s - s - 5.0 / 6.0);
        }
        return std::exp(-(s - 0.5) * u) / std::sinh(0.5 * u) -
               2.0 * std::exp(-u) / u;
    };
    auto I_of = [&](double t) -> cplx {
        auto r = tanh_sinh([&](double u) -> cplx {
            return core(u) * (1.0 - std::exp(-t * u));
        }, 0.0, umax, 1e-13);
        return r.value + 2.0 * std::log1p(t) - 2.0 * std::log(t);
    };
    const cplx i1 = I_of(cutoff), i2 = I_of(2.0 * cutoff), i3 = I_of(4.0 * cutoff);
    // eliminate 1/t then 1/t^2
    const cplx r1 = 2.0 * i2 - i1, r2 = 2.0 * i3 - i2;
    return (4.0 * r2 - r1) / 3.0;
}

// Labeled variant pv0 = pv + 2 log(2 pi) used only in reporting.
inline cplx gauss_weil_pv0(cplx s, double cutoff = 1000.0) {
    return gauss_weil_pv(s, cutoff) + 2.0 * std::log(2.0 * M_PI);
}

} // namespace weil
