#include <catch_amalgamated.hpp>

#include "weil/spectral.hpp"

using namespace weil;
using Catch::Approx;

TEST_CASE("truncation parameters validated") {
    TruncationParams p;
    p.T = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = TruncationParams{};
    p.pv_epsilon = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = TruncationParams{};
    CHECK_NOTHROW(p.validate());
    p.T = 0.5;
    CHECK_FALSE(p.in_positivity_range());
    p.T = 1.0;
    CHECK(p.in_positivity_range());
}

TEST_CASE("truncated functional is nonnegative on convolution squares") {
    auto h = mult_convolve(bump(0.3, 0.0));
    const double scale = mellin(h, cplx(0.5, 0.0)).value.real();
    for (double T : {1.0, 2.0, 10.0}) {
        TruncationParams p;
        p.T = T;
        const double v = truncated_spectral_term(h, p);
        CAPTURE(T, v);
        CHECK(v >= -1e-8 * std::max(1.0, scale));
    }
}

TEST_CASE("large-T slope of the truncated functional is g(1)") {
    auto h = mult_convolve(bump(0.25, 0.0));
    TruncationParams a, b;
    a.T = 1000.0;
    b.T = 1000.0 * 1.02;
    const double slope = (truncated_spectral_term(h, b) -
                          truncated_spectral_term(h, a)) /
                         std::log(1.02);
    CHECK(slope == Approx(h(1.0)).margin(5e-3));
}

TEST_CASE("zero-sum lower bound holds across T") {
    auto h = mult_convolve(bump(0.3, 0.0));
    auto zl = compute_zeros("zeta", 120.0);
    const auto zs = zero_sum(zl, h);
    for (double T : {1.0, 2.0, 10.0, 100.0}) {
        const double bound = lower_bound_rhs(h, T);
        CAPTURE(T, bound, zs.value);
        CHECK(zs.value - bound >= -1e-6);
    }
    CHECK_THROWS_AS(lower_bound_rhs(h, 0.5), std::invalid_argument);
}

TEST_CASE("bound decreases in T through the log term") {
    auto h = mult_convolve(bump(0.2, 0.0));
    // holding the oscillatory part aside, the -g(1) log T term dominates for
    // large T: compare far-apart T values
    const double b1 = lower_bound_rhs(h, 2.0);
    const double b2 = lower_bound_rhs(h, 100.0);
    CHECK(b2 < b1);
}

TEST_CASE("functional evaluates identically along both code paths") {
    auto zl = compute_zeros("zeta", 120.0);
    auto g0 = bump(0.25, 0.0);
    const auto wf = weil_functional(g0, zl);
    CHECK(std::fabs(wf.via_zero_sum - wf.via_square_sum) < 1e-9);
    CHECK(wf.via_square_sum >= 0.0);
}

TEST_CASE("zero input gives zero functional") {
    auto zl = compute_zeros("zeta", 30.0);
    auto z = scale(bump(0.3, 0.0), 0.0);
    const auto wf = weil_functional(z, zl);
    CHECK(wf.via_square_sum == 0.0);
    CHECK(std::fabs(wf.via_zero_sum) < 1e-14);
}

TEST_CASE("positivity scan stays above the tail bound") {
    auto zl = compute_zeros("zeta", 120.0);
    const auto table =
        positivity_scan({0.5 * std::log(2.0), std::log(2.0)}, zl);
    REQUIRE(table.size() == 2);
    for (const auto& row : table) {
        CAPTURE(row.support, row.min_value, row.tail_bound);
        CHECK(row.min_value >= -row.tail_bound);
        CHECK_FALSE(row.shape.empty());
    }
    CHECK_THROWS_AS(positivity_scan({}, zl), std::invalid_argument);
}

TEST_CASE("truncated inner product: domain errors") {
    MsrScalarState st;
    st.s1 = cplx(0.3, 0.0);
    st.s2 = cplx(-0.3, 0.0);
    CHECK_THROWS_AS(msr_closed_form(st), std::domain_error);
    st.s2 = st.s1;
    CHECK_THROWS_AS(msr_closed_form(st), std::domain_error);
    CHECK_THROWS_AS(msr_limit(cplx(0.0, 0.0), 2.0), std::domain_error);
}

TEST_CASE("truncated inner product: hermitian symmetry") {
    MsrScalarState st{cplx(0.4, 1.0), cplx(0.2, -0.5), cplx(1.0, 0.5),
                      cplx(0.7, -0.2), 2.0};
    MsrScalarState sw{std::conj(st.s2), std::conj(st.s1), st.phi2, st.phi1,
                      st.T};
    const cplx a = msr_closed_form(st);
    const cplx b = msr_closed_form(sw);
    CHECK(std::abs(a - std::conj(b)) < 1e-10);
}

TEST_CASE("truncated inner product: T-derivative matches term-by-term") {
    MsrScalarState st{cplx(0.4, 0.0), cplx(0.2, 0.0), 1.0, 1.0, 2.0};
    auto at = [&](double T) {
        MsrScalarState s = st;
        s.T = T;
        return msr_closed_form(s);
    };
    const double h = 1e-5;
    const cplx numeric = (at(2.0 + h) - at(2.0 - h)) / (2.0 * h);
    // termwise: d/dT of T^e is e T^{e-1}
    const cplx p = st.phi1 * std::conj(st.phi2);
    const cplx m1 = m_scalar(st.s1);
    const cplx m2c = std::conj(m_scalar(std::conj(st.s2)));
    auto dT = [&](cplx e) { return e * std::pow(2.0, e - cplx(1.0)); };
    const cplx sp = st.s1 + st.s2, sm = st.s1 - st.s2;
    const cplx term = 2.0 / sp * (p * dT(sp) - m1 * m2c * p * dT(-sp)) +
                      2.0 / sm * (m2c * p * dT(sm) - m1 * p * dT(-sm));
    CHECK(std::abs(numeric - term) < 1e-8);
}

TEST_CASE("coincident limit is approached at first order") {
    for (cplx s : {cplx(0.3, 2.0), cplx(0.2, -1.0)}) {
        const cplx lim = msr_limit(s, 2.0);
        double diffs[2];
        int i = 0;
        for (double h : {1e-3, 1e-4}) {
            MsrScalarState st{s + h, -s, 1.0, 1.0, 2.0};
            diffs[i++] = std::abs(msr_closed_form(st) - lim);
        }
        const double ratio = diffs[0] / diffs[1];
        CAPTURE(s, diffs[0], diffs[1]);
        CHECK(ratio > 8.0);
        CHECK(ratio < 12.0);
    }
}

TEST_CASE("coincident limit carries the 4 log T slope") {
    const cplx s(0.3, 2.0);
    const cplx d =
        msr_limit(s, 4.0) - msr_limit(s, 2.0) -
        (m_scalar(-s) * (std::pow(4.0, 2.0 * s) - std::pow(2.0, 2.0 * s)) / s -
         m_scalar(s) *
             (std::pow(4.0, -2.0 * s) - std::pow(2.0, -2.0 * s)) / s);
    CHECK(std::abs(d - cplx(4.0 * std::log(2.0), 0.0)) < 1e-10);
}

TEST_CASE("limit of conjugate pair is real on the spectral line") {
    const cplx s(0.0, 1.5);
    const cplx sum = msr_limit(s, 2.0) + msr_limit(std::conj(s), 2.0);
    CHECK(std::fabs(sum.imag()) < 1e-9);
}
