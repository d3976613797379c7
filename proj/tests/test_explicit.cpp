#include <catch_amalgamated.hpp>

#include "weil/explicit_formula.hpp"

using namespace weil;
using Catch::Approx;

TEST_CASE("prime-power sum: empty ranges and direct enumeration") {
    DirichletCharacter one(1, 0);
    // support inside (1,2): no integer n >= 2 contributes from g itself
    auto narrow = bump(0.3, 0.35); // support (e^{0.05}, e^{0.65}) in (1, 2)
    CHECK(prime_sum_g(narrow) == 0.0);

    auto g = bump(std::log(8.0), 0.0);
    auto gs = involution(g);
    double manual = 0.0;
    for (int n : {2, 3, 4, 5, 7, 8})
        manual += von_mangoldt(n) * (g(n) + gs(n));
    CHECK(prime_sum(g, one) == Approx(manual).margin(1e-14));
}

TEST_CASE("even prime powers drop out for the odd character mod 4") {
    DirichletCharacter chi(4, 1);
    auto g = bump(std::log(8.0), 0.0);
    auto gs = involution(g);
    double manual = 0.0;
    for (int n : {3, 5, 7}) // 2, 4, 8 killed by chi(2) = 0
        manual += von_mangoldt(n) * (chi(n).real()) * (g(n) + gs(n));
    CHECK(prime_sum(g, chi) == Approx(manual).margin(1e-14));
}

TEST_CASE("kernel integral vanishes with its input") {
    // support away from 1 on both sides and from all of [1, inf):
    // g and g* both vanish on [1, inf) is impossible for a one-sided bump,
    // so use the linearity-friendly fact g(1) = 0 and check the constant term
    // drops out.
    auto g = bump(0.2, 1.0); // support (e^{0.8}, e^{1.2}), g(1) = 0
    const double k = archimedean_kernel_term(g, 0.0, 0.0, 2);
    // only the integral over the support of g remains; compare to a direct
    // quadrature of x^2 g(x) / (x (x^2-1)) plus the reflected part
    auto gs = involution(g);
    const double direct =
        tanh_sinh(
            [&](double x) {
                return (x * x * g(x) + x * x * gs(x)) / (x * (x * x - 1.0));
            },
            std::exp(0.8), std::exp(1.2), 1e-13)
            .value;
    CHECK(k == Approx(direct).margin(1e-10));
}

TEST_CASE("kernel and line-integral forms agree") {
    auto g = bump(std::log(4.0), 0.0);
    struct Case {
        double a, b;
        int M;
    } cases[] = {{0.0, 0.0, 2}, {1.0, 0.0, 2}, {0.0, 0.5, 2}, {0.0, 0.0, 1}};
    for (const auto& c : cases) {
        CAPTURE(c.a, c.b, c.M);
        const double kernel = archimedean_kernel_term(g, c.a, c.b, c.M);
        const double line = gamma_line_integral(
            g, c.a, c.b,
            c.M == 2 ? GammaKind::real_place : GammaKind::complex_place);
        CHECK(std::fabs(kernel + line) < 1e-8);
    }
}

TEST_CASE("line integral is invariant under conjugating the shift") {
    auto g = bump(std::log(3.0), 0.0);
    const double plus = gamma_line_integral(g, 0.0, 0.5, GammaKind::real_place);
    const double minus =
        gamma_line_integral(g, 0.0, -0.5, GammaKind::real_place);
    CHECK(plus == Approx(minus).margin(1e-9));
}

TEST_CASE("kernel arguments validated") {
    auto g = bump(0.5, 0.0);
    CHECK_THROWS_AS(archimedean_kernel_term(g, 0.0, 0.0, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(archimedean_kernel_term(g, -1.0, 0.0, 2),
                    std::invalid_argument);
}

TEST_CASE("local factor log-derivative: closed form vs 200-term series") {
    DirichletCharacter one(1, 0);
    DirichletCharacter chi3(3, 1);
    struct Case {
        std::uint64_t p;
        cplx s;
    } cases[] = {{2, {1.5, 0.0}}, {3, {1.5, 0.0}}, {5, {2.0, 1.0}}};
    for (const auto& chi : {one, chi3}) {
        for (const auto& c : cases) {
            const cplx closed = euler_factor_logderiv(c.p, c.s, chi);
            const cplx series =
                euler_factor_logderiv_series(c.p, c.s, chi, 200);
            CHECK(std::abs(closed - series) < 1e-12);
        }
    }
}

TEST_CASE("continuous-spectrum term is linear") {
    auto g = bump(0.9, 0.0);
    const double one = spectral_lhs_zeta(g);
    const double two = spectral_lhs_zeta(scale(g, 2.0));
    CHECK(two == Approx(2.0 * one).margin(1e-10));
}

TEST_CASE("continuous-spectrum term under symmetrization") {
    // For h = g + g* the involution fixes h pointwise, so both evaluations
    // are trivially equal; the term splits linearly across the two pieces.
    auto g = bump(0.8, 0.25);
    auto h = add(g, involution(g));
    auto hs = involution(h);
    for (double x : {0.6, 1.0, 1.4}) CHECK(h(x) == Approx(hs(x)).margin(1e-14));
    const double vh = spectral_lhs_zeta(h);
    const double vg = spectral_lhs_zeta(g);
    const double vgs = spectral_lhs_zeta(involution(g));
    CHECK(vh == Approx(vg + vgs).margin(1e-9));
}

TEST_CASE("zeta identity, resolved variant, moderate zero height") {
    auto zl = compute_zeros("zeta", 250.0);
    for (double logr : {std::log(2.0), 0.5}) {
        auto g = bump(logr, 0.0);
        const double lhs = spectral_lhs_zeta(g);
        auto rep = weil_rhs_zeta(g, FormulaVariant::thm_1_1_sign_resolved, zl);
        CAPTURE(logr, lhs, rep.rhs_total, rep.zero_sum_tail);
        CHECK(std::fabs(lhs - rep.rhs_total) <=
              1e-6 + rep.zero_sum_tail);
        // bookkeeping: total is exactly the sum of its parts
        CHECK(rep.rhs_total == rep.zero_sum_side + rep.pole_term +
                                   rep.prime_sum + rep.conductor_term +
                                   rep.archimedean_term);
    }
}

TEST_CASE("zeta identity, printed variant, has a documented residual") {
    auto zl = compute_zeros("zeta", 250.0);
    auto g = bump(std::log(2.0), 0.0);
    const double lhs = spectral_lhs_zeta(g);
    auto rep = weil_rhs_zeta(g, FormulaVariant::thm_1_1_as_stated, zl);
    // the printed sign set fails by an O(0.1) mismatch on this input
    CHECK(std::fabs(lhs - rep.rhs_total) > 1e-2);
}

TEST_CASE("Dirichlet identity for the odd character mod 4") {
    DirichletCharacter chi(4, 1);
    auto zl = compute_zeros("dirichlet:4.1", 120.0);
    auto g = bump(std::log(8.0), 0.3);
    const auto zs = zero_sum(zl, g, 4.0);
    auto rep = weil_rhs(g, chi);
    CAPTURE(zs.value, rep.rhs_total, zs.tail_bound);
    CHECK(std::fabs(zs.value - rep.rhs_total) <= 1e-5 + zs.tail_bound);
    CHECK(rep.pole_term == 0.0); // no pole for a nontrivial character
    CHECK(rep.conductor_term == Approx(std::log(4.0) * g(1.0)));
}

TEST_CASE("Dirichlet report for the trivial character keeps the pole term") {
    DirichletCharacter one(1, 0);
    auto g = bump(0.4, 0.0);
    auto rep = weil_rhs(g, one);
    const double ghat0 = mellin(g, cplx(0.0, 0.0)).value.real();
    const double ghat1 = mellin(g, cplx(1.0, 0.0)).value.real();
    CHECK(rep.pole_term == Approx(ghat0 + ghat1).margin(1e-12));
    CHECK(rep.conductor_term == 0.0);
    CHECK(rep.variant == FormulaVariant::thm_2_3);
}

TEST_CASE("zeta report rejects the Dirichlet variant tag") {
    auto zl = compute_zeros("zeta", 30.0);
    CHECK_THROWS_AS(
        weil_rhs_zeta(bump(0.5, 0.0), FormulaVariant::thm_2_3, zl),
        std::invalid_argument);
}
