#include <doctest.h>

#include <cmath>

#include "gausspack/amplifier.hpp"
#include "gausspack/dynamics.hpp"

using namespace gausspack;

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Figure parameter sets (omega, |xi|, Omega): 4a = (6, 4 sqrt 2, 2),
// 4b = (5, 3, 4), 5a = (3/4, 1/2, sqrt 5/4); real pump, rho = 1.
const AmplifierParams kFig4a{6.0, kSqrt2, cplx{1.0, 0.0}};
const AmplifierParams kFig4b{5.0, 0.75, cplx{1.0, 0.0}};
const AmplifierParams kFig5a{0.75, 0.125, cplx{1.0, 0.0}};

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return out;
}

}  // namespace

TEST_CASE("alpha_dot_initial") {
    CHECK(std::abs(alpha_dot_initial(kFig4a, cplx{0, 0})) == 0.0);
    SUBCASE("fig 4a value") {
        // -(i/2)(xi conj(a0) + 2 w a0) with xi = 4 sqrt2, a0 = 1+i
        const cplx ad0 = alpha_dot_initial(kFig4a, cplx{1, 1});
        CHECK(ad0.real() == doctest::Approx(6.0 - 2.0 * kSqrt2).epsilon(1e-14));
        CHECK(ad0.imag() == doctest::Approx(-(6.0 + 2.0 * kSqrt2)).epsilon(1e-14));
    }
    SUBCASE("decoupled pump rotates freely") {
        const AmplifierParams free{2.0, 0.0, cplx{1.0, 0.0}};
        const cplx a0{0.3, -0.8};
        CHECK(std::abs(alpha_dot_initial(free, a0) - (-kImag * 2.0 * a0)) < 1e-15);
    }
}

TEST_CASE("alpha_analytic initial condition in all regimes") {
    const cplx a0{1.0, 1.0};
    const AmplifierParams par{2.0, 0.5, cplx{1.0, 0.0}};   // |xi| = 2 = omega
    const AmplifierParams hyp{2.0, 0.75, cplx{1.0, 0.0}};  // |xi| = 3 > omega
    for (const auto& p : {kFig4a, par, hyp}) {
        CHECK(std::abs(alpha_analytic(p, a0, 0.0) - a0) < 1e-14);
    }
    CHECK(kFig4a.regime() == Regime::elliptic);
    CHECK(par.regime() == Regime::parabolic);
    CHECK(hyp.regime() == Regime::hyperbolic);
}

TEST_CASE("alpha_analytic reduces to free rotation for xi = 0") {
    const AmplifierParams free{2.0, 0.0, cplx{0.0, 0.0}};
    const cplx a = alpha_analytic(free, cplx{1.0, 0.0}, kPi / 2.0);
    CHECK(std::abs(a - cplx{-1.0, 0.0}) < 1e-14);  // e^{-i pi} = -1
    // |alpha| is conserved
    for (double t : linspace(0.0, 7.0, 13)) {
        CHECK(std::abs(alpha_analytic(free, cplx{1.0, 0.0}, t)) == doctest::Approx(1.0));
    }
}

TEST_CASE("alpha_analytic satisfies the alpha flow in all regimes") {
    const cplx a0{1.0, 1.0};
    const AmplifierParams par{2.0, 0.5, cplx{1.0, 0.0}};
    const AmplifierParams hyp{2.0, 0.375, cplx{0.0, 2.0}};  // |xi| = 3, complex pump
    for (const auto& p : {kFig4a, kFig4b, kFig5a, par, hyp}) {
        const double h = 1e-5;
        double worst = 0.0;
        for (double t : linspace(0.05, 3.0, 24)) {
            const cplx d = (-alpha_analytic(p, a0, t + 2 * h) + 8.0 * alpha_analytic(p, a0, t + h) -
                            8.0 * alpha_analytic(p, a0, t - h) + alpha_analytic(p, a0, t - 2 * h)) /
                           (12.0 * h);
            worst = std::max(worst, std::abs(d - alpha_ode_rhs(p, alpha_analytic(p, a0, t), t)));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("alpha_analytic is continuous across the regime boundary") {
    const cplx a0{1.0, 1.0};
    const double w = 2.0, t = 1.7;
    const AmplifierParams below{w, (w - 1e-9) / 4.0, cplx{1.0, 0.0}};
    const AmplifierParams at{w, w / 4.0, cplx{1.0, 0.0}};
    const AmplifierParams above{w, (w + 1e-9) / 4.0, cplx{1.0, 0.0}};
    CHECK(std::abs(alpha_analytic(below, a0, t) - alpha_analytic(at, a0, t)) < 1e-7);
    CHECK(std::abs(alpha_analytic(above, a0, t) - alpha_analytic(at, a0, t)) < 1e-7);
}

TEST_CASE("alpha_analytic matches numeric integration, fig 4 parameters") {
    const cplx a0{1.0, 1.0};
    for (const auto& p : {kFig4a, kFig4b}) {
        const auto grid = linspace(0.0, 2.0 * kPi, 1257);
        const auto num = alpha_numeric(p, a0, grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst, std::abs(alpha_analytic(p, a0, grid[i]) - num[i]));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("mode decomposition reconstructs the elliptic solution") {
    const cplx a0{1.0, 1.0};
    for (const auto& p : {kFig4a, kFig4b, kFig5a}) {
        const AmplifierSolution sol = decompose_alpha(p, a0);
        const double mu = 0.5 * (sol.omega_char - p.omega);
        const double nu = -0.5 * (sol.omega_char + p.omega);
        for (double t : linspace(0.0, 5.0, 11)) {
            const cplx rebuilt = sol.r1 * std::exp(kImag * (mu * t + sol.phi1)) +
                                 sol.r2 * std::exp(kImag * (nu * t + sol.phi2));
            CHECK(std::abs(rebuilt - alpha_analytic(p, a0, t)) < 1e-12);
        }
    }
}

TEST_CASE("classify_curve on the figure parameter sets") {
    SUBCASE("fig 4a: ratio 2, closed, period pi") {
        const CurveClass cc = classify_curve(kFig4a, cplx{1, 1});
        CHECK(cc.ratio == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(cc.kind != CurveKind::open);
        REQUIRE(cc.period.has_value());
        CHECK(*cc.period == doctest::Approx(kPi).epsilon(1e-12));
        CHECK(cc.ratio_num == 2);
        CHECK(cc.ratio_den == 1);
    }
    SUBCASE("fig 4b: ratio 9, closed, period 4 pi") {
        const CurveClass cc = classify_curve(kFig4b, cplx{1, 1});
        CHECK(cc.ratio == doctest::Approx(9.0).epsilon(1e-12));
        CHECK(cc.kind != CurveKind::open);
        REQUIRE(cc.period.has_value());
        CHECK(*cc.period == doctest::Approx(4.0 * kPi).epsilon(1e-12));
    }
    SUBCASE("irrational ratio is open") {
        // omega = 2, |xi| = sqrt 2: ratio = 3 + 2 sqrt 2
        const AmplifierParams p{2.0, kSqrt2 / 4.0, cplx{1.0, 0.0}};
        const CurveClass cc = classify_curve(p, cplx{1, 1});
        CHECK(cc.kind == CurveKind::open);
        CHECK_FALSE(cc.period.has_value());
        CHECK(cc.ratio == doctest::Approx(3.0 + 2.0 * kSqrt2).epsilon(1e-12));
    }
    SUBCASE("closed-period property: alpha returns to its start") {
        for (const auto& p : {kFig4a, kFig4b}) {
            const cplx a0{1.0, 1.0};
            const CurveClass cc = classify_curve(p, a0);
            REQUIRE(cc.period.has_value());
            CHECK(std::abs(alpha_analytic(p, a0, *cc.period) - a0) < 1e-8);
        }
    }
    SUBCASE("single-frequency limit is a degenerate epicycloid circle") {
        const AmplifierParams free{2.0, 0.0, cplx{1.0, 0.0}};
        const CurveClass cc = classify_curve(free, cplx{1, 1});
        CHECK(cc.kind == CurveKind::epicycloid);
        REQUIRE(cc.period.has_value());
        CHECK(*cc.period == doctest::Approx(kPi).epsilon(1e-12));  // 2 pi / |nu|, nu = -2
        CHECK(std::abs(alpha_analytic(free, cplx{1, 1}, *cc.period) - cplx{1, 1}) < 1e-8);
    }
    SUBCASE("generic closed case is an epitrochoid") {
        CHECK(classify_curve(kFig4a, cplx{1, 1}).kind == CurveKind::epitrochoid);
    }
    SUBCASE("non-elliptic regimes are rejected") {
        CHECK_THROWS_AS(classify_curve(AmplifierParams{2.0, 0.5, cplx{1.0, 0.0}}, cplx{1, 1}),
                        RegimeError);
        CHECK_THROWS_AS(classify_curve(AmplifierParams{2.0, 0.75, cplx{1.0, 0.0}}, cplx{1, 1}),
                        RegimeError);
    }
}

TEST_CASE("qp closed forms validate and reproduce the linear flow") {
    const QPPoint init{cplx{1, 0}, cplx{0, 1}};
    SUBCASE("initial condition") {
        const QPAnalytic oracle(kFig5a, init);
        CHECK_FALSE(oracle.using_fallback());
        CHECK(oracle.validation_residual() < QPAnalytic::kResidualTol);
        const QPPoint at0 = oracle.at(0.0);
        CHECK(std::abs(at0.q - init.q) < 1e-14);
        CHECK(std::abs(at0.p - init.p) < 1e-14);
    }
    SUBCASE("decoupled pump reduces to the oscillator fundamental solution") {
        const AmplifierParams osc{1.0, 0.0, cplx{0.0, 0.0}};
        const QPAnalytic oracle(osc, init);
        for (double t : linspace(0.0, 6.0, 13)) {
            const QPPoint qp = oracle.at(t);
            CHECK(std::abs(qp.q - std::exp(kImag * t)) < 1e-12);
            CHECK(std::norm(qp.q) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("fig 5a: constraint maintained over [0, 4 pi]") {
        const QPAnalytic oracle(kFig5a, init);
        for (double t : linspace(0.0, 4.0 * kPi, 101)) {
            CHECK(oracle.at(t).constraint_residual() < 1e-9);
        }
    }
    SUBCASE("pushforward consistency with the m-chart flow") {
        const QPAnalytic oracle(kFig5a, init);
        IntegratorConfig cfg;
        cfg.step = 1e-3;
        cfg.t1 = 10.0;
        const Trajectory m = integrate(QuadraticCoefficients::amplifier(kFig5a),
                                       ChartState::from(init), cfg);
        double worst = 0.0;
        for (std::size_t i = 0; i < m.size(); i += 100) {
            const CovarianceTriple a = covariance_from_qp(oracle.at(m.times[i]), 1.0);
            const CovarianceTriple b = covariance_from_qp(m.points[i].to_qp(), 1.0);
            worst = std::max({worst, std::abs(a.sq - b.sq), std::abs(a.sp - b.sp),
                              std::abs(a.sqp - b.sqp)});
        }
        CHECK(worst < 1e-6);
    }
    SUBCASE("complex pump phase") {
        const AmplifierParams tilted{0.75, 0.125, std::polar(1.0, 0.7)};
        const QPAnalytic oracle(tilted, init);
        CHECK_FALSE(oracle.using_fallback());
        CHECK(oracle.at(2.0).constraint_residual() < 1e-9);
    }
    SUBCASE("hyperbolic regime is rejected") {
        CHECK_THROWS_AS(QPAnalytic(AmplifierParams{2.0, 0.75, cplx{1.0, 0.0}}, init),
                        RegimeError);
    }
    SUBCASE("bad initial point is rejected") {
        CHECK_THROWS_AS(QPAnalytic(kFig5a, QPPoint{cplx{1.3, 0}, cplx{0, 1}}),
                        InvalidPointError);
    }
}

TEST_CASE("adaptive fallback oracle agrees with the closed forms") {
    const QPPoint init{cplx{1, 0}, cplx{0, 1}};
    const QPAnalytic closed(kFig5a, init);
    const QPAnalytic forced(kFig5a, init, QPAnalytic::Validation::force_fallback);
    CHECK(forced.using_fallback());
    for (double t : {0.7, 2.9, 7.4, 3.0}) {  // includes a non-monotone query
        const QPPoint a = closed.at(t);
        const QPPoint b = forced.at(t);
        CHECK(std::abs(a.q - b.q) < 1e-8);
        CHECK(std::abs(a.p - b.p) < 1e-8);
    }
}
