#include <doctest.h>

#include <cmath>

#include "gausspack/geometry.hpp"
#include "gausspack/hamiltonian.hpp"

using namespace gausspack;

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

TEST_CASE("harmonic model evaluates to (omega^2, 1, 0) at any time") {
    const auto coeffs = QuadraticCoefficients::harmonic(1.0);
    for (double t : {0.0, 0.3, -2.0, 15.0}) {
        const CoeffTriple k = coeffs.at(t);
        CHECK(k.h1 == doctest::Approx(1.0));
        CHECK(k.h2 == doctest::Approx(1.0));
        CHECK(k.v == doctest::Approx(0.0));
    }
    CHECK(coeffs.autonomous());
}

TEST_CASE("free particle model is (0, 1, 0)") {
    const CoeffTriple k = QuadraticCoefficients::free_particle().at(3.7);
    CHECK(k.h1 == 0.0);
    CHECK(k.h2 == 1.0);
    CHECK(k.v == 0.0);
}

TEST_CASE("amplifier coefficients at t = 0, real pump") {
    // omega=6, beta=1 real, kappa=sqrt(2): (w^2 + 2 k w rho, 1 - 2k rho/w, 0)
    AmplifierParams p{6.0, kSqrt2, cplx{1.0, 0.0}};
    const CoeffTriple k = amplifier_coefficients(p, 0.0);
    CHECK(k.h1 == doctest::Approx(36.0 + 12.0 * kSqrt2).epsilon(1e-14));
    CHECK(k.h2 == doctest::Approx(1.0 - 2.0 * kSqrt2 / 6.0).epsilon(1e-14));
    CHECK(k.v == doctest::Approx(0.0));
}

TEST_CASE("amplifier coefficients at quarter period") {
    // cos wt = 0, sin wt = 1: h1 = w^2, h2 = 1, v = -2 kappa rho
    AmplifierParams p{6.0, kSqrt2, cplx{1.0, 0.0}};
    const double t = kPi / (2.0 * p.omega);
    const CoeffTriple k = amplifier_coefficients(p, t);
    CHECK(k.h1 == doctest::Approx(36.0).epsilon(1e-12));
    CHECK(k.h2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(k.v == doctest::Approx(-2.0 * kSqrt2).epsilon(1e-12));
}

TEST_CASE("decoupled pump reduces to an oscillator") {
    AmplifierParams p{2.0, 0.0, cplx{0.3, -0.4}};
    for (double t : {0.0, 1.1, 9.0}) {
        const CoeffTriple k = amplifier_coefficients(p, t);
        CHECK(k.h1 == doctest::Approx(4.0));
        CHECK(k.h2 == doctest::Approx(1.0));
        CHECK(k.v == doctest::Approx(0.0));
    }
    CHECK(QuadraticCoefficients::amplifier(p).autonomous());
}

TEST_CASE("amplifier coefficients are 2 pi / omega periodic") {
    AmplifierParams p{0.75, 0.125, cplx{0.8, 0.6}};
    const auto coeffs = QuadraticCoefficients::amplifier(p);
    const double period = 2.0 * kPi / p.omega;
    for (double t : {0.0, 0.37, 2.9}) {
        const CoeffTriple a = coeffs.at(t);
        const CoeffTriple b = coeffs.at(t + period);
        CHECK(a.h1 == doctest::Approx(b.h1).epsilon(1e-12));
        CHECK(a.h2 == doctest::Approx(b.h2).epsilon(1e-12));
        CHECK(a.v == doctest::Approx(b.v).epsilon(1e-12));
    }
    CHECK_FALSE(coeffs.autonomous());
}

TEST_CASE("amplifier rejects non-positive omega") {
    AmplifierParams p{-1.0, 0.5, cplx{1.0, 0.0}};
    CHECK_THROWS_AS(amplifier_coefficients(p, 0.0), std::invalid_argument);
}

TEST_CASE("amplifier regime classification") {
    CHECK(AmplifierParams{6.0, kSqrt2, cplx{1.0, 0.0}}.regime() == Regime::elliptic);
    CHECK(AmplifierParams{2.0, 0.5, cplx{1.0, 0.0}}.regime() == Regime::parabolic);
    CHECK(AmplifierParams{2.0, 0.75, cplx{0.0, 1.0}}.regime() == Regime::hyperbolic);
    // Omega real in the elliptic regime, Omega~ real in the hyperbolic one
    AmplifierParams ell{6.0, kSqrt2, cplx{1.0, 0.0}};
    CHECK(ell.big_omega() == doctest::Approx(2.0).epsilon(1e-14));
    AmplifierParams hyp{2.0, 0.75, cplx{0.0, 1.0}};
    CHECK(hyp.big_omega_tilde() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("tabulated model interpolates linearly") {
    auto coeffs = QuadraticCoefficients::tabulated({0.0, 1.0, 2.0},
                                                   {{1.0, 1.0, 0.0},
                                                    {3.0, 1.0, 0.5},
                                                    {3.0, 2.0, 0.5}});
    const CoeffTriple k = coeffs.at(0.5);
    CHECK(k.h1 == doctest::Approx(2.0));
    CHECK(k.h2 == doctest::Approx(1.0));
    CHECK(k.v == doctest::Approx(0.25));
    // constant extrapolation outside the table
    CHECK(coeffs.at(-5.0).h1 == doctest::Approx(1.0));
    CHECK(coeffs.at(9.0).h2 == doctest::Approx(2.0));
}

TEST_CASE("gw transform on the oscillator triple") {
    const CoeffTriple osc{1.0, 1.0, 0.0};
    SUBCASE("vacuum point") {
        const auto [g, w] = gw_transform(osc, QPPoint{cplx{1, 0}, cplx{0, 1}});
        CHECK(std::abs(g) == doctest::Approx(0.0));
        CHECK(w == doctest::Approx(2.0));
    }
    SUBCASE("squeezed point") {
        const QPPoint qp{kSqrt2, cplx{1.0, 1.0} / kSqrt2};
        const auto [g, w] = gw_transform(osc, qp);
        CHECK(g.real() == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(g.imag() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(w == doctest::Approx(3.0).epsilon(1e-14));
    }
}

TEST_CASE("gw transform with a pure cross term") {
    const auto [g, w] = gw_transform(CoeffTriple{0.0, 0.0, 1.0}, QPPoint{cplx{1, 0}, cplx{0, 1}});
    CHECK(g.real() == doctest::Approx(0.0));
    CHECK(g.imag() == doctest::Approx(2.0));
    CHECK(w == doctest::Approx(0.0));
}

TEST_CASE("gw transform reproduces the amplifier interaction-picture form") {
    // In the fixed quadrature basis (Q,P) = (-1/sqrt(w), -i sqrt(w)) the
    // amplifier coefficients give G = xi e^{-i w t}, W = 2 w.
    AmplifierParams p{1.5, 0.4, cplx{0.7, -0.3}};
    const QPPoint quad{cplx{-1.0 / std::sqrt(p.omega), 0.0}, cplx{0.0, -std::sqrt(p.omega)}};
    for (double t : {0.0, 0.4, 2.2}) {
        const auto [g, w] = gw_transform(amplifier_coefficients(p, t), quad);
        const cplx expected = p.xi() * std::exp(-kImag * p.omega * t);
        CHECK(std::abs(g - expected) < 1e-12);
        CHECK(w == doctest::Approx(2.0 * p.omega).epsilon(1e-13));
    }
}

TEST_CASE("W stays real for valid points") {
    // W is assembled from moduli and Re(Q conj P); check it equals the full
    // complex expression evaluated without the shortcut.
    const CoeffTriple k{0.7, 1.3, -0.45};
    const QPPoint pts[] = {{cplx{1, 0}, cplx{0, 1}},
                           {cplx{kSqrt2, 0}, cplx{1.0 / kSqrt2, 1.0 / kSqrt2}},
                           QPPoint{cplx{0.5, -0.7}, cplx{1.1, 0.43243243243243246}}
                               .renormalized()};
    for (const QPPoint& qp : pts) {
        const cplx w_full = k.h1 * qp.q * std::conj(qp.q) +
                            k.v * (qp.q * std::conj(qp.p) + qp.p * std::conj(qp.q)) +
                            k.h2 * qp.p * std::conj(qp.p);
        const auto [g, w] = gw_transform(k, qp);
        CHECK(std::abs(w_full.imag()) < 1e-15);
        CHECK(w == doctest::Approx(w_full.real()).epsilon(1e-14));
    }
}
