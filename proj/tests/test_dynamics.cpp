#include <doctest.h>

#include <cmath>
#include <random>

#include "gausspack/dynamics.hpp"
#include "gausspack/hamiltonian.hpp"

using namespace gausspack;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const QPPoint kSetB{cplx{kSqrt2, 0.0}, cplx{1.0 / kSqrt2, 1.0 / kSqrt2}};
const auto kOsc = QuadraticCoefficients::harmonic(1.0);

QuadraticCoefficients fig5a_model() {
    // omega = 3/4, |xi| = 4 kappa rho = 1/2, theta = 0  ->  Omega = sqrt(5)/4
    return QuadraticCoefficients::amplifier(AmplifierParams{0.75, 0.125, cplx{1.0, 0.0}});
}

IntegratorConfig fixed_cfg(double t1, double step = 1e-3) {
    IntegratorConfig cfg;
    cfg.method = Method::rk4_fixed;
    cfg.step = step;
    cfg.t0 = 0.0;
    cfg.t1 = t1;
    return cfg;
}

}  // namespace

TEST_CASE("siegel rhs reproduces the Riccati vector field") {
    const ChartState fix = ChartState::from(SiegelPoint{kImag});
    const ChartState v = rhs(kOsc, fix, 0.0);
    CHECK(std::hypot(v.u[0], v.u[1]) < 1e-15);  // coherent fixed point

    const ChartState at2i = ChartState::from(SiegelPoint{cplx{0, 2}});
    const ChartState v2 = rhs(kOsc, at2i, 0.0);
    CHECK(v2.u[0] == doctest::Approx(3.0));
    CHECK(v2.u[1] == doctest::Approx(0.0));
}

TEST_CASE("siegel rhs conjugate-pair structure") {
    // conj(rhs(C)) equals rhs evaluated at conj(C) for real coefficients
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const CoeffTriple k{d(rng), d(rng), d(rng)};
        const auto coeffs = QuadraticCoefficients::constant(k.h1, k.h2, k.v);
        const cplx c{d(rng), std::abs(d(rng)) + 0.1};
        const ChartState vc = rhs(coeffs, ChartState::from(SiegelPoint{c}), 0.0);
        const cplx lhs = std::conj(cplx{vc.u[0], vc.u[1]});
        const cplx rhs_conj = -k.h2 * std::conj(c) * std::conj(c) - 2.0 * k.v * std::conj(c) - k.h1;
        CHECK(std::abs(lhs - rhs_conj) < 1e-13);
    }
}

TEST_CASE("h2 rhs for the oscillator: pure phase rotation at rate -2") {
    for (double tau : {0.3, 1.0, 2.5}) {
        for (double phi : {0.0, 1.0, 4.0}) {
            const ChartState v = rhs(kOsc, ChartState::from(SqueezeCoords{tau, phi}), 0.0);
            CHECK(v.u[0] == doctest::Approx(0.0).epsilon(1e-14));
            CHECK(v.u[1] == doctest::Approx(-2.0));
        }
    }
}

TEST_CASE("h2 rhs near the vertex raises a singular-chart error") {
    try {
        rhs(kOsc, ChartState::from(SqueezeCoords{1e-9, 0.0}), 0.0);
        FAIL("expected ChartSingularityError");
    } catch (const ChartSingularityError& e) {
        CHECK(e.suggestion == "disk");
    }
    CHECK_THROWS_AS(
        integrate(kOsc, ChartState::from(SqueezeCoords{0.0, 0.0}), fixed_cfg(1.0)),
        ChartSingularityError);
}

TEST_CASE("disk rhs for the oscillator conserves |zeta|") {
    for (const cplx z : {cplx{0.4, -0.2}, cplx{0.1, 0.7}}) {
        const ChartState v = rhs(kOsc, ChartState::from(DiskPoint{z}), 0.0);
        const cplx zdot{v.u[0], v.u[1]};
        CHECK(std::abs(zdot - (-2.0 * kImag * z)) < 1e-14);
    }
}

TEST_CASE("m rhs is the linear system") {
    const ChartState v = rhs(kOsc, ChartState::from(QPPoint{cplx{1, 0}, cplx{0, 1}}), 0.0);
    CHECK(v.u[0] == doctest::Approx(0.0));  // Qdot = i
    CHECK(v.u[1] == doctest::Approx(1.0));
    CHECK(v.u[2] == doctest::Approx(-1.0));  // Pdot = -1
    CHECK(v.u[3] == doctest::Approx(0.0));
}

TEST_CASE("moments rhs is the Ehrenfest flow") {
    const auto coeffs = QuadraticCoefficients::constant(0.8, 1.2, -0.3);
    const ChartState v = rhs(coeffs, ChartState::from(FirstMoments{2.0, -1.0}), 0.0);
    CHECK(v.u[0] == doctest::Approx(-0.3 * 2.0 + 1.2 * (-1.0)));
    CHECK(v.u[1] == doctest::Approx(-0.8 * 2.0 - (-0.3) * (-1.0)));
}

TEST_CASE("h3 rhs equals the linear pushforward of the m flow") {
    // nu is linear, so its component formula applied to the m tangent must
    // equal h3_rhs at the image point exactly.
    auto nu_linear = [](const QPPoint& v) {
        return H3Point{0.5 * (v.p.real() - v.q.imag()), 0.5 * (v.q.real() + v.p.imag()),
                       0.5 * (v.p.real() + v.q.imag()), 0.5 * (v.p.imag() - v.q.real())};
    };
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        const auto coeffs = QuadraticCoefficients::constant(d(rng), d(rng), d(rng));
        cplx q{g(rng), g(rng)}, p{g(rng), g(rng)};
        const double s = (std::conj(q) * p).imag();
        if (s < 0.05) { --i; continue; }
        q /= std::sqrt(s); p /= std::sqrt(s);
        const ChartState mdot = rhs(coeffs, ChartState::from(QPPoint{q, p}), 0.0);
        const H3Point push = nu_linear(mdot.to_qp());
        const ChartState h3dot = rhs(coeffs, ChartState::from(nu_map(QPPoint{q, p})), 0.0);
        CHECK(std::abs(push.x0 - h3dot.u[0]) < 1e-13);
        CHECK(std::abs(push.x1 - h3dot.u[1]) < 1e-13);
        CHECK(std::abs(push.x2 - h3dot.u[2]) < 1e-13);
        CHECK(std::abs(push.x3 - h3dot.u[3]) < 1e-13);
    }
}

TEST_CASE("integrate: siegel fixed point stays put") {
    const Trajectory traj = integrate(kOsc, ChartState::from(SiegelPoint{kImag}), fixed_cfg(10.0));
    double worst = 0.0;
    for (const ChartState& s : traj.points) {
        worst = std::max(worst, std::abs(cplx{s.u[0], s.u[1]} - kImag));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("integrate: oscillator m flow is 2 pi periodic in the covariances") {
    const Trajectory traj =
        integrate(kOsc, ChartState::from(QPPoint{cplx{1, 0}, cplx{0, 1}}), fixed_cfg(2.0 * kPi));
    const CovarianceTriple c0 = covariance_from_qp(traj.points.front().to_qp(), 1.0);
    const CovarianceTriple c1 = covariance_from_qp(traj.points.back().to_qp(), 1.0);
    CHECK(std::abs(c0.sq - c1.sq) < 1e-8);
    CHECK(std::abs(c0.sp - c1.sp) < 1e-8);
    CHECK(std::abs(c0.sqp - c1.sqp) < 1e-8);
}

TEST_CASE("integrate: disk oscillator orbit closes after t = pi") {
    const cplx z0{0.4, -0.2};
    const Trajectory traj = integrate(kOsc, ChartState::from(DiskPoint{z0}), fixed_cfg(kPi));
    const cplx zT{traj.points.back().u[0], traj.points.back().u[1]};
    CHECK(std::abs(zT - z0) < 1e-8);
    for (const ChartState& s : traj.points) {
        CHECK(std::abs(cplx{s.u[0], s.u[1]}) < 1.0);
    }
}

TEST_CASE("constraint preservation on the m chart") {
    SUBCASE("drift shrinks at 4th order in the step") {
        auto drift = [&](double h) {
            const Trajectory t = integrate(fig5a_model(), ChartState::from(kSetB),
                                           fixed_cfg(10.0, h));
            return t.max_constraint_drift();
        };
        const double d1 = drift(0.04), d2 = drift(0.02);
        CHECK(d1 / d2 > 8.0);
        CHECK(d1 / d2 < 40.0);
    }
    SUBCASE("without renormalization, below 1e-8 over T = 10") {
        const Trajectory t = integrate(fig5a_model(), ChartState::from(kSetB), fixed_cfg(10.0));
        CHECK(t.max_constraint_drift() < 1e-8);
        CHECK(t.max_rs_residual() < 1e-9);
    }
    SUBCASE("with renormalization, below 1e-12") {
        IntegratorConfig cfg = fixed_cfg(10.0);
        cfg.renormalize_constraint = true;
        const Trajectory t = integrate(fig5a_model(), ChartState::from(kSetB), cfg);
        CHECK(t.max_constraint_drift() < 1e-12);
    }
}

TEST_CASE("flow equivariance across all charts") {
    // dense short run; the acceptance suite covers T = 10
    const double T = 4.0;
    for (const auto& coeffs : {kOsc, fig5a_model()}) {
        const Trajectory m = integrate(coeffs, ChartState::from(kSetB), fixed_cfg(T));

        const Trajectory sieg =
            integrate(coeffs, ChartState::from(pi_map(kSetB)), fixed_cfg(T));
        const Trajectory h3 = integrate(coeffs, ChartState::from(nu_map(kSetB)), fixed_cfg(T));
        const Trajectory h2 = integrate(
            coeffs, ChartState::from(squeeze_coordinates(chi_map(nu_map(kSetB)))), fixed_cfg(T));
        const Trajectory dsk = integrate(
            coeffs, ChartState::from(disk_projection(chi_map(nu_map(kSetB)))), fixed_cfg(T));

        double e_s = 0, e_h3 = 0, e_h2 = 0, e_d = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            const QPPoint qp = m.points[i].to_qp();
            e_s = std::max(e_s, std::abs(pi_map(qp).c - cplx{sieg.points[i].u[0],
                                                             sieg.points[i].u[1]}));
            const H3Point x = nu_map(qp);
            const H3Point xi = h3.points[i].to_h3();
            e_h3 = std::max({e_h3, std::abs(x.x0 - xi.x0), std::abs(x.x1 - xi.x1),
                             std::abs(x.x2 - xi.x2), std::abs(x.x3 - xi.x3)});
            const H2Point y = chi_map(x);
            const H2Point yi = h2.points[i].to_h2();
            e_h2 = std::max({e_h2, std::abs(y.y1 - yi.y1), std::abs(y.y2 - yi.y2),
                             std::abs(y.y3 - yi.y3)});
            const DiskPoint dd = disk_projection(y);
            e_d = std::max(e_d, std::abs(dd.zeta - cplx{dsk.points[i].u[0], dsk.points[i].u[1]}));
        }
        CHECK(e_s < 1e-6);
        CHECK(e_h3 < 1e-6);
        CHECK(e_h2 < 1e-6);
        CHECK(e_d < 1e-6);
    }
}

TEST_CASE("siegel and disk stay inside their domains along amplifier flows") {
    const Trajectory sieg =
        integrate(fig5a_model(), ChartState::from(pi_map(kSetB)), fixed_cfg(10.0));
    for (const ChartState& s : sieg.points) CHECK(s.u[1] > 0.0);
    const Trajectory dsk = integrate(
        fig5a_model(), ChartState::from(disk_projection(chi_map(nu_map(kSetB)))),
        fixed_cfg(10.0));
    for (const ChartState& s : dsk.points) CHECK(std::hypot(s.u[0], s.u[1]) < 1.0);
}

TEST_CASE("energy is conserved along autonomous flows") {
    for (Chart chart : {Chart::m, Chart::h3, Chart::h2, Chart::disk, Chart::siegel}) {
        ChartState init{};
        switch (chart) {
            case Chart::m: init = ChartState::from(kSetB); break;
            case Chart::h3: init = ChartState::from(nu_map(kSetB)); break;
            case Chart::h2:
                init = ChartState::from(squeeze_coordinates(chi_map(nu_map(kSetB))));
                break;
            case Chart::disk:
                init = ChartState::from(disk_projection(chi_map(nu_map(kSetB))));
                break;
            default: init = ChartState::from(pi_map(kSetB)); break;
        }
        const Trajectory t = integrate(kOsc, init, fixed_cfg(10.0));
        CHECK(t.energy_drift() < 1e-8);
    }
}

TEST_CASE("riccati flow matches the Weil-Petersson bracket") {
    // dC_R/dt = {H, C_R}_WP = C_I^2 dH/dC_I with dH by finite differences
    const auto coeffs = fig5a_model();
    const Trajectory sieg =
        integrate(coeffs, ChartState::from(pi_map(kSetB)), fixed_cfg(3.0));
    const double h = 1e-6;
    for (std::size_t i : {std::size_t{100}, std::size_t{1500}, std::size_t{2700}}) {
        const SiegelPoint c = sieg.points[i].to_siegel();
        const double t = sieg.times[i];
        const CoeffTriple k = coeffs.at(t);
        const Gradient2 grad_h{
            (energy(SiegelPoint{c.c + h}, k) - energy(SiegelPoint{c.c - h}, k)) / (2 * h),
            (energy(SiegelPoint{c.c + kImag * h}, k) - energy(SiegelPoint{c.c - kImag * h}, k)) /
                (2 * h)};
        const double bracket = poisson_bracket_siegel(grad_h, Gradient2{1.0, 0.0}, c);
        const ChartState v = rhs(coeffs, sieg.points[i], t);
        CHECK(bracket == doctest::Approx(v.u[0]).epsilon(1e-5));
        // and the imaginary part through {H, C_I}
        const double bracket_i = poisson_bracket_siegel(grad_h, Gradient2{0.0, 1.0}, c);
        CHECK(bracket_i == doctest::Approx(v.u[1]).epsilon(1e-5));
    }
}

TEST_CASE("disk flow matches the disk bracket") {
    const auto coeffs = fig5a_model();
    const Trajectory dsk = integrate(
        coeffs, ChartState::from(disk_projection(chi_map(nu_map(kSetB)))), fixed_cfg(3.0));
    const double h = 1e-6;
    for (std::size_t i : {std::size_t{200}, std::size_t{2000}}) {
        const DiskPoint z = dsk.points[i].to_disk();
        const double t = dsk.times[i];
        const CoeffTriple k = coeffs.at(t);
        const Gradient2 grad_h{
            (energy(DiskPoint{z.zeta + h}, k) - energy(DiskPoint{z.zeta - h}, k)) / (2 * h),
            (energy(DiskPoint{z.zeta + kImag * h}, k) - energy(DiskPoint{z.zeta - kImag * h}, k)) /
                (2 * h)};
        const ChartState v = rhs(coeffs, dsk.points[i], t);
        CHECK(poisson_bracket_disk(grad_h, Gradient2{1.0, 0.0}, z) ==
              doctest::Approx(v.u[0]).epsilon(1e-5));
        CHECK(poisson_bracket_disk(grad_h, Gradient2{0.0, 1.0}, z) ==
              doctest::Approx(v.u[1]).epsilon(1e-5));
    }
}

TEST_CASE("adaptive integrator tracks the oscillator") {
    IntegratorConfig cfg;
    cfg.method = Method::rk45_adaptive;
    cfg.rtol = 1e-10;
    cfg.atol = 1e-12;
    cfg.t0 = 0.0;
    cfg.t1 = 2.0 * kPi;
    const Trajectory t = integrate(kOsc, ChartState::from(kSetB), cfg);
    CHECK(t.times.back() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    const QPPoint qpT = t.points.back().to_qp();
    CHECK(std::abs(qpT.q - kSetB.q) < 1e-7);
    CHECK(std::abs(qpT.p - kSetB.p) < 1e-7);
    for (std::size_t i = 1; i < t.times.size(); ++i) CHECK(t.times[i] > t.times[i - 1]);
}

TEST_CASE("integrator config validation") {
    IntegratorConfig bad;
    bad.t1 = bad.t0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.step = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.hbar = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("invalid initial points are rejected") {
    CHECK_THROWS_AS(
        integrate(kOsc, ChartState::from(QPPoint{cplx{1.2, 0}, cplx{0, 1}}), fixed_cfg(1.0)),
        InvalidPointError);
    CHECK_THROWS_AS(
        integrate(kOsc, ChartState::from(SiegelPoint{cplx{0.5, -0.1}}), fixed_cfg(1.0)),
        InvalidPointError);
    CHECK_THROWS_AS(
        integrate(kOsc, ChartState::from(DiskPoint{cplx{1.2, 0.0}}), fixed_cfg(1.0)),
        InvalidPointError);
}

TEST_CASE("wei-norman closed form for the oscillator") {
    // C1 = -tan t, C2 = -ln cos t, C3 = -tan t
    std::vector<double> grid;
    for (int i = 0; i <= 64; ++i) grid.push_back(kPi / 4.0 * i / 64.0);
    const WeiNormanCoeffs wn = wei_norman(kOsc, grid);
    REQUIRE(wn.times.size() == grid.size());
    CHECK(std::abs(wn.c1.front()) == 0.0);
    CHECK(std::abs(wn.c2.front()) == 0.0);
    CHECK(std::abs(wn.c3.front()) == 0.0);
    for (std::size_t i = 0; i < grid.size(); i += 16) {
        const double t = grid[i];
        CHECK(std::abs(wn.c1[i] - cplx{-std::tan(t), 0.0}) < 1e-8);
        CHECK(std::abs(wn.c2[i] - cplx{-std::log(std::cos(t)), 0.0}) < 1e-8);
        CHECK(std::abs(wn.c3[i] - cplx{-std::tan(t), 0.0}) < 1e-8);
    }
    const std::size_t last = grid.size() - 1;
    CHECK(std::abs(wn.c1[last] + 1.0) < 1e-8);
    CHECK(std::abs(wn.c2[last] - std::log(kSqrt2)) < 1e-8);
    CHECK(std::abs(wn.c3[last] + 1.0) < 1e-8);
}

TEST_CASE("wei-norman free particle") {
    const auto coeffs = QuadraticCoefficients::free_particle();
    std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 5.0};
    const WeiNormanCoeffs wn = wei_norman(coeffs, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(wn.c1[i]) < 1e-12);
        CHECK(std::abs(wn.c2[i]) < 1e-12);
        CHECK(std::abs(wn.c3[i] - cplx{-grid[i], 0.0}) < 1e-10);
    }
}

TEST_CASE("wei-norman blow-up is located at pi/2 for the oscillator") {
    const auto ts = wei_norman_blow_up(kOsc, 2.0);
    REQUIRE(ts.has_value());
    CHECK(std::abs(*ts - kPi / 2.0) < 1e-6);

    std::vector<double> grid{0.0, 1.0, 1.6};
    try {
        wei_norman(kOsc, grid);
        FAIL("expected RiccatiBlowUpError");
    } catch (const RiccatiBlowUpError& e) {
        CHECK(std::abs(e.blow_up_time - kPi / 2.0) < 1e-6);
    }
    CHECK_FALSE(wei_norman_blow_up(kOsc, 1.0).has_value());
    CHECK_FALSE(wei_norman_blow_up(QuadraticCoefficients::free_particle(), 50.0).has_value());
}

TEST_CASE("invariant alpha stays constant along paired flows") {
    SUBCASE("oscillator closed form") {
        const Trajectory mt =
            integrate(kOsc, ChartState::from(FirstMoments{1.0, 0.0}), fixed_cfg(10.0));
        const Trajectory qt =
            integrate(kOsc, ChartState::from(QPPoint{cplx{1, 0}, cplx{0, 1}}), fixed_cfg(10.0));
        const auto alpha = invariant_alpha(mt, qt, 1.0);
        for (const cplx& a : alpha) {
            CHECK(std::abs(a - cplx{-1.0 / kSqrt2, 0.0}) < 1e-8);
        }
    }
    SUBCASE("zero moments give zero") {
        const Trajectory mt =
            integrate(kOsc, ChartState::from(FirstMoments{0.0, 0.0}), fixed_cfg(2.0));
        const Trajectory qt = integrate(kOsc, ChartState::from(kSetB), fixed_cfg(2.0));
        for (const cplx& a : invariant_alpha(mt, qt, 1.0)) CHECK(std::abs(a) == 0.0);
    }
    SUBCASE("amplifier drift below 1e-6 over T = 2 pi") {
        const auto amp = QuadraticCoefficients::amplifier(
            AmplifierParams{5.0, 0.75, cplx{1.0, 0.0}});  // Fig 4b: |xi| = 3
        const Trajectory mt =
            integrate(amp, ChartState::from(FirstMoments{1.0, 0.0}), fixed_cfg(2.0 * kPi));
        const Trajectory qt =
            integrate(amp, ChartState::from(QPPoint{cplx{1, 0}, cplx{0, 1}}), fixed_cfg(2.0 * kPi));
        const auto alpha = invariant_alpha(mt, qt, 1.0);
        double drift = 0.0;
        for (const cplx& a : alpha) drift = std::max(drift, std::abs(a - alpha.front()));
        CHECK(drift < 1e-6);
    }
    SUBCASE("grid mismatch raises") {
        const Trajectory mt =
            integrate(kOsc, ChartState::from(FirstMoments{1.0, 0.0}), fixed_cfg(1.0));
        const Trajectory qt = integrate(kOsc, ChartState::from(kSetB), fixed_cfg(2.0));
        CHECK_THROWS_AS(invariant_alpha(mt, qt, 1.0), GridMismatchError);
    }
}
