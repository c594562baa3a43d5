#include "gausspack/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "gausspack/detail/rk.hpp"

namespace gausspack {

const char* chart_name(Chart c) {
    switch (c) {
        case Chart::moments: return "moments";
        case Chart::m: return "m";
        case Chart::h3: return "h3";
        case Chart::h2: return "h2";
        case Chart::disk: return "disk";
        case Chart::siegel: return "siegel";
    }
    return "?";
}

Chart chart_from_name(std::string_view name) {
    if (name == "moments") return Chart::moments;
    if (name == "m") return Chart::m;
    if (name == "h3") return Chart::h3;
    if (name == "h2") return Chart::h2;
    if (name == "disk") return Chart::disk;
    if (name == "siegel") return Chart::siegel;
    throw ConfigError("unknown chart: " + std::string(name));
}

int chart_dim(Chart c) {
    switch (c) {
        case Chart::m:
        case Chart::h3: return 4;
        default: return 2;
    }
}

ChartState ChartState::from(const FirstMoments& m) {
    return {Chart::moments, {m.mq, m.mp, 0, 0}};
}
ChartState ChartState::from(const QPPoint& qp) {
    return {Chart::m, {qp.q.real(), qp.q.imag(), qp.p.real(), qp.p.imag()}};
}
ChartState ChartState::from(const H3Point& x) {
    return {Chart::h3, {x.x0, x.x1, x.x2, x.x3}};
}
ChartState ChartState::from(const SqueezeCoords& sc) {
    return {Chart::h2, {sc.tau, sc.phi, 0, 0}};
}
ChartState ChartState::from(const DiskPoint& d) {
    return {Chart::disk, {d.zeta.real(), d.zeta.imag(), 0, 0}};
}
ChartState ChartState::from(const SiegelPoint& s) {
    return {Chart::siegel, {s.c.real(), s.c.imag(), 0, 0}};
}

FirstMoments ChartState::to_moments() const { return {u[0], u[1]}; }
QPPoint ChartState::to_qp() const { return {cplx{u[0], u[1]}, cplx{u[2], u[3]}}; }
H3Point ChartState::to_h3() const { return {u[0], u[1], u[2], u[3]}; }
SqueezeCoords ChartState::to_squeeze() const { return {u[0], u[1]}; }
H2Point ChartState::to_h2() const { return h2_from_squeeze({u[0], u[1]}); }
DiskPoint ChartState::to_disk() const { return {cplx{u[0], u[1]}}; }
SiegelPoint ChartState::to_siegel() const { return {cplx{u[0], u[1]}}; }

// ---------------------------------------------------------------------------
// Vector fields
// ---------------------------------------------------------------------------

namespace {

using detail::StateN;

StateN<4> rhs_raw(Chart chart, const CoeffTriple& k, const StateN<4>& u) {
    switch (chart) {
        case Chart::moments: {
            return {k.v * u[0] + k.h2 * u[1], -k.h1 * u[0] - k.v * u[1], 0, 0};
        }
        case Chart::m: {
            // Q' = VQ + H2 P, P' = -H1 Q - V P componentwise
            return {k.v * u[0] + k.h2 * u[2], k.v * u[1] + k.h2 * u[3],
                    -k.h1 * u[0] - k.v * u[2], -k.h1 * u[1] - k.v * u[3]};
        }
        case Chart::h3: {
            const double sp = 0.5 * (k.h2 + k.h1), sm = 0.5 * (k.h2 - k.h1);
            // The x1 equation uses x2 (re-derived from the m flow through nu).
            return {-sp * u[1] - sm * u[3] - k.v * u[2],
                    sp * u[0] + sm * u[2] - k.v * u[3],
                    sp * u[3] + sm * u[1] - k.v * u[0],
                    -sp * u[2] - sm * u[0] - k.v * u[1]};
        }
        case Chart::h2: {
            const double tau = u[0], phi = u[1];
            if (tau < kTauMin) {
                throw ChartSingularityError(
                    "h2 chart is singular near the vertex (coth tau); integrate in the disk chart",
                    "disk");
            }
            const double s = std::sin(phi), c = std::cos(phi);
            const double taudot = -2.0 * k.v * s - (k.h1 - k.h2) * c;
            const double phidot =
                -(2.0 * k.v * c - (k.h1 - k.h2) * s) / std::tanh(tau) - (k.h1 + k.h2);
            return {taudot, phidot, 0, 0};
        }
        case Chart::disk: {
            const cplx z{u[0], u[1]};
            const cplx zdot = 0.5 * (k.h1 - k.h2 - 2.0 * kImag * k.v) * z * z -
                              kImag * (k.h1 + k.h2) * z -
                              0.5 * (k.h1 - k.h2 + 2.0 * kImag * k.v);
            return {zdot.real(), zdot.imag(), 0, 0};
        }
        case Chart::siegel: {
            const cplx c{u[0], u[1]};
            const cplx cdot = -k.h2 * c * c - 2.0 * k.v * c - k.h1;
            return {cdot.real(), cdot.imag(), 0, 0};
        }
    }
    return {};
}

void validate_initial(const ChartState& s) {
    switch (s.chart) {
        case Chart::moments: break;
        case Chart::m: QPPoint::checked(s.to_qp().q, s.to_qp().p); break;
        case Chart::h3: {
            const H3Point x = s.to_h3();
            H3Point::checked(x.x0, x.x1, x.x2, x.x3);
            break;
        }
        case Chart::h2:
            if (s.u[0] < kTauMin) {
                throw ChartSingularityError(
                    "h2 chart integration cannot start within tau_min of the vertex; "
                    "use the disk chart",
                    "disk");
            }
            break;
        case Chart::disk: DiskPoint::checked(s.to_disk().zeta); break;
        case Chart::siegel: SiegelPoint::checked(s.to_siegel().c); break;
    }
}

double constraint_drift_of(const ChartState& s) {
    switch (s.chart) {
        case Chart::m: return s.to_qp().constraint_residual();
        case Chart::h3: return s.to_h3().constraint_residual();
        case Chart::h2: return s.to_h2().constraint_residual();  // identically ~0
        case Chart::disk: return std::max(0.0, std::abs(s.to_disk().zeta) - 1.0);
        case Chart::siegel: return std::max(0.0, -s.to_siegel().c.imag());
        case Chart::moments: return 0.0;
    }
    return 0.0;
}

double energy_of(const ChartState& s, const CoeffTriple& k) {
    switch (s.chart) {
        case Chart::m: return energy(s.to_qp(), k);
        case Chart::h3: return energy(s.to_h3(), k);
        case Chart::h2: return energy(s.to_squeeze(), k);
        case Chart::disk: return energy(s.to_disk(), k);
        case Chart::siegel: return energy(s.to_siegel(), k);
        case Chart::moments: {
            // classical energy of the packet centre
            const FirstMoments m = s.to_moments();
            return 0.5 * (k.h1 * m.mq * m.mq + 2.0 * k.v * m.mq * m.mp + k.h2 * m.mp * m.mp);
        }
    }
    return 0.0;
}

double rs_residual_of(const ChartState& s, double hbar) {
    switch (s.chart) {
        case Chart::m: return covariance_from_qp(s.to_qp(), hbar).rs_residual(hbar);
        case Chart::h3:
            return covariance_from_h2(chi_map(s.to_h3()), hbar).rs_residual(hbar);
        case Chart::h2: return covariance_from_h2(s.to_h2(), hbar).rs_residual(hbar);
        case Chart::disk:
            return covariance_from_h2(disk_to_h2(s.to_disk()), hbar).rs_residual(hbar);
        case Chart::siegel:
            return covariance_from_h2(siegel_to_h2(s.to_siegel()), hbar).rs_residual(hbar);
        case Chart::moments: return 0.0;
    }
    return 0.0;
}

}  // namespace

ChartState rhs(const QuadraticCoefficients& coeffs, const ChartState& state, double t) {
    return {state.chart, rhs_raw(state.chart, coeffs.at(t), state.u)};
}

void IntegratorConfig::validate() const {
    if (!(t1 > t0)) throw std::invalid_argument("IntegratorConfig: t1 must exceed t0");
    if (method == Method::rk4_fixed && !(step > 0.0)) {
        throw std::invalid_argument("IntegratorConfig: step must be positive");
    }
    if (method == Method::rk45_adaptive && (!(rtol > 0.0) || !(atol > 0.0) || !(max_step > 0.0))) {
        throw std::invalid_argument("IntegratorConfig: adaptive tolerances must be positive");
    }
    if (!(hbar > 0.0)) throw std::invalid_argument("IntegratorConfig: hbar must be positive");
}

SampleDiagnostics diagnostics_at(const QuadraticCoefficients& coeffs, const ChartState& state,
                                 double t, double hbar) {
    const CoeffTriple k = coeffs.at(t);
    return {constraint_drift_of(state), energy_of(state, k), rs_residual_of(state, hbar)};
}

double Trajectory::max_constraint_drift() const {
    double m = 0.0;
    for (const auto& d : diagnostics) m = std::max(m, d.constraint_drift);
    return m;
}

double Trajectory::max_rs_residual() const {
    double m = 0.0;
    for (const auto& d : diagnostics) m = std::max(m, std::abs(d.rs_residual));
    return m;
}

double Trajectory::energy_drift() const {
    if (diagnostics.empty()) return 0.0;
    double m = 0.0;
    const double e0 = diagnostics.front().energy;
    for (const auto& d : diagnostics) m = std::max(m, std::abs(d.energy - e0));
    return m;
}

Trajectory integrate(const QuadraticCoefficients& coeffs, const ChartState& initial,
                     const IntegratorConfig& config) {
    config.validate();
    validate_initial(initial);

    const Chart chart = initial.chart;
    auto f = [&](const StateN<4>& u, double t) { return rhs_raw(chart, coeffs.at(t), u); };

    Trajectory traj;
    traj.chart = chart;
    traj.hbar = config.hbar;

    ChartState cur = initial;
    double t = config.t0;
    auto record = [&] {
        traj.times.push_back(t);
        traj.points.push_back(cur);
        traj.diagnostics.push_back(diagnostics_at(coeffs, cur, t, config.hbar));
    };
    auto renorm = [&] {
        if (config.renormalize_constraint && chart == Chart::m) {
            cur = ChartState::from(cur.to_qp().renormalized());
        }
    };
    record();

    if (config.method == Method::rk4_fixed) {
        const double h = config.step;
        const auto n_steps = static_cast<long>(std::ceil((config.t1 - config.t0) / h - 1e-12));
        for (long i = 1; i <= n_steps; ++i) {
            const double tn = std::min(config.t0 + static_cast<double>(i) * h, config.t1);
            cur.u = detail::rk4_step(f, cur.u, t, tn - t);
            t = tn;
            renorm();
            record();
        }
    } else {
        detail::Dopri5<4, decltype(f)> stepper{f, config.rtol, config.atol, config.max_step};
        double h = std::min(config.max_step, config.t1 - config.t0);
        while (t < config.t1 - 1e-14 * (config.t1 - config.t0)) {
            stepper.advance(cur.u, t, h, config.t1);
            renorm();
            record();
        }
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Wei-Norman system
// ---------------------------------------------------------------------------

namespace {

// State packing: (Re C1, Im C1, Re C2, Im C2, Re C3, Im C3)
StateN<6> wn_rhs(const CoeffTriple& k, const StateN<6>& u) {
    const cplx c1{u[0], u[1]}, c2{u[2], u[3]};
    const cplx d1 = -k.h2 * c1 * c1 - 2.0 * k.v * c1 - k.h1;
    const cplx d2 = -k.h2 * c1 - k.v;
    const cplx d3 = -std::exp(2.0 * c2) * k.h2;
    return {d1.real(), d1.imag(), d2.real(), d2.imag(), d3.real(), d3.imag()};
}

// Advance the Wei-Norman state from t to t_target, shrinking the step as
// |C1| grows.  Returns false (leaving t at the detection point) when |C1|
// crosses the blow-up threshold.
bool wn_advance(const QuadraticCoefficients& coeffs, StateN<6>& u, double& t, double t_target,
                double h_base) {
    auto f = [&](const StateN<6>& s, double tt) { return wn_rhs(coeffs.at(tt), s); };
    while (t < t_target - 1e-15 * std::max(1.0, std::abs(t_target))) {
        const double c1abs = std::hypot(u[0], u[1]);
        if (c1abs >= kBlowUpThreshold) return false;
        // keep h |C1| small so RK4 stays accurate up to the threshold
        const double h = std::min({h_base, t_target - t, 0.02 / (1.0 + c1abs)});
        u = detail::rk4_step(f, u, t, h);
        t += h;
        if (!std::isfinite(u[0]) || !std::isfinite(u[1])) return false;
    }
    return std::hypot(u[0], u[1]) < kBlowUpThreshold;
}

double locate_blow_up(const QuadraticCoefficients& coeffs, double t_detect,
                      const StateN<6>& u_detect) {
    // Near the singularity C1' ~ -H2 C1^2, so the remaining time is about
    // 1/(H2 |C1|).  The threshold is high enough that this correction is
    // already far below the reporting tolerance.
    const double h2 = coeffs.at(t_detect).h2;
    const double c1abs = std::hypot(u_detect[0], u_detect[1]);
    if (std::isfinite(c1abs) && c1abs > 0.0 && std::abs(h2) > 1e-12) {
        return t_detect + 1.0 / (std::abs(h2) * c1abs);
    }
    return t_detect;
}

}  // namespace

WeiNormanCoeffs wei_norman(const QuadraticCoefficients& coeffs, std::span<const double> grid) {
    if (grid.empty() || grid.front() != 0.0) {
        throw std::invalid_argument("wei_norman: grid must start at 0");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("wei_norman: grid must be increasing");
        }
    }
    const double span = grid.back() - grid.front();
    const double h_base = std::max(span / 16384.0, 1e-6);

    WeiNormanCoeffs out;
    StateN<6> u{};
    double t = 0.0;
    for (double tg : grid) {
        if (!wn_advance(coeffs, u, t, tg, h_base)) {
            const double ts = locate_blow_up(coeffs, t, u);
            throw RiccatiBlowUpError("wei_norman: C1 blow-up detected", ts);
        }
        out.times.push_back(tg);
        out.c1.emplace_back(u[0], u[1]);
        out.c2.emplace_back(u[2], u[3]);
        out.c3.emplace_back(u[4], u[5]);
    }
    return out;
}

std::optional<double> wei_norman_blow_up(const QuadraticCoefficients& coeffs, double t_max) {
    if (!(t_max > 0.0)) throw std::invalid_argument("wei_norman_blow_up: t_max must be > 0");
    StateN<6> u{};
    double t = 0.0;
    const double h_base = std::max(t_max / 16384.0, 1e-6);
    if (wn_advance(coeffs, u, t, t_max, h_base)) return std::nullopt;
    return locate_blow_up(coeffs, t, u);
}

// ---------------------------------------------------------------------------

std::vector<cplx> invariant_alpha(const Trajectory& moments, const Trajectory& qp, double hbar) {
    if (moments.chart != Chart::moments || qp.chart != Chart::m) {
        throw GridMismatchError("invariant_alpha: expects a moments and an m trajectory");
    }
    if (moments.times.size() != qp.times.size()) {
        throw GridMismatchError("invariant_alpha: trajectories have different lengths");
    }
    std::vector<cplx> out;
    out.reserve(moments.times.size());
    for (std::size_t i = 0; i < moments.times.size(); ++i) {
        if (std::abs(moments.times[i] - qp.times[i]) > 1e-12) {
            throw GridMismatchError("invariant_alpha: time grids differ");
        }
        out.push_back(
            alpha_from_moments(moments.points[i].to_moments(), qp.points[i].to_qp(), hbar));
    }
    return out;
}

}  // namespace gausspack
