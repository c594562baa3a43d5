#include "gausspack/amplifier.hpp"

#include <cmath>
#include <numeric>

#include "gausspack/detail/rk.hpp"

namespace gausspack {

cplx alpha_dot_initial(const AmplifierParams& params, cplx alpha0) {
    params.validate();
    return -0.5 * kImag * (params.xi() * std::conj(alpha0) + 2.0 * params.omega * alpha0);
}

cplx alpha_ode_rhs(const AmplifierParams& params, cplx alpha, double t) {
    return -0.5 * kImag *
           (params.xi() * std::exp(-kImag * params.omega * t) * std::conj(alpha) +
            2.0 * params.omega * alpha);
}

cplx alpha_analytic(const AmplifierParams& params, cplx alpha0, double t) {
    params.validate();
    const cplx ad0 = alpha_dot_initial(params, alpha0);
    const double w = params.omega;
    const cplx rot = std::exp(-0.5 * kImag * w * t);
    switch (params.regime()) {
        case Regime::elliptic: {
            const double om = params.big_omega();
            return ((2.0 * ad0 + kImag * w * alpha0) / om * std::sin(0.5 * om * t) +
                    alpha0 * std::cos(0.5 * om * t)) *
                   rot;
        }
        case Regime::parabolic: {
            return ((ad0 + 0.5 * kImag * w * alpha0) * t + alpha0) * rot;
        }
        case Regime::hyperbolic: {
            const double om = params.big_omega_tilde();
            return ((2.0 * ad0 + kImag * w * alpha0) / om * std::sinh(0.5 * om * t) +
                    alpha0 * std::cosh(0.5 * om * t)) *
                   rot;
        }
    }
    return alpha0;
}

std::vector<cplx> alpha_numeric(const AmplifierParams& params, cplx alpha0,
                                std::span<const double> grid) {
    params.validate();
    auto f = [&](const detail::StateN<2>& u, double t) -> detail::StateN<2> {
        const cplx d = alpha_ode_rhs(params, cplx{u[0], u[1]}, t);
        return {d.real(), d.imag()};
    };
    std::vector<cplx> out;
    out.reserve(grid.size());
    detail::StateN<2> u{alpha0.real(), alpha0.imag()};
    double t = grid.empty() ? 0.0 : grid.front();
    out.emplace_back(u[0], u[1]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double target = grid[i];
        const double span = target - t;
        const int nsub = std::max(1, static_cast<int>(std::ceil(span / 1e-4)));
        const double h = span / nsub;
        for (int j = 0; j < nsub; ++j) {
            u = detail::rk4_step(f, u, t, h);
            t += h;
        }
        t = target;
        out.emplace_back(u[0], u[1]);
    }
    return out;
}

AmplifierSolution decompose_alpha(const AmplifierParams& params, cplx alpha0) {
    params.validate();
    AmplifierSolution sol;
    sol.regime = params.regime();
    sol.omega = params.omega;
    sol.xi = params.xi();
    sol.alpha0 = alpha0;
    sol.alphadot0 = alpha_dot_initial(params, alpha0);
    if (sol.regime == Regime::elliptic) {
        const double om = params.big_omega();
        sol.omega_char = om;
        const double w = params.omega;
        const cplx m1 = 0.5 * (1.0 + w / om) * alpha0 - kImag * sol.alphadot0 / om;
        const cplx m2 = 0.5 * (1.0 - w / om) * alpha0 + kImag * sol.alphadot0 / om;
        sol.r1 = std::abs(m1);
        sol.phi1 = std::arg(m1);
        sol.r2 = std::abs(m2);
        sol.phi2 = std::arg(m2);
    } else if (sol.regime == Regime::hyperbolic) {
        sol.omega_char = params.big_omega_tilde();
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Curve classification
// ---------------------------------------------------------------------------

const char* curve_kind_name(CurveKind k) {
    switch (k) {
        case CurveKind::epicycloid: return "epicycloid";
        case CurveKind::epitrochoid: return "epitrochoid";
        case CurveKind::open: return "open";
    }
    return "?";
}

namespace {

// Continued-fraction rational detection: best convergent p/q with q <= qmax.
std::optional<std::pair<long, long>> rational_approx(double x, long qmax, double tol) {
    long p0 = 1, q0 = 0, p1 = static_cast<long>(std::floor(x)), q1 = 1;
    double frac = x - std::floor(x);
    for (int it = 0; it < 64; ++it) {
        if (std::abs(x - static_cast<double>(p1) / q1) < tol) return std::make_pair(p1, q1);
        if (frac == 0.0) break;
        const double inv = 1.0 / frac;
        const double a = std::floor(inv);
        frac = inv - a;
        const long p2 = static_cast<long>(a) * p1 + p0;
        const long q2 = static_cast<long>(a) * q1 + q0;
        if (q2 > qmax || q2 <= 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    if (std::abs(x - static_cast<double>(p1) / q1) < tol) return std::make_pair(p1, q1);
    return std::nullopt;
}

}  // namespace

CurveClass classify_curve(const AmplifierParams& params, cplx alpha0) {
    params.validate();
    if (params.regime() != Regime::elliptic) {
        throw RegimeError("classify_curve applies only to the elliptic regime");
    }
    const AmplifierSolution sol = decompose_alpha(params, alpha0);
    const double om = sol.omega_char, w = params.omega;

    CurveClass cc;
    cc.mu = 0.5 * (om - w);
    cc.nu = -0.5 * (om + w);
    cc.ratio = (w + om) / (w - om);

    // Single-frequency degenerations trace circles: a degenerate epicycloid
    // with zero trochoid offset.  (xi = 0 kills the mu mode entirely.)
    const double scale = std::max({sol.r1, sol.r2, 1e-300});
    const bool mu_dead = sol.r1 < 1e-12 * scale || std::abs(cc.mu) < 1e-12 * w;
    const bool nu_dead = sol.r2 < 1e-12 * scale;
    if (mu_dead || nu_dead) {
        cc.kind = CurveKind::epicycloid;
        cc.period = 2.0 * kPi / std::abs(mu_dead ? cc.nu : cc.mu);
        return cc;
    }

    const auto rat = rational_approx(cc.ratio, kMaxRatioDenominator, kRatioTol);
    if (!rat) {
        cc.kind = CurveKind::open;
        return cc;
    }
    auto [p, q] = *rat;
    const long g = std::gcd(p, q);
    cc.ratio_num = p / g;
    cc.ratio_den = q / g;
    // minimal T with |mu| T and |nu| T both multiples of 2 pi:
    // nu/mu = p/q reduced  ->  T = 2 pi q / |mu|
    cc.period = 2.0 * kPi * static_cast<double>(cc.ratio_den) / std::abs(cc.mu);

    // epicycloid when the trochoid offset equals the rolling radius
    // b = r1 |mu|/|nu|
    const double b = sol.r1 * std::abs(cc.mu / cc.nu);
    cc.kind = std::abs(sol.r2 - b) < 1e-9 * scale ? CurveKind::epicycloid
                                                  : CurveKind::epitrochoid;
    return cc;
}

// ---------------------------------------------------------------------------
// Closed-form (Q, P) flow with residual validation
// ---------------------------------------------------------------------------

QPAnalytic::QPAnalytic(const AmplifierParams& params, const QPPoint& initial, Validation mode)
    : params_(params), initial_(QPPoint::checked(initial.q, initial.p)), cache_qp_(initial) {
    params_.validate();
    if (params_.regime() != Regime::elliptic) {
        throw RegimeError("QPAnalytic: closed forms cover the elliptic regime only");
    }
    omega_char_ = params_.big_omega();
    if (mode == Validation::force_fallback) {
        fallback_ = true;
        return;
    }

    // Validate the candidate closed forms against the linear system: compare
    // a finite-difference derivative (independent of the transcription) with
    // the system right-hand side over one beat period.
    const double t_span = 2.0 * kPi / std::min(omega_char_, params_.omega) + 1.0;
    const double h = 1e-3 / std::max(1.0, params_.omega + omega_char_);
    double worst = 0.0;
    double worst_t = 0.0;
    for (int i = 0; i <= 48; ++i) {
        const double t = t_span * i / 48.0;
        const QPPoint qm2 = closed_form(t - 2 * h), qm1 = closed_form(t - h);
        const QPPoint qp1 = closed_form(t + h), qp2 = closed_form(t + 2 * h);
        const QPPoint qc = closed_form(t);
        const cplx dq = (-qp2.q + 8.0 * qp1.q - 8.0 * qm1.q + qm2.q) / (12.0 * h);
        const cplx dp = (-qp2.p + 8.0 * qp1.p - 8.0 * qm1.p + qm2.p) / (12.0 * h);
        const CoeffTriple k = amplifier_coefficients(params_, t);
        const cplx eq = k.v * qc.q + k.h2 * qc.p;
        const cplx ep = -k.h1 * qc.q - k.v * qc.p;
        const double scale = std::max(1.0, std::max(std::abs(qc.q), std::abs(qc.p)));
        const double r = std::max(std::abs(dq - eq), std::abs(dp - ep)) / scale;
        if (r > worst) {
            worst = r;
            worst_t = t;
        }
    }
    residual_ = worst;
    if (worst > kResidualTol) {
        fallback_ = true;
        mismatch_ = OracleMismatch{worst_t, closed_form(worst_t), numeric(worst_t), worst};
    }
}

QPPoint QPAnalytic::closed_form(double t) const {
    const double w = params_.omega, om = omega_char_;
    const double th = params_.theta();
    const double g = 4.0 * params_.kappa * params_.rho() / om;
    const double ap = 0.5 * (om + w) * t, am = 0.5 * (om - w) * t;
    const double cp = std::cos(ap), sp = std::sin(ap);
    const double cm = std::cos(am), sm = std::sin(am);
    const double wp = 1.0 + w / om, wm = 1.0 - w / om;
    const cplx q0 = initial_.q, p0 = initial_.p;

    const cplx q = q0 / 2.0 *
                       (wm * cm + wp * cp + g * (std::cos(-ap + th) - std::cos(am + th))) +
                   p0 / (2.0 * w) *
                       (wp * sp - wm * sm + g * (std::sin(-ap + th) - std::sin(am + th)));
    const cplx p = w * q0 / 2.0 *
                       (wm * sm - wp * sp + g * (std::sin(-ap + th) - std::sin(am + th))) +
                   p0 / 2.0 *
                       (wm * cm + wp * cp + g * (std::cos(am + th) - std::cos(-ap + th)));
    return {q, p};
}

QPPoint QPAnalytic::numeric(double t) const {
    const std::lock_guard<std::mutex> lock(cache_mutex_);
    auto f = [&](const detail::StateN<4>& u, double tt) -> detail::StateN<4> {
        const CoeffTriple k = amplifier_coefficients(params_, tt);
        return {k.v * u[0] + k.h2 * u[2], k.v * u[1] + k.h2 * u[3],
                -k.h1 * u[0] - k.v * u[2], -k.h1 * u[1] - k.v * u[3]};
    };
    double t0 = 0.0;
    QPPoint start = initial_;
    if (cache_t_ <= t && cache_t_ > 0.0) {
        t0 = cache_t_;
        start = cache_qp_;
    }
    detail::StateN<4> u{start.q.real(), start.q.imag(), start.p.real(), start.p.imag()};
    if (t != t0) {
        detail::Dopri5<4, decltype(f)> stepper{f, 1e-10, 1e-12, 0.1};
        if (t > t0) {
            double tt = t0, h = std::min(0.1, t - t0);
            while (tt < t - 1e-15 * std::max(1.0, std::abs(t))) stepper.advance(u, tt, h, t);
        } else {
            // integrate backwards in tau = -t
            auto fb = [&](const detail::StateN<4>& s, double tau) {
                auto d = f(s, -tau);
                for (auto& x : d) x = -x;
                return d;
            };
            detail::Dopri5<4, decltype(fb)> back{fb, 1e-10, 1e-12, 0.1};
            double tau = -t0, h = std::min(0.1, -t + t0);
            while (tau < -t - 1e-15 * std::max(1.0, std::abs(t))) back.advance(u, tau, h, -t);
        }
    }
    const QPPoint result{cplx{u[0], u[1]}, cplx{u[2], u[3]}};
    if (t >= 0.0) {
        cache_t_ = t;
        cache_qp_ = result;
    }
    return result;
}

QPPoint QPAnalytic::at(double t) const {
    return fallback_ ? numeric(t) : closed_form(t);
}

}  // namespace gausspack
