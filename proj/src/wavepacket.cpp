#include "gausspack/wavepacket.hpp"

#include <algorithm>
#include <cmath>

#include "gausspack/detail/rk.hpp"

namespace gausspack {

GaussianState GaussianState::make(const FirstMoments& m, const QPPoint& qp, double hbar) {
    if (!(hbar > 0.0)) throw std::invalid_argument("GaussianState: hbar must be > 0");
    GaussianState s;
    s.moments = m;
    s.qp = QPPoint::checked(qp.q, qp.p);
    s.hbar = hbar;
    s.arg_q = std::arg(qp.q);
    s.phase_integral = cplx{0.0, 0.0};
    s.q_t0 = qp.q;
    s.arg_q_t0 = s.arg_q;
    return s;
}

namespace {

// 1/sqrt(Q) on the unwrapped branch
cplx inv_sqrt_on_branch(const cplx& q, double arg_unwrapped) {
    return std::exp(cplx{-0.5 * std::log(std::abs(q)), -0.5 * arg_unwrapped});
}

cplx packet_exponent(const GaussianState& s, const cplx& riccati_c, double q) {
    const double dq = q - s.moments.mq;
    return 0.5 * kImag / s.hbar * riccati_c * dq * dq +
           kImag / s.hbar * s.moments.mp * dq +
           0.5 * kImag / s.hbar * s.moments.mq * s.moments.mp;
}

}  // namespace

cplx psi_position(const GaussianState& s, double q) {
    const cplx c = s.qp.p / s.qp.q;
    const double norm_c = std::pow(kPi * s.hbar, -0.25);
    return norm_c * inv_sqrt_on_branch(s.qp.q, s.arg_q) * std::exp(packet_exponent(s, c, q));
}

cplx psi_position_riccati(const GaussianState& s, double q) {
    const cplx c = s.qp.p / s.qp.q;
    const double norm_c = std::pow(kPi * s.hbar, -0.25);
    return norm_c * inv_sqrt_on_branch(s.q_t0, s.arg_q_t0) *
           std::exp(packet_exponent(s, c, q) - 0.5 * s.phase_integral);
}

cplx psi_momentum(const GaussianState& s, double p) {
    // sqrt(i/P) realized as Q^{-1/2} (-i C)^{-1/2}: the second factor has
    // positive real part on the Siegel half plane, so its principal square
    // root is continuous and the overall branch follows arg Q.
    const cplx c = s.qp.p / s.qp.q;
    const cplx pref = inv_sqrt_on_branch(s.qp.q, s.arg_q) / std::sqrt(-kImag * c);
    const double dp = p - s.moments.mp;
    const cplx ctilde = s.qp.q / s.qp.p;
    const cplx expo = -0.5 * kImag / s.hbar * ctilde * dp * dp -
                      kImag / s.hbar * s.moments.mq * dp -
                      0.5 * kImag / s.hbar * s.moments.mq * s.moments.mp;
    return std::pow(kPi * s.hbar, -0.25) * pref * std::exp(expo);
}

double rs_check(const GaussianState& s) {
    return covariance_from_qp(s.qp, s.hbar).rs_residual(s.hbar);
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

void Grid1D::validate() const {
    if (n < 16) throw std::invalid_argument("Grid1D: need at least 16 samples");
    if (half_width < 4.0) {
        throw std::invalid_argument("Grid1D: must cover at least 8 standard deviations");
    }
}

namespace {

// Composite Simpson weights for n samples; a 3/8 block absorbs an odd
// interval count at the tail.
std::vector<double> simpson_weights(int n, double h) {
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    const int intervals = n - 1;
    const int simpson_end = intervals % 2 == 0 ? n - 1 : n - 4;
    for (int i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (intervals % 2 != 0) {
        const int j = n - 4;
        w[j] += 3.0 * h / 8.0;
        w[j + 1] += 9.0 * h / 8.0;
        w[j + 2] += 9.0 * h / 8.0;
        w[j + 3] += 3.0 * h / 8.0;
    }
    return w;
}

std::vector<double> grid_points(const Grid1D& grid, double sigma) {
    std::vector<double> q(static_cast<std::size_t>(grid.n));
    const double w = grid.half_width * sigma;
    for (int i = 0; i < grid.n; ++i) {
        q[static_cast<std::size_t>(i)] =
            grid.center - w + 2.0 * w * i / (grid.n - 1);
    }
    return q;
}

void check_coverage(const Grid1D& grid, double sigma, double mq) {
    const double lo = grid.center - grid.half_width * sigma;
    const double hi = grid.center + grid.half_width * sigma;
    if (lo > mq - 4.0 * sigma || hi < mq + 4.0 * sigma) {
        throw CoverageError("grid does not cover the packet (need <q> +- 4 sigma)");
    }
}

}  // namespace

NormMoments norm_and_moments(const GaussianState& s, const Grid1D& grid) {
    grid.validate();
    const double sigma = std::sqrt(covariance_from_qp(s.qp, s.hbar).sq);
    check_coverage(grid, sigma, s.moments.mq);

    const auto q = grid_points(grid, sigma);
    const double h = q[1] - q[0];
    const auto w = simpson_weights(grid.n, h);

    NormMoments out;
    double m2 = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double rho = std::norm(psi_position(s, q[i]));
        out.norm += w[i] * rho;
        out.mean += w[i] * q[i] * rho;
        const double d = q[i] - s.moments.mq;
        m2 += w[i] * d * d * rho;
    }
    out.mean /= out.norm;
    out.variance = m2 / out.norm;
    return out;
}

// ---------------------------------------------------------------------------
// Joint evolution
// ---------------------------------------------------------------------------

std::size_t GaussianTrajectory::index_near(double t) const {
    const auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return 0;
    if (it == times.end()) return times.size() - 1;
    const std::size_t i = static_cast<std::size_t>(it - times.begin());
    return (t - times[i - 1] < times[i] - t) ? i - 1 : i;
}

GaussianTrajectory evolve_gaussian(const QuadraticCoefficients& coeffs,
                                   const GaussianState& initial,
                                   const IntegratorConfig& config) {
    config.validate();
    if (config.method != Method::rk4_fixed) {
        throw std::invalid_argument("evolve_gaussian: fixed-step integration only");
    }
    // state: (Q_R, Q_I, P_R, P_I, <q>, <p>, z_R, z_I)
    auto f = [&](const detail::StateN<8>& u, double t) -> detail::StateN<8> {
        const CoeffTriple k = coeffs.at(t);
        const cplx q{u[0], u[1]}, p{u[2], u[3]};
        const cplx zdot = k.h2 * (p / q) + k.v;
        return {k.v * u[0] + k.h2 * u[2], k.v * u[1] + k.h2 * u[3],
                -k.h1 * u[0] - k.v * u[2], -k.h1 * u[1] - k.v * u[3],
                k.v * u[4] + k.h2 * u[5],  -k.h1 * u[4] - k.v * u[5],
                zdot.real(),               zdot.imag()};
    };

    GaussianTrajectory traj;
    traj.hbar = initial.hbar;

    detail::StateN<8> u{initial.qp.q.real(), initial.qp.q.imag(), initial.qp.p.real(),
                        initial.qp.p.imag(), initial.moments.mq,  initial.moments.mp,
                        0.0,                 0.0};
    double t = config.t0;
    double arg_prev = std::arg(initial.qp.q);
    double arg_acc = arg_prev;

    auto record = [&] {
        GaussianState s;
        s.moments = {u[4], u[5]};
        s.qp = {cplx{u[0], u[1]}, cplx{u[2], u[3]}};
        s.hbar = initial.hbar;
        s.arg_q = arg_acc;
        s.phase_integral = cplx{u[6], u[7]};
        s.q_t0 = initial.qp.q;
        s.arg_q_t0 = std::arg(initial.qp.q);
        traj.times.push_back(t);
        traj.states.push_back(s);
    };
    record();

    const double h = config.step;
    const auto n_steps = static_cast<long>(std::ceil((config.t1 - config.t0) / h - 1e-12));
    for (long i = 1; i <= n_steps; ++i) {
        const double tn = std::min(config.t0 + static_cast<double>(i) * h, config.t1);
        u = detail::rk4_step(f, u, t, tn - t);
        t = tn;
        const double a = std::arg(cplx{u[0], u[1]});
        double d = a - arg_prev;
        while (d > kPi) d -= 2.0 * kPi;
        while (d < -kPi) d += 2.0 * kPi;
        arg_acc += d;
        arg_prev = a;
        record();
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Schrodinger residual
// ---------------------------------------------------------------------------

double schrodinger_residual(const QuadraticCoefficients& coeffs, const GaussianTrajectory& traj,
                            const Grid1D& grid, double t) {
    grid.validate();
    if (traj.size() < 3) throw std::invalid_argument("schrodinger_residual: trajectory too short");
    std::size_t i = traj.index_near(t);
    i = std::clamp<std::size_t>(i, 1, traj.size() - 2);
    const double dt_m = traj.times[i] - traj.times[i - 1];
    const double dt_p = traj.times[i + 1] - traj.times[i];
    if (std::abs(dt_p - dt_m) > 1e-9 * dt_p) {
        throw std::invalid_argument("schrodinger_residual: non-uniform time spacing around t");
    }
    if (dt_p > 1e-3 * (1.0 + 1e-9)) {
        throw std::invalid_argument(
            "schrodinger_residual: trajectory too coarse for time differencing (need dt <= 1e-3)");
    }

    const GaussianState& s = traj.states[i];
    const double hbar = traj.hbar;
    const double sigma = std::sqrt(covariance_from_qp(s.qp, hbar).sq);
    check_coverage(grid, sigma, s.moments.mq);
    const auto q = grid_points(grid, sigma);
    const int n = grid.n;
    const double h = q[1] - q[0];

    std::vector<cplx> pm(q.size()), p0(q.size()), pp(q.size());
    double peak = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        pm[j] = psi_position(traj.states[i - 1], q[j]);
        p0[j] = psi_position(s, q[j]);
        pp[j] = psi_position(traj.states[i + 1], q[j]);
        peak = std::max(peak, std::abs(p0[j]));
    }
    if (std::abs(p0.front()) > 1e-6 * peak || std::abs(p0.back()) > 1e-6 * peak) {
        throw CoverageError("schrodinger_residual: packet touches the grid boundary");
    }

    const CoeffTriple k = coeffs.at(traj.times[i]);
    double num = 0.0, den = 0.0;
    for (int j = 2; j < n - 2; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const cplx d1 =
            (-p0[ju + 2] + 8.0 * p0[ju + 1] - 8.0 * p0[ju - 1] + p0[ju - 2]) / (12.0 * h);
        const cplx d2 = (-p0[ju + 2] + 16.0 * p0[ju + 1] - 30.0 * p0[ju] + 16.0 * p0[ju - 1] -
                         p0[ju - 2]) /
                        (12.0 * h * h);
        const cplx hpsi = 0.5 * k.h1 * q[ju] * q[ju] * p0[ju] - 0.5 * k.h2 * hbar * hbar * d2 -
                          0.5 * k.v * kImag * hbar * (2.0 * q[ju] * d1 + p0[ju]);
        const cplx dpsi_dt = (pp[ju] - pm[ju]) / (dt_m + dt_p);
        const cplx r = kImag * hbar * dpsi_dt - hpsi;
        num += std::norm(r);
        den += std::norm(hpsi);
    }
    if (!(den > 0.0)) throw CoverageError("schrodinger_residual: H psi vanished on the grid");
    return std::sqrt(num / den);
}

}  // namespace gausspack
