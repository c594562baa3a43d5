#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "gausspack/core.hpp"

namespace gausspack::detail {

template <std::size_t N>
using StateN = std::array<double, N>;

template <std::size_t N>
StateN<N> axpy(const StateN<N>& y, double a, const StateN<N>& d) {
    StateN<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + a * d[i];
    return r;
}

// Classical fixed-step 4th-order Runge-Kutta step.
template <std::size_t N, class F>
StateN<N> rk4_step(F&& f, const StateN<N>& y, double t, double h) {
    const StateN<N> k1 = f(y, t);
    const StateN<N> k2 = f(axpy(y, 0.5 * h, k1), t + 0.5 * h);
    const StateN<N> k3 = f(axpy(y, 0.5 * h, k2), t + 0.5 * h);
    const StateN<N> k4 = f(axpy(y, h, k3), t + h);
    StateN<N> r;
    for (std::size_t i = 0; i < N; ++i) {
        r[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return r;
}

// Dormand-Prince 5(4) embedded pair.  advance() takes one accepted step with
// error control and updates (t, y, h) in place.
template <std::size_t N, class F>
struct Dopri5 {
    F f;
    double rtol{1e-10};
    double atol{1e-12};
    double max_step{0.1};

    static constexpr int kMaxRejects = 60;

    // Returns the step size actually used; throws IntegrationError when the
    // step shrinks below machine resolution.
    double advance(StateN<N>& y, double& t, double& h, double t_end) {
        for (int attempt = 0; attempt < kMaxRejects; ++attempt) {
            h = std::min({h, max_step, t_end - t});
            if (!(h > 0.0) || t + h == t) {
                throw IntegrationError("adaptive integrator: step size underflow", t);
            }
            StateN<N> y5, y4;
            step_pair(y, t, h, y5, y4);
            double err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                const double e = (y5[i] - y4[i]) / sc;
                err += e * e;
            }
            err = std::sqrt(err / N);
            if (!std::isfinite(err)) {
                h *= 0.25;
                continue;
            }
            if (err <= 1.0) {
                const double used = h;
                t += h;
                y = y5;
                const double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
                h *= std::min(5.0, std::max(0.2, fac));
                return used;
            }
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
        throw IntegrationError("adaptive integrator: too many rejected steps", t);
    }

private:
    void step_pair(const StateN<N>& y, double t, double h, StateN<N>& y5, StateN<N>& y4) {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                                a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                                e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

        const StateN<N> k1 = f(y, t);
        StateN<N> w;
        for (std::size_t i = 0; i < N; ++i) w[i] = y[i] + h * a21 * k1[i];
        const StateN<N> k2 = f(w, t + c2 * h);
        for (std::size_t i = 0; i < N; ++i) w[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const StateN<N> k3 = f(w, t + c3 * h);
        for (std::size_t i = 0; i < N; ++i) {
            w[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        }
        const StateN<N> k4 = f(w, t + c4 * h);
        for (std::size_t i = 0; i < N; ++i) {
            w[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        }
        const StateN<N> k5 = f(w, t + c5 * h);
        for (std::size_t i = 0; i < N; ++i) {
            w[i] = y[i] +
                   h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        }
        const StateN<N> k6 = f(w, t + h);
        for (std::size_t i = 0; i < N; ++i) {
            y5[i] = y[i] +
                    h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        }
        const StateN<N> k7 = f(y5, t + h);
        for (std::size_t i = 0; i < N; ++i) {
            y4[i] = y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                e6 * k6[i] + e7 * k7[i]);
        }
    }
};

}  // namespace gausspack::detail
