#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gausspack/core.hpp"
#include "gausspack/geometry.hpp"
#include "gausspack/hamiltonian.hpp"

namespace gausspack {

// ---------------------------------------------------------------------------
// Charts as dynamical state spaces
// ---------------------------------------------------------------------------

enum class Chart { moments, m, h3, h2, disk, siegel };

const char* chart_name(Chart c);
Chart chart_from_name(std::string_view name);  // throws ConfigError
int chart_dim(Chart c);                        // number of real coordinates

// One point of any chart, packed into real coordinates:
//   moments: (<q>, <p>)          m:    (Q_R, Q_I, P_R, P_I)
//   h3:      (x0, x1, x2, x3)    h2:   (tau, phi)
//   disk:    (z_R, z_I)          siegel: (C_R, C_I)
struct ChartState {
    Chart chart{Chart::m};
    std::array<double, 4> u{};

    static ChartState from(const FirstMoments& m);
    static ChartState from(const QPPoint& qp);
    static ChartState from(const H3Point& x);
    static ChartState from(const SqueezeCoords& sc);
    static ChartState from(const DiskPoint& d);
    static ChartState from(const SiegelPoint& s);

    FirstMoments to_moments() const;
    QPPoint to_qp() const;
    H3Point to_h3() const;
    SqueezeCoords to_squeeze() const;
    H2Point to_h2() const;  // from the (tau, phi) state
    DiskPoint to_disk() const;
    SiegelPoint to_siegel() const;
};

// The chart vector field at (point, t):
//   moments: Ehrenfest   <q>' = V<q> + H2<p>,  <p>' = -H1<q> - V<p>
//   m:       Q' = VQ + H2 P,  P' = -H1 Q - V P
//   h3:      the linear pushforward of the m flow (with the corrected x^2
//            term in the x1 equation)
//   h2:      tau' = -2V sin phi - (H1-H2) cos phi,
//            phi' = -[2V cos phi - (H1-H2) sin phi] coth tau - (H1+H2)
//   disk:    zeta' = (H1-H2-2iV)/2 zeta^2 - i(H1+H2) zeta - (H1-H2+2iV)/2
//   siegel:  C' = -H2 C^2 - 2V C - H1
// Throws ChartSingularityError for the h2 chart within tau_min of the vertex.
ChartState rhs(const QuadraticCoefficients& coeffs, const ChartState& state, double t);

inline constexpr double kTauMin = 1e-6;

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

enum class Method { rk4_fixed, rk45_adaptive };

struct IntegratorConfig {
    Method method{Method::rk4_fixed};
    double step{1e-3};   // fixed-step size
    double rtol{1e-10};  // adaptive controls
    double atol{1e-12};
    double max_step{0.1};
    double t0{0.0};
    double t1{10.0};
    bool renormalize_constraint{false};  // m chart: rescale each step
    double hbar{1.0};                    // used only for the diagnostics

    void validate() const;  // throws std::invalid_argument
};

struct SampleDiagnostics {
    double constraint_drift{0.0};
    double energy{0.0};
    double rs_residual{0.0};
};

struct Trajectory {
    Chart chart{Chart::m};
    double hbar{1.0};
    std::vector<double> times;
    std::vector<ChartState> points;
    std::vector<SampleDiagnostics> diagnostics;

    std::size_t size() const { return times.size(); }
    double max_constraint_drift() const;
    double max_rs_residual() const;
    double energy_drift() const;  // max |E(t) - E(t0)|
};

SampleDiagnostics diagnostics_at(const QuadraticCoefficients& coeffs, const ChartState& state,
                                 double t, double hbar);

// Integrate the chart flow; every accepted step is recorded as a sample.
Trajectory integrate(const QuadraticCoefficients& coeffs, const ChartState& initial,
                     const IntegratorConfig& config);

// ---------------------------------------------------------------------------
// Wei-Norman factorization coefficients
// ---------------------------------------------------------------------------

// C1' = -H2 C1^2 - 2V C1 - H1,  C2' = -H2 C1 - V,  C3' = -e^{2 C2} H2,
// all starting from zero.  C1 starts on the boundary of the Siegel half
// plane and may blow up in finite time.
struct WeiNormanCoeffs {
    std::vector<double> times;
    std::vector<cplx> c1, c2, c3;
};

// Throws RiccatiBlowUpError (with the located singular time) if C1 blows up
// inside the grid span.  The grid must be increasing and start at 0.
WeiNormanCoeffs wei_norman(const QuadraticCoefficients& coeffs, std::span<const double> grid);

// Locate a finite-time singularity of the C1 flow in (0, t_max], if any.
std::optional<double> wei_norman_blow_up(const QuadraticCoefficients& coeffs, double t_max);

inline constexpr double kBlowUpThreshold = 1e8;

// ---------------------------------------------------------------------------
// The linear-invariant eigenvalue along paired flows
// ---------------------------------------------------------------------------

// alpha_inv(t) = (i/sqrt(2 hbar)) (P(t) <q>(t) - Q(t) <p>(t)); constant when
// both trajectories evolve under the same coefficients.  Both trajectories
// must share the same time grid.
std::vector<cplx> invariant_alpha(const Trajectory& moments, const Trajectory& qp, double hbar);

}  // namespace gausspack
