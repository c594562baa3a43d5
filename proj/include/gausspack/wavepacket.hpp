#pragma once

#include <vector>

#include "gausspack/core.hpp"
#include "gausspack/dynamics.hpp"
#include "gausspack/geometry.hpp"
#include "gausspack/hamiltonian.hpp"

namespace gausspack {

// ---------------------------------------------------------------------------
// Gaussian packet reconstruction.
//
// The packet is determined by the first moments, the (Q,P) pair and hbar.
// Along a trajectory the prefactor 1/sqrt(Q) needs a continuous branch of
// arg Q, and the Riccati-form prefactor needs the accumulated phase integral
// z(t) = int_{t0}^t (H2 C + V) dt'; both are carried explicitly so that the
// two parametrizations agree exactly (z = log Q - log Q(t0) on the
// continuous branch).
// ---------------------------------------------------------------------------

struct GaussianState {
    FirstMoments moments{};
    QPPoint qp{};
    double hbar{1.0};

    double arg_q{0.0};        // unwrapped argument of Q
    cplx phase_integral{};    // z(t), zero at t0
    cplx q_t0{1.0, 0.0};      // Q(t0)
    double arg_q_t0{0.0};

    static GaussianState make(const FirstMoments& m, const QPPoint& qp, double hbar = 1.0);

    CovarianceTriple covariance() const { return covariance_from_qp(qp, hbar); }
    SiegelPoint siegel() const { return pi_map(qp); }
};

// Position representation, 1/sqrt(Q)-prefactor form.
cplx psi_position(const GaussianState& s, double q);

// Position representation, Riccati phase-integral form with the lower limit
// fixed at t0 and the extra Q(t0)^{-1/2} factor; equals psi_position exactly.
cplx psi_position_riccati(const GaussianState& s, double q);

// Momentum representation, sqrt(i/P)-prefactor form (branch tied to the
// position-form sqrt(Q)).
cplx psi_momentum(const GaussianState& s, double p);

// sigma_q sigma_p - sigma_qp^2 - hbar^2/4 for the state (should be ~0).
double rs_check(const GaussianState& s);

// ---------------------------------------------------------------------------
// Quadrature verification
// ---------------------------------------------------------------------------

// Sampling window center +- half_width standard deviations, n samples.
struct Grid1D {
    double center{0.0};
    double half_width{8.0};  // in units of the packet standard deviation
    int n{2048};

    void validate() const;  // n >= 16, covers >= 8 standard deviations
};

struct NormMoments {
    double norm{0.0};
    double mean{0.0};
    double variance{0.0};
};

// Simpson quadrature of |psi|^2, q|psi|^2 and (q - <q>)^2 |psi|^2.
// Throws CoverageError when the grid does not cover <q> +- 4 sigma.
NormMoments norm_and_moments(const GaussianState& s, const Grid1D& grid);

// ---------------------------------------------------------------------------
// Packet evolution and the Schrodinger-equation residual
// ---------------------------------------------------------------------------

struct GaussianTrajectory {
    double hbar{1.0};
    std::vector<double> times;
    std::vector<GaussianState> states;

    std::size_t size() const { return times.size(); }
    // index of the sample nearest to t
    std::size_t index_near(double t) const;
};

// Jointly integrates the (Q,P) system, the Ehrenfest flow and the phase
// integral z' = H2 C + V on one fixed-step RK4 grid, then unwraps arg Q.
GaussianTrajectory evolve_gaussian(const QuadraticCoefficients& coeffs,
                                   const GaussianState& initial, const IntegratorConfig& config);

// Relative L2 residual of i hbar d_t psi - H psi at the trajectory sample
// nearest to t, with H psi = 1/2 H1 q^2 psi - 1/2 H2 hbar^2 psi''
// - 1/2 V i hbar (2 q psi' + psi).  Time derivative by centered differences
// of the neighbouring samples; space derivatives by 4th-order stencils.
// Throws CoverageError when the packet is not contained in the grid.
double schrodinger_residual(const QuadraticCoefficients& coeffs, const GaussianTrajectory& traj,
                            const Grid1D& grid, double t);

}  // namespace gausspack
