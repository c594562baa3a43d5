#pragma once

#include "gausspack/core.hpp"
#include "gausspack/hamiltonian.hpp"

namespace gausspack {

// ---------------------------------------------------------------------------
// The five state-space charts.
//
//        M  --nu-->  H3
//        |            |chi
//        |pi          v
//        |           H2  --v--> D2  --u--> HP2
//        +-------------------------------->
//
// M carries the full linear-invariant data (Q,P); H3 is its real linear
// image; H2 carries the covariance triple; D2 and HP2 are the disk and
// Siegel half-plane Riccati charts.
// ---------------------------------------------------------------------------

// Point on the constraint manifold M: conj(Q)P - Q conj(P) = 2i.
struct QPPoint {
    cplx q{1.0, 0.0};  // Q
    cplx p{0.0, 1.0};  // P

    // |conj(Q)P - Q conj(P) - 2i|
    double constraint_residual() const;
    bool valid(double tol = kValidateTol) const { return constraint_residual() < tol; }
    // Rescale (Q,P) by the real factor that restores the constraint exactly.
    QPPoint renormalized() const;
    static QPPoint checked(cplx q, cplx p, double tol = kValidateTol);
};

// Point on H3: (x0)^2 + (x1)^2 - (x2)^2 - (x3)^2 = 1.
struct H3Point {
    double x0{0.0}, x1{1.0}, x2{0.0}, x3{0.0};

    double constraint_residual() const;
    bool valid(double tol = kValidateTol) const { return constraint_residual() < tol; }
    static H3Point checked(double x0, double x1, double x2, double x3,
                           double tol = kValidateTol);
};

// Upper sheet of H2: (y1)^2 - (y2)^2 - (y3)^2 = 1, y1 >= 1.
struct H2Point {
    double y1{1.0}, y2{0.0}, y3{0.0};

    double constraint_residual() const;
    bool valid(double tol = kValidateTol) const {
        return constraint_residual() < tol && y1 >= 1.0 - tol;
    }
    static H2Point checked(double y1, double y2, double y3, double tol = kValidateTol);
};

// Squeezing parameters: y = (cosh tau, sinh tau cos phi, sinh tau sin phi).
// phi is normalized to [0, 2pi); at the vertex tau = 0 the convention is
// phi = 0.
struct SqueezeCoords {
    double tau{0.0};
    double phi{0.0};
};

// Open unit disk.
struct DiskPoint {
    cplx zeta{0.0, 0.0};

    bool valid(double tol = 0.0) const { return std::abs(zeta) < 1.0 + tol; }
    static DiskPoint checked(cplx zeta);
};

// Siegel upper half plane: Im C > 0.  ctilde() = Q/P = 1/C is the
// momentum-representation Riccati variable (Im < 0).
struct SiegelPoint {
    cplx c{0.0, 1.0};

    cplx ctilde() const { return 1.0 / c; }
    bool valid() const { return c.imag() > 0.0; }
    static SiegelPoint checked(cplx c);
};

// Second moments (variances and symmetrized correlation).
struct CovarianceTriple {
    double sq{0.5};   // sigma_q
    double sp{0.5};   // sigma_p
    double sqp{0.0};  // sigma_qp

    // sigma_q sigma_p - sigma_qp^2 - hbar^2/4 (zero for pure Gaussian states)
    double rs_residual(double hbar) const;
    bool valid(double hbar, double tol = kValidateTol) const;
};

struct FirstMoments {
    double mq{0.0};  // <q>
    double mp{0.0};  // <p>
};

// ---------------------------------------------------------------------------
// Chart maps.
//
// Inputs are validated against their chart constraint (InvalidPointError /
// InvalidStateError).  The acceptance tolerance kMapTol is looser than the
// construction tolerances so that integrator-drifted trajectories (budget
// 1e-8 without renormalization) still convert; genuinely off-manifold
// points are rejected.
// ---------------------------------------------------------------------------

inline constexpr double kMapTol = 1e-6;

// nu: M -> H3 (linear bijection) and its inverse.
H3Point nu_map(const QPPoint& qp);
QPPoint nu_inverse(const H3Point& x);

// chi: H3 -> H2, the 2-to-1 covering chi(x) = chi(-x).
H2Point chi_map(const H3Point& x);

// v: H2 -> D2, stereographic projection from (-1,0,0) onto y1 = 0.
DiskPoint disk_projection(const H2Point& y);
H2Point disk_to_h2(const DiskPoint& d);

// u: D2 -> HP2, the Moebius bijection C = (zeta + i)/(i zeta + 1), and back.
SiegelPoint mobius_to_siegel(const DiskPoint& d);
DiskPoint mobius_to_disk(const SiegelPoint& s);

// pi: M -> HP2, C = P/Q;  pi~: M -> lower half plane, C~ = Q/P.
SiegelPoint pi_map(const QPPoint& qp);
cplx pi_tilde_map(const QPPoint& qp);

// Covariances from (Q,P): sigma_q = (hbar/2)|Q|^2, sigma_p = (hbar/2)|P|^2,
// sigma_qp = (hbar/4)(P conj(Q) + Q conj(P)).
CovarianceTriple covariance_from_qp(const QPPoint& qp, double hbar);

// Entrywise matching of the covariance matrix against the sl(2) basis:
// y1 = (sq+sp)/hbar, y2 = 2 sqp/hbar, y3 = (sp-sq)/hbar; and back.
H2Point h2_from_covariance(const CovarianceTriple& cov, double hbar);
CovarianceTriple covariance_from_h2(const H2Point& y, double hbar);

// C = sqp/sq + i hbar/(2 sq), with sq the variance.
SiegelPoint siegel_from_covariance(const CovarianceTriple& cov, double hbar);
H2Point siegel_to_h2(const SiegelPoint& s);

SqueezeCoords squeeze_coordinates(const H2Point& y);
H2Point h2_from_squeeze(const SqueezeCoords& sc);

// alpha = (i/sqrt(2 hbar)) (P <q> - Q <p>) and the inverse 2x2 solve.
cplx alpha_from_moments(const FirstMoments& m, const QPPoint& qp, double hbar);
FirstMoments moments_from_alpha(cplx alpha, const QPPoint& qp, double hbar);

// Standard symplectic area x y' - x' y for alpha = x + i y against
// beta = x' - i y' (note the conjugated convention on the second slot).
double symplectic_area(cplx alpha, cplx beta);

// ---------------------------------------------------------------------------
// Chart Hamiltonian functions.  The four second-moment charts agree through
// the maps: H_M = H_HP o pi = e_{H2} o (chi o nu) = H_D o v o chi o nu.
// ---------------------------------------------------------------------------

double energy(const QPPoint& qp, const CoeffTriple& k);
double energy(const H3Point& x, const CoeffTriple& k);
double energy(const H2Point& y, const CoeffTriple& k);
double energy(const SqueezeCoords& sc, const CoeffTriple& k);
double energy(const DiskPoint& d, const CoeffTriple& k);
double energy(const SiegelPoint& s, const CoeffTriple& k);

// Expectation value of the Hamiltonian on the alpha plane:
// (hbar/4) (conj(G) a^2 + 2 W |a|^2 + G conj(a)^2).
double moments_energy(cplx alpha, cplx g, double w, double hbar);

// ---------------------------------------------------------------------------
// Poisson brackets on the Riccati charts
// ---------------------------------------------------------------------------

// Partial derivatives of a real function at a point, with respect to the
// real and imaginary parts of the chart coordinate.
struct Gradient2 {
    double d_re{0.0};
    double d_im{0.0};
};

// {A,B}_WP = C_I^2 [dA/dC_I dB/dC_R - dA/dC_R dB/dC_I]
double poisson_bracket_siegel(const Gradient2& a, const Gradient2& b, const SiegelPoint& at);

// Same expression with prefactor (1 - |zeta|^2)^2 / 4.
double poisson_bracket_disk(const Gradient2& a, const Gradient2& b, const DiskPoint& at);

}  // namespace gausspack
