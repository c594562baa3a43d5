#include "gausspack/geometry.hpp"

#include <cmath>

namespace gausspack {

// ---------------------------------------------------------------------------
// Point types
// ---------------------------------------------------------------------------

double QPPoint::constraint_residual() const {
    // conj(Q)P - Q conj(P) = 2i Im(conj(Q) P)
    return std::abs(2.0 * (std::conj(q) * p).imag() - 2.0);
}

QPPoint QPPoint::renormalized() const {
    const double s = (std::conj(q) * p).imag();
    if (!(s > 0.0)) {
        throw InvalidPointError("QPPoint: Im(conj(Q) P) <= 0, cannot renormalize");
    }
    const double lambda = 1.0 / std::sqrt(s);
    return {lambda * q, lambda * p};
}

QPPoint QPPoint::checked(cplx q, cplx p, double tol) {
    QPPoint pt{q, p};
    if (!pt.valid(tol)) {
        throw InvalidPointError("QPPoint: constraint |conj(Q)P - Q conj(P) - 2i| violated");
    }
    return pt;
}

double H3Point::constraint_residual() const {
    return std::abs(x0 * x0 + x1 * x1 - x2 * x2 - x3 * x3 - 1.0);
}

H3Point H3Point::checked(double x0, double x1, double x2, double x3, double tol) {
    H3Point pt{x0, x1, x2, x3};
    if (!pt.valid(tol)) throw InvalidPointError("H3Point: hyperboloid constraint violated");
    return pt;
}

double H2Point::constraint_residual() const {
    return std::abs(y1 * y1 - y2 * y2 - y3 * y3 - 1.0);
}

H2Point H2Point::checked(double y1, double y2, double y3, double tol) {
    H2Point pt{y1, y2, y3};
    if (!pt.valid(tol)) {
        throw InvalidPointError("H2Point: not on the upper sheet of the hyperboloid");
    }
    return pt;
}

DiskPoint DiskPoint::checked(cplx zeta) {
    DiskPoint pt{zeta};
    if (!pt.valid()) throw InvalidPointError("DiskPoint: |zeta| must be < 1");
    return pt;
}

SiegelPoint SiegelPoint::checked(cplx c) {
    SiegelPoint pt{c};
    if (!pt.valid()) throw InvalidPointError("SiegelPoint: Im(C) must be > 0");
    return pt;
}

double CovarianceTriple::rs_residual(double hbar) const {
    return sq * sp - sqp * sqp - 0.25 * hbar * hbar;
}

bool CovarianceTriple::valid(double hbar, double tol) const {
    return sq > 0.0 && sp > 0.0 && std::abs(rs_residual(hbar)) < tol;
}

// ---------------------------------------------------------------------------
// Chart maps
// ---------------------------------------------------------------------------

namespace {

void require_valid(const QPPoint& qp) {
    if (!qp.valid(kMapTol)) {
        throw InvalidPointError("(Q,P) violates the 2i constraint beyond the map tolerance");
    }
}

void require_valid(const H3Point& x) {
    if (!x.valid(kMapTol)) throw InvalidPointError("point is off the H3 hyperboloid");
}

void require_valid(const H2Point& y) {
    if (!y.valid(kMapTol)) throw InvalidPointError("point is off the upper sheet of H2");
}

void require_valid(const DiskPoint& d) {
    if (!d.valid()) throw InvalidPointError("zeta lies outside the open unit disk");
}

void require_valid(const SiegelPoint& s) {
    if (!s.valid()) throw InvalidPointError("C lies outside the Siegel upper half plane");
}

}  // namespace

H3Point nu_map(const QPPoint& qp) {
    require_valid(qp);
    const double qr = qp.q.real(), qi = qp.q.imag();
    const double pr = qp.p.real(), pi = qp.p.imag();
    return {0.5 * (pr - qi), 0.5 * (qr + pi), 0.5 * (pr + qi), 0.5 * (pi - qr)};
}

QPPoint nu_inverse(const H3Point& x) {
    require_valid(x);
    return {cplx{x.x1 - x.x3, x.x2 - x.x0}, cplx{x.x2 + x.x0, x.x1 + x.x3}};
}

H2Point chi_map(const H3Point& x) {
    require_valid(x);
    return {x.x0 * x.x0 + x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3,
            2.0 * (x.x1 * x.x2 - x.x0 * x.x3), 2.0 * (x.x1 * x.x3 + x.x0 * x.x2)};
}

DiskPoint disk_projection(const H2Point& y) {
    require_valid(y);
    return {cplx{y.y2, y.y3} / (1.0 + y.y1)};
}

H2Point disk_to_h2(const DiskPoint& d) {
    require_valid(d);
    const double n = std::norm(d.zeta);
    const double f = 1.0 / (1.0 - n);
    return {(1.0 + n) * f, 2.0 * d.zeta.real() * f, 2.0 * d.zeta.imag() * f};
}

SiegelPoint mobius_to_siegel(const DiskPoint& d) {
    require_valid(d);
    return {(d.zeta + kImag) / (kImag * d.zeta + 1.0)};
}

DiskPoint mobius_to_disk(const SiegelPoint& s) {
    require_valid(s);
    return {(s.c - kImag) / (1.0 - kImag * s.c)};
}

SiegelPoint pi_map(const QPPoint& qp) {
    require_valid(qp);
    return {qp.p / qp.q};
}

cplx pi_tilde_map(const QPPoint& qp) {
    require_valid(qp);
    return qp.q / qp.p;
}

CovarianceTriple covariance_from_qp(const QPPoint& qp, double hbar) {
    require_valid(qp);
    return {0.5 * hbar * std::norm(qp.q), 0.5 * hbar * std::norm(qp.p),
            0.5 * hbar * (qp.p * std::conj(qp.q)).real()};
}

H2Point h2_from_covariance(const CovarianceTriple& cov, double hbar) {
    if (!cov.valid(hbar, kMapTol)) {
        throw InvalidStateError("covariance triple violates the Robertson-Schrodinger equality");
    }
    return {(cov.sq + cov.sp) / hbar, 2.0 * cov.sqp / hbar, (cov.sp - cov.sq) / hbar};
}

CovarianceTriple covariance_from_h2(const H2Point& y, double hbar) {
    return {0.5 * hbar * (y.y1 - y.y3), 0.5 * hbar * (y.y1 + y.y3), 0.5 * hbar * y.y2};
}

SiegelPoint siegel_from_covariance(const CovarianceTriple& cov, double hbar) {
    if (!(cov.sq > 0.0)) throw InvalidStateError("sigma_q must be positive");
    return {cplx{cov.sqp / cov.sq, 0.5 * hbar / cov.sq}};
}

H2Point siegel_to_h2(const SiegelPoint& s) {
    require_valid(s);
    const double n = std::norm(s.c);
    const double ci = s.c.imag();
    return {(1.0 + n) / (2.0 * ci), s.c.real() / ci, (n - 1.0) / (2.0 * ci)};
}

SqueezeCoords squeeze_coordinates(const H2Point& y) {
    require_valid(y);
    const double tau = std::acosh(std::max(y.y1, 1.0));
    if (tau == 0.0) return {0.0, 0.0};
    double phi = std::atan2(y.y3, y.y2);
    if (phi < 0.0) phi += 2.0 * kPi;
    return {tau, phi};
}

H2Point h2_from_squeeze(const SqueezeCoords& sc) {
    return {std::cosh(sc.tau), std::sinh(sc.tau) * std::cos(sc.phi),
            std::sinh(sc.tau) * std::sin(sc.phi)};
}

cplx alpha_from_moments(const FirstMoments& m, const QPPoint& qp, double hbar) {
    require_valid(qp);
    return kImag / std::sqrt(2.0 * hbar) * (qp.p * m.mq - qp.q * m.mp);
}

FirstMoments moments_from_alpha(cplx alpha, const QPPoint& qp, double hbar) {
    require_valid(qp);
    // P <q> - Q <p> = -i sqrt(2 hbar) alpha; the real 2x2 system has unit
    // determinant Im(conj(Q) P) = 1 on the constraint manifold.
    const cplx rhs = -kImag * std::sqrt(2.0 * hbar) * alpha;
    const double det = (std::conj(qp.q) * qp.p).imag();
    const double mq = (qp.q.real() * rhs.imag() - qp.q.imag() * rhs.real()) / det;
    const double mp = (qp.p.real() * rhs.imag() - qp.p.imag() * rhs.real()) / det;
    return {mq, mp};
}

double symplectic_area(cplx alpha, cplx beta) {
    // alpha = x + i y, beta = x' - i y'  ->  x y' - x' y
    const double x = alpha.real(), y = alpha.imag();
    const double xp = beta.real(), yp = -beta.imag();
    return x * yp - xp * y;
}

// ---------------------------------------------------------------------------
// Chart Hamiltonian functions
// ---------------------------------------------------------------------------

double energy(const QPPoint& qp, const CoeffTriple& k) {
    require_valid(qp);
    return k.h1 * std::norm(qp.q) + 2.0 * k.v * (qp.q * std::conj(qp.p)).real() +
           k.h2 * std::norm(qp.p);
}

double energy(const H3Point& x, const CoeffTriple& k) {
    return energy(chi_map(x), k);
}

double energy(const H2Point& y, const CoeffTriple& k) {
    require_valid(y);
    return (k.h2 + k.h1) * y.y1 + 2.0 * k.v * y.y2 + (k.h2 - k.h1) * y.y3;
}

double energy(const SqueezeCoords& sc, const CoeffTriple& k) {
    return energy(h2_from_squeeze(sc), k);
}

double energy(const DiskPoint& d, const CoeffTriple& k) {
    require_valid(d);
    const double n = std::norm(d.zeta);
    const double zr = d.zeta.real(), zi = d.zeta.imag();
    return (k.h1 * (1.0 + n - 2.0 * zi) + 4.0 * k.v * zr + k.h2 * (1.0 + n + 2.0 * zi)) /
           (1.0 - n);
}

double energy(const SiegelPoint& s, const CoeffTriple& k) {
    require_valid(s);
    return (k.h1 + 2.0 * k.v * s.c.real() + k.h2 * std::norm(s.c)) / s.c.imag();
}

double moments_energy(cplx alpha, cplx g, double w, double hbar) {
    return 0.25 * hbar *
           (2.0 * (g * std::conj(alpha) * std::conj(alpha)).real() + 2.0 * w * std::norm(alpha));
}

// ---------------------------------------------------------------------------
// Poisson brackets
// ---------------------------------------------------------------------------

double poisson_bracket_siegel(const Gradient2& a, const Gradient2& b, const SiegelPoint& at) {
    const double ci = at.c.imag();
    return ci * ci * (a.d_im * b.d_re - a.d_re * b.d_im);
}

double poisson_bracket_disk(const Gradient2& a, const Gradient2& b, const DiskPoint& at) {
    const double f = 1.0 - std::norm(at.zeta);
    return 0.25 * f * f * (a.d_im * b.d_re - a.d_re * b.d_im);
}

}  // namespace gausspack
