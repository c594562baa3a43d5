#pragma once

#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "gausspack/core.hpp"
#include "gausspack/geometry.hpp"
#include "gausspack/hamiltonian.hpp"

namespace gausspack {

// ---------------------------------------------------------------------------
// Closed-form solutions for the degenerate parametric amplifier, used as
// analytic oracles against the numerical flows.
// ---------------------------------------------------------------------------

// alpha'(0) for the amplifier alpha flow
//   alpha' = -(i/2)(xi e^{-i omega t} conj(alpha) + 2 omega alpha).
cplx alpha_dot_initial(const AmplifierParams& params, cplx alpha0);

// Right-hand side of the alpha flow at (alpha, t).
cplx alpha_ode_rhs(const AmplifierParams& params, cplx alpha, double t);

// The matching regime branch of the integral curves; continuous across the
// regime boundaries in the limit Omega -> 0.
cplx alpha_analytic(const AmplifierParams& params, cplx alpha0, double t);

// Fixed-step RK4 integration of the alpha flow on a grid (for cross checks).
std::vector<cplx> alpha_numeric(const AmplifierParams& params, cplx alpha0,
                                std::span<const double> grid);

// Solution decomposed into its two rotating modes (elliptic regime):
//   alpha(t) = r1 e^{i(mu t + phi1)} + r2 e^{i(nu t + phi2)},
//   mu = (Omega - omega)/2,  nu = -(Omega + omega)/2.
struct AmplifierSolution {
    Regime regime{Regime::elliptic};
    double omega{0.0};
    cplx xi{0.0, 0.0};
    double omega_char{0.0};  // Omega (elliptic) or Omega~ (hyperbolic); 0 parabolic
    cplx alpha0{0.0, 0.0};
    cplx alphadot0{0.0, 0.0};
    double r1{0.0}, phi1{0.0}, r2{0.0}, phi2{0.0};  // polar mode factors (elliptic)
};

AmplifierSolution decompose_alpha(const AmplifierParams& params, cplx alpha0);

// ---------------------------------------------------------------------------
// Curve classification (elliptic regime only)
// ---------------------------------------------------------------------------

enum class CurveKind { epicycloid, epitrochoid, open };

const char* curve_kind_name(CurveKind k);

struct CurveClass {
    CurveKind kind{CurveKind::open};
    double mu{0.0};
    double nu{0.0};
    double ratio{0.0};  // nu/mu = (omega + Omega)/(omega - Omega)
    long ratio_num{0};  // rational approximation when closed
    long ratio_den{0};
    std::optional<double> period;  // minimal T with mu T, nu T in 2 pi Z
};

// Rational detection policy for the closedness condition: the ratio is taken
// as rational when a continued-fraction convergent with denominator <= 64
// matches it within 1e-9.
inline constexpr long kMaxRatioDenominator = 64;
inline constexpr double kRatioTol = 1e-9;

// Throws RegimeError outside the elliptic regime.
CurveClass classify_curve(const AmplifierParams& params, cplx alpha0);

// ---------------------------------------------------------------------------
// Closed-form (Q, P) flow, validated against the linear system
// ---------------------------------------------------------------------------

struct OracleMismatch {
    double t{0.0};
    QPPoint analytic;
    QPPoint numeric;
    double residual{0.0};
};

// Candidate closed-form solution of the amplifier (Q,P) system.  At
// construction the closed forms are validated by substitution into the
// linear system on a sample grid; when the residual exceeds the tolerance,
// evaluation falls back to adaptive integration (rtol 1e-10) and the
// discrepancy is kept available in mismatch().
class QPAnalytic {
public:
    static constexpr double kResidualTol = 1e-6;

    // force_fallback skips the closed forms entirely (used to exercise the
    // adaptive-oracle path even when validation succeeds).
    enum class Validation { automatic, force_fallback };

    // Elliptic regime only; (q0, p0) must satisfy the 2i constraint.
    QPAnalytic(const AmplifierParams& params, const QPPoint& initial,
               Validation mode = Validation::automatic);

    QPPoint at(double t) const;
    QPPoint closed_form(double t) const;  // the raw candidate, unvalidated

    bool using_fallback() const { return fallback_; }
    double validation_residual() const { return residual_; }
    const std::optional<OracleMismatch>& mismatch() const { return mismatch_; }

private:
    QPPoint numeric(double t) const;

    AmplifierParams params_;
    QPPoint initial_;
    double omega_char_{0.0};
    bool fallback_{false};
    double residual_{0.0};
    std::optional<OracleMismatch> mismatch_;

    // cache for the adaptive fallback (monotone re-entry is cheap); guarded
    // so concurrent evaluation stays safe on the fallback path too
    mutable std::mutex cache_mutex_;
    mutable double cache_t_{0.0};
    mutable QPPoint cache_qp_;
};

}  // namespace gausspack
