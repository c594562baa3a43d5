#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "gausspack/core.hpp"

namespace gausspack {

struct QPPoint;  // geometry.hpp

// Coefficient triple of the quadratic Hamiltonian
//   H = 1/2 (H1 q^2 + V (qp + pq) + H2 p^2)
// evaluated at one instant.
struct CoeffTriple {
    double h1{0.0};
    double h2{1.0};
    double v{0.0};
};

// ---------------------------------------------------------------------------
// Degenerate parametric amplifier parameters
// ---------------------------------------------------------------------------

enum class Regime { elliptic, parabolic, hyperbolic };

const char* regime_name(Regime r);

// Signal frequency omega, crystal coupling kappa, classical pump amplitude
// beta = rho e^{i theta}.  The derived coupling is xi = 4 kappa beta; the
// regime is set by |xi| against omega.
struct AmplifierParams {
    double omega{1.0};
    double kappa{0.0};
    cplx beta{0.0, 0.0};

    cplx xi() const { return 4.0 * kappa * beta; }
    double xi_abs() const { return std::abs(xi()); }
    double rho() const { return std::abs(beta); }
    double theta() const { return std::arg(beta); }

    Regime regime(double tol = 1e-12) const;
    // Omega = sqrt(omega^2 - |xi|^2); only meaningful in the elliptic regime.
    double big_omega() const;
    // Omega~ = sqrt(|xi|^2 - omega^2); hyperbolic regime.
    double big_omega_tilde() const;

    void validate() const;  // throws std::invalid_argument unless omega > 0
};

// Coefficient triple of the effective single-mode amplifier model at time t,
// read off the linear (Q,P) system:
//   h1 = omega^2 + 2 kappa omega (bR cos wt + bI sin wt)
//   h2 = 1 - (2 kappa/omega) (bR cos wt + bI sin wt)
//   v  = 2 kappa (bI cos wt - bR sin wt)
// The additive constant of the effective Hamiltonian is not tracked; it
// shifts only the global phase of the wave function.
CoeffTriple amplifier_coefficients(const AmplifierParams& params, double t);

// ---------------------------------------------------------------------------
// Time-dependent coefficient models
// ---------------------------------------------------------------------------

struct ConstantModel {
    double h1{0.0}, h2{1.0}, v{0.0};
};

struct HarmonicModel {
    double omega{1.0};  // (h1, h2, v) = (omega^2, 1, 0)
};

// Sampled coefficients with linear interpolation; constant extrapolation
// outside the sampled range.
struct TabulatedModel {
    std::vector<double> times;       // strictly increasing
    std::vector<CoeffTriple> values;
};

class QuadraticCoefficients {
public:
    using Model = std::variant<ConstantModel, HarmonicModel, AmplifierParams, TabulatedModel>;

    QuadraticCoefficients() : model_(HarmonicModel{1.0}) {}
    explicit QuadraticCoefficients(Model m);

    static QuadraticCoefficients constant(double h1, double h2, double v);
    static QuadraticCoefficients harmonic(double omega);
    static QuadraticCoefficients free_particle();  // (0, 1, 0)
    static QuadraticCoefficients amplifier(const AmplifierParams& params);
    static QuadraticCoefficients tabulated(std::vector<double> times,
                                           std::vector<CoeffTriple> values);

    // Evaluate the triple at time t; throws ModelError on non-finite output.
    CoeffTriple at(double t) const;

    bool autonomous() const;
    const Model& model() const { return model_; }
    const AmplifierParams* amplifier_params() const;

private:
    Model model_;
};

// The bosonic-basis coefficients (G, W) of the Hamiltonian for a given (Q,P):
//   G = H1 Q^2 + 2 V Q P + H2 P^2
//   W = H1 |Q|^2 + V (Q conj(P) + P conj(Q)) + H2 |P|^2   (real)
std::pair<cplx, double> gw_transform(const CoeffTriple& k, const QPPoint& qp);

}  // namespace gausspack
