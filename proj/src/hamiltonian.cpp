#include "gausspack/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "gausspack/geometry.hpp"

namespace gausspack {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::elliptic: return "elliptic";
        case Regime::parabolic: return "parabolic";
        case Regime::hyperbolic: return "hyperbolic";
    }
    return "?";
}

Regime AmplifierParams::regime(double tol) const {
    const double x = xi_abs();
    if (std::abs(x - omega) <= tol) return Regime::parabolic;
    return x < omega ? Regime::elliptic : Regime::hyperbolic;
}

double AmplifierParams::big_omega() const {
    return std::sqrt(omega * omega - xi_abs() * xi_abs());
}

double AmplifierParams::big_omega_tilde() const {
    return std::sqrt(xi_abs() * xi_abs() - omega * omega);
}

void AmplifierParams::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega) || !std::isfinite(kappa) ||
        !std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
        throw std::invalid_argument("AmplifierParams: omega must be > 0 and all parameters finite");
    }
}

CoeffTriple amplifier_coefficients(const AmplifierParams& params, double t) {
    params.validate();
    const double br = params.beta.real(), bi = params.beta.imag();
    const double c = std::cos(params.omega * t), s = std::sin(params.omega * t);
    const double drive = br * c + bi * s;
    return {params.omega * params.omega + 2.0 * params.kappa * params.omega * drive,
            1.0 - 2.0 * params.kappa / params.omega * drive,
            2.0 * params.kappa * (bi * c - br * s)};
}

QuadraticCoefficients::QuadraticCoefficients(Model m) : model_(std::move(m)) {
    if (const auto* amp = std::get_if<AmplifierParams>(&model_)) amp->validate();
    if (const auto* tab = std::get_if<TabulatedModel>(&model_)) {
        if (tab->times.size() != tab->values.size() || tab->times.empty()) {
            throw std::invalid_argument("tabulated model: times/values size mismatch or empty");
        }
        for (std::size_t i = 1; i < tab->times.size(); ++i) {
            if (!(tab->times[i] > tab->times[i - 1])) {
                throw std::invalid_argument("tabulated model: times must be strictly increasing");
            }
        }
    }
}

QuadraticCoefficients QuadraticCoefficients::constant(double h1, double h2, double v) {
    return QuadraticCoefficients(ConstantModel{h1, h2, v});
}

QuadraticCoefficients QuadraticCoefficients::harmonic(double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("harmonic model: omega must be > 0");
    return QuadraticCoefficients(HarmonicModel{omega});
}

QuadraticCoefficients QuadraticCoefficients::free_particle() {
    return QuadraticCoefficients(ConstantModel{0.0, 1.0, 0.0});
}

QuadraticCoefficients QuadraticCoefficients::amplifier(const AmplifierParams& params) {
    return QuadraticCoefficients(Model{params});
}

QuadraticCoefficients QuadraticCoefficients::tabulated(std::vector<double> times,
                                                       std::vector<CoeffTriple> values) {
    return QuadraticCoefficients(TabulatedModel{std::move(times), std::move(values)});
}

namespace {

CoeffTriple interpolate(const TabulatedModel& tab, double t) {
    const auto& ts = tab.times;
    if (t <= ts.front()) return tab.values.front();
    if (t >= ts.back()) return tab.values.back();
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - ts.begin());
    const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
    const CoeffTriple& a = tab.values[i - 1];
    const CoeffTriple& b = tab.values[i];
    return {a.h1 + w * (b.h1 - a.h1), a.h2 + w * (b.h2 - a.h2), a.v + w * (b.v - a.v)};
}

}  // namespace

CoeffTriple QuadraticCoefficients::at(double t) const {
    if (!std::isfinite(t)) throw ModelError("coefficient evaluation at non-finite time");
    CoeffTriple k = std::visit(
        [t](const auto& m) -> CoeffTriple {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConstantModel>) {
                return {m.h1, m.h2, m.v};
            } else if constexpr (std::is_same_v<T, HarmonicModel>) {
                return {m.omega * m.omega, 1.0, 0.0};
            } else if constexpr (std::is_same_v<T, AmplifierParams>) {
                return amplifier_coefficients(m, t);
            } else {
                return interpolate(m, t);
            }
        },
        model_);
    if (!std::isfinite(k.h1) || !std::isfinite(k.h2) || !std::isfinite(k.v)) {
        throw ModelError("coefficient model produced a non-finite value");
    }
    return k;
}

bool QuadraticCoefficients::autonomous() const {
    return std::visit(
        [](const auto& m) -> bool {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConstantModel> || std::is_same_v<T, HarmonicModel>) {
                return true;
            } else if constexpr (std::is_same_v<T, AmplifierParams>) {
                return m.kappa == 0.0 || m.beta == cplx{0.0, 0.0};
            } else {
                return m.values.size() == 1;
            }
        },
        model_);
}

const AmplifierParams* QuadraticCoefficients::amplifier_params() const {
    return std::get_if<AmplifierParams>(&model_);
}

std::pair<cplx, double> gw_transform(const CoeffTriple& k, const QPPoint& qp) {
    if (!qp.valid(kMapTol)) {
        throw InvalidPointError("gw_transform: (Q,P) violates the 2i constraint");
    }
    const cplx g = k.h1 * qp.q * qp.q + 2.0 * k.v * qp.q * qp.p + k.h2 * qp.p * qp.p;
    // W is real by construction: |.|^2 terms plus 2 Re(Q conj(P)).
    const double w = k.h1 * std::norm(qp.q) + 2.0 * k.v * (qp.q * std::conj(qp.p)).real() +
                     k.h2 * std::norm(qp.p);
    return {g, w};
}

}  // namespace gausspack
