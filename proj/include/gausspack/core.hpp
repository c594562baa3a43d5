#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace gausspack {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kImag{0.0, 1.0};

// Tolerances for chart-constraint checks: points built from exact formulas
// are expected to satisfy their constraint to kConstructTol; externally
// supplied or integrated points are accepted up to kValidateTol.
inline constexpr double kConstructTol = 1e-14;
inline constexpr double kValidateTol = 1e-9;

// ---------------------------------------------------------------------------
// Error taxonomy
// ---------------------------------------------------------------------------

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidPointError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidStateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A chart became unusable (e.g. the hyperbolic chart near its vertex);
// `suggestion` names the chart that covers the point smoothly.
struct ChartSingularityError : std::runtime_error {
    std::string suggestion;
    ChartSingularityError(const std::string& what, std::string suggest)
        : std::runtime_error(what), suggestion(std::move(suggest)) {}
};

struct IntegrationError : std::runtime_error {
    double last_good_time;
    IntegrationError(const std::string& what, double t)
        : std::runtime_error(what), last_good_time(t) {}
};

struct RiccatiBlowUpError : std::runtime_error {
    double blow_up_time;
    RiccatiBlowUpError(const std::string& what, double t)
        : std::runtime_error(what), blow_up_time(t) {}
};

struct GridMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CoverageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ConversionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gausspack
