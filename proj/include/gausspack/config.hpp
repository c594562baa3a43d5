#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gausspack/dynamics.hpp"
#include "gausspack/hamiltonian.hpp"

namespace gausspack {

// ---------------------------------------------------------------------------
// Run configuration.  A config file holds either one run (sections
// hamiltonian / initial / integrator / output) or a sweep of [[run]] tables
// with the same sections nested.  TOML (the subset documented in the README)
// and JSON are both accepted.
// ---------------------------------------------------------------------------

struct OutputSpec {
    std::vector<Chart> charts;         // conversion targets; empty = source chart
    std::vector<std::string> formats;  // "csv" and/or "json"; default csv
    bool plot{false};
    std::string basename{"traj"};
};

struct RunConfig {
    QuadraticCoefficients hamiltonian;
    ChartState initial{};
    IntegratorConfig integrator{};
    OutputSpec outputs{};
    std::string label{"run"};
};

// Parse TOML-subset text into a JSON document (sections become objects,
// [[name]] become arrays of objects).  Errors carry line numbers.
nlohmann::json toml_to_json(const std::string& text);

// Parse config text; `filename` is used both for diagnostics and to choose
// the format (.json vs .toml); content sniffing decides when ambiguous.
std::vector<RunConfig> parse_configs(const std::string& text, const std::string& filename);
std::vector<RunConfig> load_configs(const std::string& path);

// Resolve the initial-state section: either a chart point (chart tag plus
// coordinates) or a covariance triple with first moments (lifted to the
// requested chart through the canonical arg Q = 0 representative).
ChartState initial_state_from_json(const nlohmann::json& section, double hbar);

}  // namespace gausspack
