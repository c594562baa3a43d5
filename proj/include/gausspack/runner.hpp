#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gausspack/config.hpp"
#include "gausspack/dynamics.hpp"

namespace gausspack {

// ---------------------------------------------------------------------------
// Chart conversions of whole trajectories.  Supported directions: downstream
// along M -> H3 -> H2 -> D2 -> HP2, the direct M -> HP2 projection, and the
// Moebius bijection HP2 -> D2.  Anything else (including H2 -> M, which is
// not injective) is rejected.
// ---------------------------------------------------------------------------

bool convertible(Chart from, Chart to);
ChartState convert_point(const ChartState& s, Chart to);  // throws ConversionError
Trajectory convert_trajectory(const Trajectory& traj, Chart to,
                              const QuadraticCoefficients& coeffs);

// ---------------------------------------------------------------------------
// Run orchestration
// ---------------------------------------------------------------------------

struct RunReport {
    std::string label;
    std::vector<std::string> files;
    double max_constraint_drift{0.0};
    double max_rs_residual{0.0};
    double energy_drift{0.0};
    double wall_seconds{0.0};
};

nlohmann::json report_to_json(const RunReport& r);

RunReport run_one(const RunConfig& cfg, const std::string& out_dir);

// Runs in parallel, capped by max_threads (<=0: hardware concurrency, also
// capped by the GAUSSPACK_THREADS environment variable).
std::vector<RunReport> run_all(const std::vector<RunConfig>& cfgs, const std::string& out_dir,
                               int max_threads = 0);

// ---------------------------------------------------------------------------
// File-level operations for the CLI subcommands
// ---------------------------------------------------------------------------

void convert_file(const std::string& in_path, Chart target, const std::string& out_path,
                  const std::string& format);

struct CheckReport {
    bool ok{false};
    std::size_t samples{0};
    double max_constraint_residual{0.0};
    double max_rs_residual{0.0};
    double energy_drift{0.0};
};

CheckReport check_file(const std::string& in_path, double tol);
nlohmann::json check_to_json(const CheckReport& r);

void plot_file(const std::string& in_path, const std::string& style_name,
               const std::string& out_path);

}  // namespace gausspack
