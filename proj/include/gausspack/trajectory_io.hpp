#pragma once

#include <string>

#include <json.hpp>

#include "gausspack/dynamics.hpp"
#include "gausspack/wavepacket.hpp"

namespace gausspack {

// Round-trip-safe decimal formatting (17 significant digits).
std::string format_g17(double x);

// ---------------------------------------------------------------------------
// JSON encodings
// ---------------------------------------------------------------------------

nlohmann::json model_to_json(const QuadraticCoefficients& coeffs);
QuadraticCoefficients model_from_json(const nlohmann::json& j);

// Flat chart-point records, e.g. {"chart":"siegel","re":0.5,"im":0.5}.
nlohmann::json chart_point_to_json(const ChartState& s);
ChartState chart_point_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Trajectory files
//
// CSV layout: two comment lines (schema version + embedded hamiltonian
// model), one column-name row, then data rows at 17 significant digits.
// The JSON layout carries the same fields.
// ---------------------------------------------------------------------------

inline constexpr const char* kTrajectorySchema = "gausspack-trajectory/1";

struct TrajectoryFile {
    Trajectory traj;
    QuadraticCoefficients coeffs;
};

std::vector<std::string> chart_columns(Chart c);  // value columns after t

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const QuadraticCoefficients& coeffs);
void write_trajectory_json(const std::string& path, const Trajectory& traj,
                           const QuadraticCoefficients& coeffs);

// Format detected from the file content (CSV comment line vs JSON object).
TrajectoryFile read_trajectory(const std::string& path);

// ---------------------------------------------------------------------------
// Sampled packet files: columns q, re_psi, im_psi, abs2
// ---------------------------------------------------------------------------

void write_packet_csv(const std::string& path, const GaussianState& state, const Grid1D& grid);
void write_packet_json(const std::string& path, const GaussianState& state, const Grid1D& grid);

}  // namespace gausspack
