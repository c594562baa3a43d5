#pragma once

#include <string>

#include "gausspack/dynamics.hpp"
#include "gausspack/hamiltonian.hpp"

namespace gausspack {

// SVG polyline renderings of trajectories:
//   alpha     — complex plane of alpha(t) from a moments trajectory (needs a
//               model with a signal frequency for the quadrature scaling)
//   plane     — raw (<q>, <p>) plane
//   disk      — Poincare disk with the unit-circle boundary drawn
//   halfplane — Siegel upper half plane with the real axis drawn
//   h2        — (y2, y3) projection with a y1 color ramp
enum class PlotStyle { alpha, plane, disk, halfplane, h2 };

PlotStyle plot_style_from_name(std::string_view name);  // throws ConfigError
PlotStyle default_plot_style(Chart chart);              // throws ConfigError for m/h3

// Deterministic output: no timestamps or environment-dependent content.
std::string render_svg(const Trajectory& traj, const QuadraticCoefficients& coeffs,
                       PlotStyle style);

void write_svg(const std::string& path, const Trajectory& traj,
               const QuadraticCoefficients& coeffs, PlotStyle style);

}  // namespace gausspack
