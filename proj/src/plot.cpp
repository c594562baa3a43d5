#include "gausspack/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gausspack {

PlotStyle plot_style_from_name(std::string_view name) {
    if (name == "alpha") return PlotStyle::alpha;
    if (name == "plane") return PlotStyle::plane;
    if (name == "disk") return PlotStyle::disk;
    if (name == "halfplane") return PlotStyle::halfplane;
    if (name == "h2") return PlotStyle::h2;
    throw ConfigError("unknown plot style: " + std::string(name));
}

PlotStyle default_plot_style(Chart chart) {
    switch (chart) {
        case Chart::moments: return PlotStyle::alpha;
        case Chart::h2: return PlotStyle::h2;
        case Chart::disk: return PlotStyle::disk;
        case Chart::siegel: return PlotStyle::halfplane;
        default:
            throw ConfigError(std::string("no plot style for chart ") + chart_name(chart) +
                              "; convert the trajectory first");
    }
}

namespace {

constexpr int kSize = 640;
constexpr int kMaxPlotted = 4000;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

struct Mapper {
    double xmin, xmax, ymin, ymax;
    double sx(double x) const { return (x - xmin) / (xmax - xmin) * kSize; }
    double sy(double y) const { return kSize - (y - ymin) / (ymax - ymin) * kSize; }
};

Mapper fit(const std::vector<std::pair<double, double>>& pts, double pad_frac,
           bool include_unit_circle) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto [x, y] : pts) {
        xmin = std::min(xmin, x); xmax = std::max(xmax, x);
        ymin = std::min(ymin, y); ymax = std::max(ymax, y);
    }
    if (include_unit_circle) {
        xmin = std::min(xmin, -1.0); xmax = std::max(xmax, 1.0);
        ymin = std::min(ymin, -1.0); ymax = std::max(ymax, 1.0);
    }
    double w = xmax - xmin, h = ymax - ymin;
    if (w <= 0) w = 1.0;
    if (h <= 0) h = 1.0;
    const double span = std::max(w, h) * (1.0 + 2.0 * pad_frac);
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    return {cx - span / 2, cx + span / 2, cy - span / 2, cy + span / 2};
}

double quadrature_omega(const QuadraticCoefficients& coeffs) {
    if (const auto* amp = coeffs.amplifier_params()) return amp->omega;
    if (const auto* h = std::get_if<HarmonicModel>(&coeffs.model())) return h->omega;
    throw ConfigError("alpha plot style needs a harmonic or amplifier model "
                      "(no signal frequency available); use style 'plane'");
}

// simple blue->red ramp
std::string ramp_color(double f) {
    const int r = static_cast<int>(std::lround(40 + 215 * f));
    const int b = static_cast<int>(std::lround(255 - 215 * f));
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x50%02x", r, b);
    return buf;
}

}  // namespace

std::string render_svg(const Trajectory& traj, const QuadraticCoefficients& coeffs,
                       PlotStyle style) {
    if (traj.points.empty()) throw std::invalid_argument("render_svg: empty trajectory");

    // project the samples to plot coordinates, plus color key for the h2 ramp
    std::vector<std::pair<double, double>> pts;
    std::vector<double> key;
    const std::size_t stride = std::max<std::size_t>(1, traj.size() / kMaxPlotted);
    for (std::size_t i = 0; i < traj.size(); i += stride) {
        const ChartState& s = traj.points[i];
        switch (style) {
            case PlotStyle::alpha: {
                if (s.chart != Chart::moments) {
                    throw ConfigError("alpha plot style needs a moments trajectory");
                }
                const double w = quadrature_omega(coeffs);
                const FirstMoments m = s.to_moments();
                const double scale = 1.0 / std::sqrt(2.0 * traj.hbar);
                pts.emplace_back(scale * std::sqrt(w) * m.mq, scale * m.mp / std::sqrt(w));
                break;
            }
            case PlotStyle::plane: {
                if (s.chart != Chart::moments) {
                    throw ConfigError("plane plot style needs a moments trajectory");
                }
                pts.emplace_back(s.u[0], s.u[1]);
                break;
            }
            case PlotStyle::disk: {
                if (s.chart != Chart::disk) throw ConfigError("disk plot needs a disk trajectory");
                pts.emplace_back(s.u[0], s.u[1]);
                break;
            }
            case PlotStyle::halfplane: {
                if (s.chart != Chart::siegel) {
                    throw ConfigError("halfplane plot needs a siegel trajectory");
                }
                pts.emplace_back(s.u[0], s.u[1]);
                break;
            }
            case PlotStyle::h2: {
                if (s.chart != Chart::h2) throw ConfigError("h2 plot needs an h2 trajectory");
                const H2Point y = s.to_h2();
                pts.emplace_back(y.y2, y.y3);
                key.push_back(y.y1);
                break;
            }
        }
    }

    const Mapper map = fit(pts, 0.08, style == PlotStyle::disk);
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\""
        << kSize << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // frame elements
    if (style == PlotStyle::disk) {
        svg << "<circle cx=\"" << num(map.sx(0)) << "\" cy=\"" << num(map.sy(0)) << "\" r=\""
            << num(map.sx(1) - map.sx(0)) << "\" fill=\"none\" stroke=\"black\"/>\n";
    }
    if (style == PlotStyle::halfplane && map.ymin < 0 && map.ymax > 0) {
        svg << "<line x1=\"0\" y1=\"" << num(map.sy(0)) << "\" x2=\"" << kSize << "\" y2=\""
            << num(map.sy(0)) << "\" stroke=\"black\"/>\n";
    }
    if (style == PlotStyle::alpha || style == PlotStyle::plane || style == PlotStyle::h2) {
        if (map.xmin < 0 && map.xmax > 0) {
            svg << "<line x1=\"" << num(map.sx(0)) << "\" y1=\"0\" x2=\"" << num(map.sx(0))
                << "\" y2=\"" << kSize << "\" stroke=\"#cccccc\"/>\n";
        }
        if (map.ymin < 0 && map.ymax > 0) {
            svg << "<line x1=\"0\" y1=\"" << num(map.sy(0)) << "\" x2=\"" << kSize << "\" y2=\""
                << num(map.sy(0)) << "\" stroke=\"#cccccc\"/>\n";
        }
    }

    if (pts.size() == 1) {
        svg << "<circle cx=\"" << num(map.sx(pts[0].first)) << "\" cy=\""
            << num(map.sy(pts[0].second)) << "\" r=\"3\" fill=\"#1040c0\"/>\n";
    } else if (style == PlotStyle::h2) {
        const auto [kmin_it, kmax_it] = std::minmax_element(key.begin(), key.end());
        const double kmin = *kmin_it, kspan = std::max(*kmax_it - *kmin_it, 1e-300);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double f = (0.5 * (key[i] + key[i + 1]) - kmin) / kspan;
            svg << "<line x1=\"" << num(map.sx(pts[i].first)) << "\" y1=\""
                << num(map.sy(pts[i].second)) << "\" x2=\"" << num(map.sx(pts[i + 1].first))
                << "\" y2=\"" << num(map.sy(pts[i + 1].second)) << "\" stroke=\""
                << ramp_color(f) << "\" stroke-width=\"1.5\"/>\n";
        }
    } else {
        svg << "<polyline fill=\"none\" stroke=\"#1040c0\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : pts) svg << num(map.sx(x)) << "," << num(map.sy(y)) << " ";
        svg << "\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_svg(const std::string& path, const Trajectory& traj,
               const QuadraticCoefficients& coeffs, PlotStyle style) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << render_svg(traj, coeffs, style);
}

}  // namespace gausspack
