#include "gausspack/runner.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <thread>

#include "gausspack/plot.hpp"
#include "gausspack/trajectory_io.hpp"

namespace gausspack {

// ---------------------------------------------------------------------------
// Conversions
// ---------------------------------------------------------------------------

bool convertible(Chart from, Chart to) {
    if (from == to) return true;
    switch (from) {
        case Chart::m:
            return to == Chart::h3 || to == Chart::h2 || to == Chart::disk || to == Chart::siegel;
        case Chart::h3: return to == Chart::h2 || to == Chart::disk || to == Chart::siegel;
        case Chart::h2: return to == Chart::disk || to == Chart::siegel;
        case Chart::disk: return to == Chart::siegel;
        case Chart::siegel: return to == Chart::disk;
        default: return false;
    }
}

ChartState convert_point(const ChartState& s, Chart to) {
    if (!convertible(s.chart, to)) {
        throw ConversionError(std::string("unsupported conversion ") + chart_name(s.chart) +
                              " -> " + chart_name(to));
    }
    if (s.chart == to) return s;
    switch (s.chart) {
        case Chart::m: {
            const QPPoint qp = s.to_qp();
            if (to == Chart::h3) return ChartState::from(nu_map(qp));
            if (to == Chart::siegel) return ChartState::from(pi_map(qp));
            const H2Point y = chi_map(nu_map(qp));
            if (to == Chart::h2) return ChartState::from(squeeze_coordinates(y));
            return ChartState::from(disk_projection(y));
        }
        case Chart::h3: {
            const H2Point y = chi_map(s.to_h3());
            if (to == Chart::h2) return ChartState::from(squeeze_coordinates(y));
            if (to == Chart::disk) return ChartState::from(disk_projection(y));
            return ChartState::from(mobius_to_siegel(disk_projection(y)));
        }
        case Chart::h2: {
            const H2Point y = s.to_h2();
            if (to == Chart::disk) return ChartState::from(disk_projection(y));
            return ChartState::from(mobius_to_siegel(disk_projection(y)));
        }
        case Chart::disk: return ChartState::from(mobius_to_siegel(s.to_disk()));
        case Chart::siegel: return ChartState::from(mobius_to_disk(s.to_siegel()));
        default: throw ConversionError("unsupported conversion");
    }
}

Trajectory convert_trajectory(const Trajectory& traj, Chart to,
                              const QuadraticCoefficients& coeffs) {
    Trajectory out;
    out.chart = to;
    out.hbar = traj.hbar;
    out.times = traj.times;
    out.points.reserve(traj.size());
    out.diagnostics.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out.points.push_back(convert_point(traj.points[i], to));
        out.diagnostics.push_back(
            diagnostics_at(coeffs, out.points.back(), traj.times[i], traj.hbar));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

nlohmann::json report_to_json(const RunReport& r) {
    return {{"label", r.label},
            {"files", r.files},
            {"max_constraint_drift", r.max_constraint_drift},
            {"max_rs_residual", r.max_rs_residual},
            {"energy_drift", r.energy_drift},
            {"wall_seconds", r.wall_seconds}};
}

RunReport run_one(const RunConfig& cfg, const std::string& out_dir) {
    const auto t_start = std::chrono::steady_clock::now();
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    for (Chart target : cfg.outputs.charts) {
        if (!convertible(cfg.initial.chart, target)) {
            throw ConfigError(std::string("[output] chart ") + chart_name(target) +
                              " is not reachable from " + chart_name(cfg.initial.chart));
        }
    }

    const Trajectory source = integrate(cfg.hamiltonian, cfg.initial, cfg.integrator);

    RunReport report;
    report.label = cfg.label;
    report.max_constraint_drift = source.max_constraint_drift();
    report.max_rs_residual = source.max_rs_residual();
    report.energy_drift = source.energy_drift();

    for (Chart target : cfg.outputs.charts) {
        const Trajectory traj =
            target == source.chart ? source : convert_trajectory(source, target, cfg.hamiltonian);
        const std::string stem =
            (fs::path(out_dir) / (cfg.label + "-" + cfg.outputs.basename + "-" +
                                  chart_name(target)))
                .string();
        for (const std::string& fmt : cfg.outputs.formats) {
            const std::string path = stem + "." + fmt;
            if (fmt == "csv") {
                write_trajectory_csv(path, traj, cfg.hamiltonian);
            } else {
                write_trajectory_json(path, traj, cfg.hamiltonian);
            }
            report.files.push_back(path);
        }
        if (cfg.outputs.plot) {
            const std::string path = stem + ".svg";
            write_svg(path, traj, cfg.hamiltonian, default_plot_style(target));
            report.files.push_back(path);
        }
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

namespace {

int thread_cap(int requested) {
    int cap = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (cap <= 0) cap = 1;
    if (const char* env = std::getenv("GAUSSPACK_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) cap = std::min(cap, n);
    }
    return cap;
}

}  // namespace

std::vector<RunReport> run_all(const std::vector<RunConfig>& cfgs, const std::string& out_dir,
                               int max_threads) {
    const int cap = thread_cap(max_threads);
    std::vector<RunReport> reports(cfgs.size());
    std::size_t next = 0;
    while (next < cfgs.size()) {
        const std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(cap),
                                                        cfgs.size() - next);
        std::vector<std::future<RunReport>> futs;
        futs.reserve(batch);
        for (std::size_t i = 0; i < batch; ++i) {
            const RunConfig& cfg = cfgs[next + i];
            futs.push_back(std::async(std::launch::async,
                                      [&cfg, &out_dir] { return run_one(cfg, out_dir); }));
        }
        for (std::size_t i = 0; i < batch; ++i) reports[next + i] = futs[i].get();
        next += batch;
    }
    return reports;
}

// ---------------------------------------------------------------------------
// File-level subcommand helpers
// ---------------------------------------------------------------------------

void convert_file(const std::string& in_path, Chart target, const std::string& out_path,
                  const std::string& format) {
    const TrajectoryFile in = read_trajectory(in_path);
    const Trajectory out = convert_trajectory(in.traj, target, in.coeffs);
    if (format == "json") {
        write_trajectory_json(out_path, out, in.coeffs);
    } else {
        write_trajectory_csv(out_path, out, in.coeffs);
    }
}

CheckReport check_file(const std::string& in_path, double tol) {
    const TrajectoryFile in = read_trajectory(in_path);
    CheckReport rep;
    rep.samples = in.traj.size();
    double e0 = 0.0;
    for (std::size_t i = 0; i < in.traj.size(); ++i) {
        const SampleDiagnostics d =
            diagnostics_at(in.coeffs, in.traj.points[i], in.traj.times[i], in.traj.hbar);
        rep.max_constraint_residual = std::max(rep.max_constraint_residual, d.constraint_drift);
        rep.max_rs_residual = std::max(rep.max_rs_residual, std::abs(d.rs_residual));
        if (i == 0) e0 = d.energy;
        rep.energy_drift = std::max(rep.energy_drift, std::abs(d.energy - e0));
    }
    rep.ok = rep.max_constraint_residual <= tol;
    return rep;
}

nlohmann::json check_to_json(const CheckReport& r) {
    return {{"ok", r.ok},
            {"samples", r.samples},
            {"max_constraint_residual", r.max_constraint_residual},
            {"max_rs_residual", r.max_rs_residual},
            {"energy_drift", r.energy_drift}};
}

void plot_file(const std::string& in_path, const std::string& style_name,
               const std::string& out_path) {
    const TrajectoryFile in = read_trajectory(in_path);
    const PlotStyle style = style_name.empty() ? default_plot_style(in.traj.chart)
                                               : plot_style_from_name(style_name);
    write_svg(out_path, in.traj, in.coeffs, style);
}

}  // namespace gausspack
