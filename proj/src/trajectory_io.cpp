#include "gausspack/trajectory_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gausspack {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// Model JSON
// ---------------------------------------------------------------------------

nlohmann::json model_to_json(const QuadraticCoefficients& coeffs) {
    using nlohmann::json;
    return std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConstantModel>) {
                return {{"kind", "constant"},
                        {"params", {{"h1", m.h1}, {"h2", m.h2}, {"v", m.v}}}};
            } else if constexpr (std::is_same_v<T, HarmonicModel>) {
                return {{"kind", "harmonic"}, {"params", {{"omega", m.omega}}}};
            } else if constexpr (std::is_same_v<T, AmplifierParams>) {
                return {{"kind", "amplifier"},
                        {"params",
                         {{"omega", m.omega},
                          {"kappa", m.kappa},
                          {"beta_re", m.beta.real()},
                          {"beta_im", m.beta.imag()}}}};
            } else {
                json times = json::array(), h1 = json::array(), h2 = json::array(),
                     v = json::array();
                for (std::size_t i = 0; i < m.times.size(); ++i) {
                    times.push_back(m.times[i]);
                    h1.push_back(m.values[i].h1);
                    h2.push_back(m.values[i].h2);
                    v.push_back(m.values[i].v);
                }
                return {{"kind", "tabulated"},
                        {"params", {{"t", times}, {"h1", h1}, {"h2", h2}, {"v", v}}}};
            }
        },
        coeffs.model());
}

QuadraticCoefficients model_from_json(const nlohmann::json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        // parameters may sit in a nested "params" object (JSON layout) or
        // directly beside "kind" (flat TOML sections)
        const nlohmann::json& p = j.contains("params") ? j.at("params") : j;
        if (kind == "constant") {
            return QuadraticCoefficients::constant(p.at("h1").get<double>(),
                                                   p.at("h2").get<double>(),
                                                   p.value("v", 0.0));
        }
        if (kind == "harmonic") {
            return QuadraticCoefficients::harmonic(p.at("omega").get<double>());
        }
        if (kind == "free") {
            return QuadraticCoefficients::free_particle();
        }
        if (kind == "amplifier") {
            AmplifierParams a;
            a.omega = p.at("omega").get<double>();
            a.kappa = p.at("kappa").get<double>();
            a.beta = cplx{p.value("beta_re", 0.0), p.value("beta_im", 0.0)};
            return QuadraticCoefficients::amplifier(a);
        }
        if (kind == "tabulated") {
            const auto t = p.at("t").get<std::vector<double>>();
            const auto h1 = p.at("h1").get<std::vector<double>>();
            const auto h2 = p.at("h2").get<std::vector<double>>();
            const auto v = p.at("v").get<std::vector<double>>();
            if (h1.size() != t.size() || h2.size() != t.size() || v.size() != t.size()) {
                throw ConfigError("tabulated model: column lengths differ");
            }
            std::vector<CoeffTriple> vals(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) vals[i] = {h1[i], h2[i], v[i]};
            return QuadraticCoefficients::tabulated(t, std::move(vals));
        }
        throw ConfigError("unknown hamiltonian kind: " + kind);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("hamiltonian section: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("hamiltonian section: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Chart point JSON
// ---------------------------------------------------------------------------

nlohmann::json chart_point_to_json(const ChartState& s) {
    using nlohmann::json;
    switch (s.chart) {
        case Chart::moments: return {{"chart", "moments"}, {"qmean", s.u[0]}, {"pmean", s.u[1]}};
        case Chart::m:
            return {{"chart", "m"},
                    {"q_re", s.u[0]},
                    {"q_im", s.u[1]},
                    {"p_re", s.u[2]},
                    {"p_im", s.u[3]}};
        case Chart::h3:
            return {{"chart", "h3"}, {"x0", s.u[0]}, {"x1", s.u[1]}, {"x2", s.u[2]}, {"x3", s.u[3]}};
        case Chart::h2: return {{"chart", "h2"}, {"tau", s.u[0]}, {"phi", s.u[1]}};
        case Chart::disk: return {{"chart", "disk"}, {"re", s.u[0]}, {"im", s.u[1]}};
        case Chart::siegel: return {{"chart", "siegel"}, {"re", s.u[0]}, {"im", s.u[1]}};
    }
    return json::object();
}

ChartState chart_point_from_json(const nlohmann::json& j) {
    try {
        const Chart c = chart_from_name(j.at("chart").get<std::string>());
        switch (c) {
            case Chart::moments:
                return {c, {j.at("qmean").get<double>(), j.at("pmean").get<double>(), 0, 0}};
            case Chart::m:
                return {c,
                        {j.at("q_re").get<double>(), j.at("q_im").get<double>(),
                         j.at("p_re").get<double>(), j.at("p_im").get<double>()}};
            case Chart::h3:
                return {c,
                        {j.at("x0").get<double>(), j.at("x1").get<double>(),
                         j.at("x2").get<double>(), j.at("x3").get<double>()}};
            case Chart::h2:
                return {c, {j.at("tau").get<double>(), j.at("phi").get<double>(), 0, 0}};
            case Chart::disk:
            case Chart::siegel:
                return {c, {j.at("re").get<double>(), j.at("im").get<double>(), 0, 0}};
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("chart point: ") + e.what());
    }
    throw ConfigError("chart point: unreachable");
}

// ---------------------------------------------------------------------------
// Trajectory files
// ---------------------------------------------------------------------------

std::vector<std::string> chart_columns(Chart c) {
    switch (c) {
        case Chart::moments: return {"qmean", "pmean"};
        case Chart::m: return {"q_re", "q_im", "p_re", "p_im"};
        case Chart::h3: return {"x0", "x1", "x2", "x3"};
        case Chart::h2: return {"tau", "phi", "y1", "y2", "y3"};
        case Chart::disk: return {"zeta_re", "zeta_im"};
        case Chart::siegel: return {"c_re", "c_im"};
    }
    return {};
}

namespace {

std::vector<double> row_values(const ChartState& s) {
    if (s.chart == Chart::h2) {
        const H2Point y = s.to_h2();
        return {s.u[0], s.u[1], y.y1, y.y2, y.y3};
    }
    std::vector<double> v;
    for (int i = 0; i < chart_dim(s.chart); ++i) v.push_back(s.u[static_cast<std::size_t>(i)]);
    return v;
}

void check_sizes(const Trajectory& traj) {
    if (traj.points.size() != traj.times.size() ||
        traj.diagnostics.size() != traj.times.size()) {
        throw std::invalid_argument("trajectory: times/points/diagnostics sizes differ");
    }
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const QuadraticCoefficients& coeffs) {
    check_sizes(traj);
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << "# " << kTrajectorySchema << " chart=" << chart_name(traj.chart)
      << " hbar=" << format_g17(traj.hbar) << "\n";
    f << "# hamiltonian=" << model_to_json(coeffs).dump() << "\n";
    f << "t";
    for (const auto& c : chart_columns(traj.chart)) f << "," << c;
    f << ",constraint_drift,energy,rs_residual\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        f << format_g17(traj.times[i]);
        for (double v : row_values(traj.points[i])) f << "," << format_g17(v);
        const auto& d = traj.diagnostics[i];
        f << "," << format_g17(d.constraint_drift) << "," << format_g17(d.energy) << ","
          << format_g17(d.rs_residual) << "\n";
    }
}

void write_trajectory_json(const std::string& path, const Trajectory& traj,
                           const QuadraticCoefficients& coeffs) {
    check_sizes(traj);
    using nlohmann::json;
    json j;
    j["schema"] = kTrajectorySchema;
    j["chart"] = chart_name(traj.chart);
    j["hbar"] = traj.hbar;
    j["hamiltonian"] = model_to_json(coeffs);
    j["columns"] = chart_columns(traj.chart);
    j["times"] = traj.times;
    json pts = json::array(), diag = json::array();
    for (std::size_t i = 0; i < traj.size(); ++i) {
        pts.push_back(row_values(traj.points[i]));
        const auto& d = traj.diagnostics[i];
        diag.push_back({d.constraint_drift, d.energy, d.rs_residual});
    }
    j["points"] = std::move(pts);
    j["diagnostics"] = std::move(diag);
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << j.dump(1) << "\n";
}

namespace {

ChartState state_from_values(Chart chart, const std::vector<double>& v) {
    ChartState s{chart, {}};
    const int dim = chart_dim(chart);
    if (static_cast<int>(v.size()) < dim) {
        throw ConfigError("trajectory row has too few columns");
    }
    for (int i = 0; i < dim; ++i) s.u[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    return s;
}

TrajectoryFile read_trajectory_csv_text(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
        throw ConfigError("trajectory csv: missing schema comment line");
    }
    std::istringstream hdr(line.substr(2));
    std::string schema, tok;
    hdr >> schema;
    if (schema != kTrajectorySchema) throw ConfigError("trajectory csv: unknown schema " + schema);
    TrajectoryFile out;
    out.traj.hbar = 1.0;
    std::optional<Chart> chart;
    while (hdr >> tok) {
        if (tok.rfind("chart=", 0) == 0) chart = chart_from_name(tok.substr(6));
        if (tok.rfind("hbar=", 0) == 0) out.traj.hbar = std::stod(tok.substr(5));
    }
    if (!chart) throw ConfigError("trajectory csv: schema line lacks chart=");
    out.traj.chart = *chart;

    if (!std::getline(in, line) || line.rfind("# hamiltonian=", 0) != 0) {
        throw ConfigError("trajectory csv: missing hamiltonian comment line");
    }
    out.coeffs = model_from_json(nlohmann::json::parse(line.substr(14)));

    if (!std::getline(in, line)) throw ConfigError("trajectory csv: missing column header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> vals;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() < 4) throw ConfigError("trajectory csv: short row");
        out.traj.times.push_back(vals[0]);
        out.traj.points.push_back(
            state_from_values(*chart, {vals.begin() + 1, vals.end() - 3}));
        const std::size_t n = vals.size();
        out.traj.diagnostics.push_back({vals[n - 3], vals[n - 2], vals[n - 1]});
    }
    return out;
}

TrajectoryFile read_trajectory_json_text(const std::string& text) {
    using nlohmann::json;
    const json j = json::parse(text);
    if (j.value("schema", "") != kTrajectorySchema) {
        throw ConfigError("trajectory json: unknown schema");
    }
    TrajectoryFile out;
    out.traj.chart = chart_from_name(j.at("chart").get<std::string>());
    out.traj.hbar = j.value("hbar", 1.0);
    out.coeffs = model_from_json(j.at("hamiltonian"));
    out.traj.times = j.at("times").get<std::vector<double>>();
    for (const auto& row : j.at("points")) {
        out.traj.points.push_back(state_from_values(out.traj.chart, row.get<std::vector<double>>()));
    }
    for (const auto& row : j.at("diagnostics")) {
        const auto v = row.get<std::vector<double>>();
        if (v.size() != 3) throw ConfigError("trajectory json: bad diagnostics row");
        out.traj.diagnostics.push_back({v[0], v[1], v[2]});
    }
    if (out.traj.points.size() != out.traj.times.size() ||
        out.traj.diagnostics.size() != out.traj.times.size()) {
        throw ConfigError("trajectory json: array lengths differ");
    }
    return out;
}

}  // namespace

TrajectoryFile read_trajectory(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return read_trajectory_json_text(text);
    }
    std::istringstream in(text);
    return read_trajectory_csv_text(in);
}

// ---------------------------------------------------------------------------
// Packet files
// ---------------------------------------------------------------------------

namespace {

std::vector<double> packet_grid(const GaussianState& state, const Grid1D& grid) {
    grid.validate();
    const double sigma = std::sqrt(covariance_from_qp(state.qp, state.hbar).sq);
    std::vector<double> q(static_cast<std::size_t>(grid.n));
    const double w = grid.half_width * sigma;
    for (int i = 0; i < grid.n; ++i) {
        q[static_cast<std::size_t>(i)] = grid.center - w + 2.0 * w * i / (grid.n - 1);
    }
    return q;
}

}  // namespace

void write_packet_csv(const std::string& path, const GaussianState& state, const Grid1D& grid) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << "# gausspack-packet/1\n";
    f << "q,re_psi,im_psi,abs2\n";
    for (double q : packet_grid(state, grid)) {
        const cplx psi = psi_position(state, q);
        f << format_g17(q) << "," << format_g17(psi.real()) << "," << format_g17(psi.imag())
          << "," << format_g17(std::norm(psi)) << "\n";
    }
}

void write_packet_json(const std::string& path, const GaussianState& state, const Grid1D& grid) {
    using nlohmann::json;
    json rows = json::array();
    for (double q : packet_grid(state, grid)) {
        const cplx psi = psi_position(state, q);
        rows.push_back({q, psi.real(), psi.imag(), std::norm(psi)});
    }
    json j{{"schema", "gausspack-packet/1"}, {"columns", {"q", "re_psi", "im_psi", "abs2"}},
           {"rows", rows}};
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << j.dump(1) << "\n";
}

}  // namespace gausspack
