#include "gausspack/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "gausspack/trajectory_io.hpp"

namespace gausspack {

// ---------------------------------------------------------------------------
// Minimal TOML-subset parser: [section], [section.sub], [[array-of-tables]],
// key = value with strings, numbers, booleans and flat arrays.  Covers the
// config schema; not a general TOML implementation.
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// remove a trailing comment that is not inside a string
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

nlohmann::json parse_scalar(const std::string& tok, int line) {
    if (tok.empty()) fail(line, "empty value");
    if (tok.front() == '"') {
        if (tok.size() < 2 || tok.back() != '"') fail(line, "unterminated string");
        return tok.substr(1, tok.size() - 2);
    }
    if (tok == "true") return true;
    if (tok == "false") return false;
    try {
        std::size_t pos = 0;
        const double d = std::stod(tok, &pos);
        if (pos != tok.size()) fail(line, "trailing characters after number: " + tok);
        return d;
    } catch (const std::logic_error&) {
        fail(line, "cannot parse value: " + tok);
    }
}

nlohmann::json parse_value(const std::string& raw, int line) {
    const std::string v = strip(raw);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') fail(line, "unterminated array");
        nlohmann::json arr = nlohmann::json::array();
        std::string inner = v.substr(1, v.size() - 2);
        std::string tok;
        bool in_str = false;
        for (char ch : inner) {
            if (ch == '"') in_str = !in_str;
            if (ch == ',' && !in_str) {
                if (!strip(tok).empty()) arr.push_back(parse_scalar(strip(tok), line));
                tok.clear();
            } else {
                tok += ch;
            }
        }
        if (!strip(tok).empty()) arr.push_back(parse_scalar(strip(tok), line));
        return arr;
    }
    return parse_scalar(v, line);
}

std::vector<std::string> split_path(const std::string& s, int line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == '.') {
            if (cur.empty()) fail(line, "empty section-name component");
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (cur.empty()) fail(line, "empty section-name component");
    out.push_back(cur);
    return out;
}

// navigate to the table for a section path, descending into the last element
// of any array-of-tables on the way
nlohmann::json* navigate(nlohmann::json& root, const std::vector<std::string>& path, int line) {
    nlohmann::json* cur = &root;
    for (const auto& key : path) {
        nlohmann::json& slot = (*cur)[key];
        if (slot.is_array()) {
            if (slot.empty()) fail(line, "section refers to an empty table array: " + key);
            cur = &slot.back();
        } else {
            if (slot.is_null()) slot = nlohmann::json::object();
            if (!slot.is_object()) fail(line, "section name collides with a value: " + key);
            cur = &slot;
        }
    }
    return cur;
}

}  // namespace

nlohmann::json toml_to_json(const std::string& text) {
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* table = &root;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = strip(strip_comment(raw));
        if (s.empty()) continue;
        if (s.rfind("[[", 0) == 0) {
            if (s.size() < 5 || s.substr(s.size() - 2) != "]]") fail(line, "malformed [[section]]");
            const auto path = split_path(s.substr(2, s.size() - 4), line);
            nlohmann::json* parent =
                path.size() > 1
                    ? navigate(root, {path.begin(), path.end() - 1}, line)
                    : &root;
            nlohmann::json& arr = (*parent)[path.back()];
            if (arr.is_null()) arr = nlohmann::json::array();
            if (!arr.is_array()) fail(line, "table array collides with a value: " + path.back());
            arr.push_back(nlohmann::json::object());
            table = &arr.back();
        } else if (s.front() == '[') {
            if (s.back() != ']') fail(line, "malformed [section]");
            table = navigate(root, split_path(s.substr(1, s.size() - 2), line), line);
        } else {
            const auto eq = s.find('=');
            if (eq == std::string::npos) fail(line, "expected key = value");
            const std::string key = strip(s.substr(0, eq));
            if (key.empty()) fail(line, "empty key");
            (*table)[key] = parse_value(s.substr(eq + 1), line);
        }
    }
    return root;
}

// ---------------------------------------------------------------------------
// Config resolution
// ---------------------------------------------------------------------------

namespace {

double need_number(const nlohmann::json& j, const std::string& section, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ConfigError("[" + section + "] requires numeric field '" + key + "'");
    }
    return j.at(key).get<double>();
}

IntegratorConfig integrator_from_json(const nlohmann::json& j) {
    IntegratorConfig cfg;
    if (j.contains("method")) {
        const std::string m = j.at("method").get<std::string>();
        if (m == "rk4" || m == "rk4-fixed") {
            cfg.method = Method::rk4_fixed;
        } else if (m == "rk45" || m == "rk45-adaptive") {
            cfg.method = Method::rk45_adaptive;
        } else {
            throw ConfigError("[integrator] unknown method: " + m);
        }
    }
    cfg.step = j.value("step", cfg.step);
    cfg.rtol = j.value("rtol", cfg.rtol);
    cfg.atol = j.value("atol", cfg.atol);
    cfg.max_step = j.value("max_step", cfg.max_step);
    cfg.t0 = j.value("t0", cfg.t0);
    cfg.t1 = j.value("t1", cfg.t1);
    cfg.renormalize_constraint = j.value("renormalize", cfg.renormalize_constraint);
    cfg.hbar = j.value("hbar", cfg.hbar);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[integrator] ") + e.what());
    }
    return cfg;
}

}  // namespace

ChartState initial_state_from_json(const nlohmann::json& section, double hbar) {
    const bool has_cov = section.contains("sq") || section.contains("sp") ||
                         section.contains("sqp");
    const bool has_point =
        section.contains("q_re") || section.contains("c_re") || section.contains("zeta_re") ||
        section.contains("tau") || section.contains("x0") || section.contains("qmean");
    if (has_cov && has_point) {
        throw ConfigError("[initial] give either a chart point or a covariance triple, not both");
    }
    if (!has_cov && !section.contains("chart")) {
        throw ConfigError("[initial] needs a chart tag (plus point coordinates) or a "
                          "covariance triple sq/sp/sqp");
    }

    const Chart chart = chart_from_name(section.value("chart", "m"));

    if (has_cov) {
        CovarianceTriple cov{need_number(section, "initial", "sq"),
                             need_number(section, "initial", "sp"),
                             need_number(section, "initial", "sqp")};
        if (std::abs(cov.rs_residual(hbar)) > 1e-6) {
            throw ConfigError("[initial] covariance triple violates the uncertainty equality");
        }
        // canonical lift: Q real positive
        const double q = std::sqrt(2.0 * cov.sq / hbar);
        const SiegelPoint c = siegel_from_covariance(cov, hbar);
        const QPPoint qp{cplx{q, 0.0}, c.c * q};
        switch (chart) {
            case Chart::m: return ChartState::from(qp.renormalized());
            case Chart::h3: return ChartState::from(nu_map(qp.renormalized()));
            case Chart::h2:
                return ChartState::from(squeeze_coordinates(h2_from_covariance(cov, hbar)));
            case Chart::disk:
                return ChartState::from(disk_projection(h2_from_covariance(cov, hbar)));
            case Chart::siegel: return ChartState::from(c);
            case Chart::moments:
                throw ConfigError("[initial] covariance triple cannot seed a moments run");
        }
    }

    nlohmann::json point = section;
    point["chart"] = chart_name(chart);
    try {
        return chart_point_from_json(point);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("[initial] ") + e.what());
    }
}

namespace {

RunConfig run_from_json(const nlohmann::json& j, const std::string& label) {
    for (const char* sec : {"hamiltonian", "initial", "integrator"}) {
        if (!j.contains(sec)) throw ConfigError("missing [" + std::string(sec) + "] section");
    }
    RunConfig cfg;
    cfg.label = j.value("label", label);
    cfg.hamiltonian = model_from_json(j.at("hamiltonian"));
    cfg.integrator = integrator_from_json(j.at("integrator"));
    cfg.initial = initial_state_from_json(j.at("initial"), cfg.integrator.hbar);

    if (j.contains("output")) {
        const nlohmann::json& out = j.at("output");
        if (out.contains("charts")) {
            for (const auto& c : out.at("charts")) {
                cfg.outputs.charts.push_back(chart_from_name(c.get<std::string>()));
            }
        }
        if (out.contains("formats")) {
            for (const auto& fj : out.at("formats")) {
                const std::string fmt = fj.get<std::string>();
                if (fmt != "csv" && fmt != "json") throw ConfigError("[output] unknown format " + fmt);
                cfg.outputs.formats.push_back(fmt);
            }
        }
        cfg.outputs.plot = out.value("plot", false);
        cfg.outputs.basename = out.value("basename", cfg.outputs.basename);
    }
    if (cfg.outputs.charts.empty()) cfg.outputs.charts.push_back(cfg.initial.chart);
    if (cfg.outputs.formats.empty()) cfg.outputs.formats.emplace_back("csv");
    return cfg;
}

}  // namespace

std::vector<RunConfig> parse_configs(const std::string& text, const std::string& filename) {
    nlohmann::json doc;
    const auto first = text.find_first_not_of(" \t\r\n");
    const bool named_toml = filename.size() > 5 && filename.substr(filename.size() - 5) == ".toml";
    const bool named_json = filename.size() > 5 && filename.substr(filename.size() - 5) == ".json";
    const bool looks_json = first != std::string::npos && text[first] == '{';
    if (named_json || (looks_json && !named_toml)) {
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(filename + ": " + e.what());
        }
    } else {
        doc = toml_to_json(text);
    }

    std::vector<RunConfig> out;
    if (doc.contains("run")) {
        if (!doc.at("run").is_array()) throw ConfigError("'run' must be an array of tables");
        int idx = 0;
        for (const auto& r : doc.at("run")) {
            out.push_back(run_from_json(r, "run-" + std::to_string(idx++)));
        }
    } else if (doc.contains("runs")) {
        int idx = 0;
        for (const auto& r : doc.at("runs")) {
            out.push_back(run_from_json(r, "run-" + std::to_string(idx++)));
        }
    } else {
        out.push_back(run_from_json(doc, "run"));
    }
    if (out.empty()) throw ConfigError(filename + ": no runs defined");
    return out;
}

std::vector<RunConfig> load_configs(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_configs(buf.str(), path);
}

}  // namespace gausspack
