// gausspack — simulate squeezed-state dynamics on the five charts, convert
// trajectories between them, and render figure-style SVG plots.
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gausspack/amplifier.hpp"
#include "gausspack/config.hpp"
#include "gausspack/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

int guarded(const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const gausspack::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const gausspack::ConversionError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const gausspack::IntegrationError& e) {
        std::cerr << "numeric failure: " << e.what()
                  << " (last good t = " << e.last_good_time << ")\n";
        return kExitNumeric;
    } catch (const gausspack::RiccatiBlowUpError& e) {
        std::cerr << "numeric failure: " << e.what() << " (t = " << e.blow_up_time << ")\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace gausspack;
    CLI::App app{"gausspack: generalized-coherent-state dynamics on five equivalent charts"};
    app.require_subcommand(1);

    // ---- run ----
    std::string config_path, out_dir = ".", hbar_override;
    std::vector<std::string> chart_override, format_override;
    bool plot_override = false;
    auto* run_cmd = app.add_subcommand("run", "integrate and write trajectory files");
    run_cmd->add_option("--config", config_path, "config file (TOML subset or JSON)")->required();
    run_cmd->add_option("--out-dir", out_dir, "output directory");
    run_cmd->add_option("--chart", chart_override, "override output charts");
    run_cmd->add_option("--format", format_override, "override formats (csv|json)");
    run_cmd->add_flag("--plot", plot_override, "also emit SVG plots");
    run_cmd->add_option("--hbar", hbar_override, "override hbar");

    // ---- convert ----
    std::string in_path, out_path, target_chart, out_format = "csv";
    auto* conv_cmd = app.add_subcommand("convert", "convert a trajectory file to another chart");
    conv_cmd->add_option("--in", in_path, "input trajectory file")->required();
    conv_cmd->add_option("--chart", target_chart, "target chart")->required();
    conv_cmd->add_option("--out", out_path, "output file")->required();
    conv_cmd->add_option("--format", out_format, "output format (csv|json)");

    // ---- plot ----
    std::string plot_in, plot_out, plot_style;
    auto* plot_cmd = app.add_subcommand("plot", "render a trajectory file to SVG");
    plot_cmd->add_option("--in", plot_in, "input trajectory file")->required();
    plot_cmd->add_option("--out", plot_out, "output SVG file")->required();
    plot_cmd->add_option("--style", plot_style, "alpha|plane|disk|halfplane|h2");

    // ---- check ----
    std::string check_in;
    double check_tol = 1e-6;
    auto* check_cmd = app.add_subcommand("check", "re-run invariant diagnostics on a file");
    check_cmd->add_option("--in", check_in, "input trajectory file")->required();
    check_cmd->add_option("--tol", check_tol, "constraint tolerance");

    // ---- amplifier classify ----
    auto* amp_cmd = app.add_subcommand("amplifier", "degenerate parametric amplifier tools");
    amp_cmd->require_subcommand(1);
    double a_omega = 1.0, a_kappa = 0.0, a_beta_re = 1.0, a_beta_im = 0.0;
    double a0_re = 1.0, a0_im = 1.0;
    auto* cls_cmd = amp_cmd->add_subcommand("classify", "classify the alpha(t) curve");
    cls_cmd->add_option("--omega", a_omega, "signal frequency")->required();
    cls_cmd->add_option("--kappa", a_kappa, "coupling")->required();
    cls_cmd->add_option("--beta-re", a_beta_re, "pump amplitude, real part");
    cls_cmd->add_option("--beta-im", a_beta_im, "pump amplitude, imaginary part");
    cls_cmd->add_option("--alpha0-re", a0_re, "initial alpha, real part");
    cls_cmd->add_option("--alpha0-im", a0_im, "initial alpha, imaginary part");

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        return guarded([&] {
            std::vector<RunConfig> cfgs = load_configs(config_path);
            for (RunConfig& cfg : cfgs) {
                if (!chart_override.empty()) {
                    cfg.outputs.charts.clear();
                    for (const auto& c : chart_override) {
                        cfg.outputs.charts.push_back(chart_from_name(c));
                    }
                }
                if (!format_override.empty()) cfg.outputs.formats = format_override;
                if (plot_override) cfg.outputs.plot = true;
                if (!hbar_override.empty()) cfg.integrator.hbar = std::stod(hbar_override);
            }
            const auto reports = run_all(cfgs, out_dir);
            nlohmann::json out = nlohmann::json::array();
            for (const auto& r : reports) out.push_back(report_to_json(r));
            std::cout << out.dump(1) << "\n";
        });
    }
    if (conv_cmd->parsed()) {
        return guarded([&] {
            convert_file(in_path, chart_from_name(target_chart), out_path, out_format);
        });
    }
    if (plot_cmd->parsed()) {
        return guarded([&] { plot_file(plot_in, plot_style, plot_out); });
    }
    if (check_cmd->parsed()) {
        int rc = kExitOk;
        const int guard_rc = guarded([&] {
            const CheckReport rep = check_file(check_in, check_tol);
            std::cout << check_to_json(rep).dump(1) << "\n";
            if (!rep.ok) rc = kExitNumeric;
        });
        return guard_rc != kExitOk ? guard_rc : rc;
    }
    if (cls_cmd->parsed()) {
        return guarded([&] {
            AmplifierParams params{a_omega, a_kappa, cplx{a_beta_re, a_beta_im}};
            const CurveClass cc = classify_curve(params, cplx{a0_re, a0_im});
            nlohmann::json j{{"regime", regime_name(params.regime())},
                             {"mu", cc.mu},
                             {"nu", cc.nu},
                             {"ratio", cc.ratio},
                             {"kind", curve_kind_name(cc.kind)}};
            if (cc.period) {
                j["period"] = *cc.period;
                j["ratio_num"] = cc.ratio_num;
                j["ratio_den"] = cc.ratio_den;
            } else {
                j["period"] = nullptr;
            }
            std::cout << j.dump(1) << "\n";
        });
    }
    return kExitOk;
}
