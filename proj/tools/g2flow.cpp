#include "g2flow/config.hpp"
#include "g2flow/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

namespace {

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
    if (path.empty()) return fn(std::cout);
    std::ofstream f(path);
    if (!f) {
        std::cerr << "cannot open output file '" << path << "'\n";
        return 1;
    }
    return fn(f);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariant-frame Hamiltonian flow toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::vector<std::string> monitor_names;
    unsigned seed = 20240229u;

    CLI::App* run = app.add_subcommand("run", "integrate a configured flow, emit CSV");
    run->add_option("config", config_path, "JSON run configuration")->required();
    run->add_option("--out", out_path, "write CSV to this file instead of stdout");
    run->add_option("--monitors", monitor_names,
                    "override the config's monitor list (state, hamiltonian, constraint, "
                    "torsion, adm)")
        ->delimiter(',');
    run->add_option("--seed", seed, "override the config's seed");

    g2flow::BsOptions bs;
    CLI::App* bs_cmd = app.add_subcommand("bs", "isotropic reduced system, emit CSV");
    bs_cmd->add_option("--sigma", bs.sigma, "curvature parameter");
    bs_cmd->add_option("--a0", bs.a0, "initial frame scale (positive)");
    bs_cmd->add_option("--b0", bs.b0, "initial momentum scale");
    bs_cmd->add_option("--t-end", bs.t_end, "integration horizon");
    bs_cmd->add_option("--dt", bs.dt, "step size");
    bs_cmd->add_flag("--compare-full", bs.compare_full,
                     "also integrate the embedded full flow and append deviations");
    bs_cmd->add_option("--out", out_path, "write CSV to this file instead of stdout");

    double kappa = 1.0, coeff_a = 0.5, coeff_b = 1.0;
    CLI::App* sc = app.add_subcommand("scale-check",
                                      "verify the scaling map against the rescaled flow");
    sc->add_option("config", config_path, "JSON run configuration for the base run")
        ->required();
    sc->add_option("--kappa", kappa, "time rescaling factor (positive)");
    sc->add_option("--a", coeff_a, "target Hamiltonian coefficient a");
    sc->add_option("--b", coeff_b, "target Hamiltonian coefficient b");
    sc->add_option("--out", out_path, "write the report to this file instead of stdout");

    g2flow::SweepOptions sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "grid of reduced trajectories");
    sweep_cmd->add_option("--sigma", sweep.sigma, "curvature parameter");
    sweep_cmd->add_option("--a0-min", sweep.a0_min, "grid lower bound for a0");
    sweep_cmd->add_option("--a0-max", sweep.a0_max, "grid upper bound for a0");
    sweep_cmd->add_option("--a0-steps", sweep.a0_steps, "grid points for a0");
    sweep_cmd->add_option("--b0-min", sweep.b0_min, "grid lower bound for b0");
    sweep_cmd->add_option("--b0-max", sweep.b0_max, "grid upper bound for b0");
    sweep_cmd->add_option("--b0-steps", sweep.b0_steps, "grid points for b0");
    sweep_cmd->add_option("--t-end", sweep.t_end, "integration horizon");
    sweep_cmd->add_option("--dt", sweep.dt, "step size");
    sweep_cmd->add_option("--out", out_path, "write CSV to this file instead of stdout");

    bool corrupt_epsilon = false;
    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in invariant suites");
    selftest->add_option("--seed", seed, "seed for randomized fixtures");
    selftest->add_flag("--corrupt-epsilon", corrupt_epsilon)->group("");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            g2flow::RunConfig cfg = g2flow::load_run_config(config_path);
            if (run->count("--seed")) cfg.seed = seed;
            if (!monitor_names.empty()) {
                // reuse the config parser's validation for monitor names
                std::string js = "{\"monitors\":[";
                for (std::size_t i = 0; i < monitor_names.size(); ++i)
                    js += (i ? ",\"" : "\"") + monitor_names[i] + "\"";
                js += "]}";
                cfg.monitors = g2flow::parse_run_config(js).monitors;
            }
            return with_output(out_path, [&](std::ostream& o) {
                return g2flow::run_command(cfg, o, std::cerr);
            });
        }
        if (bs_cmd->parsed())
            return with_output(out_path, [&](std::ostream& o) {
                return g2flow::bs_command(bs, o, std::cerr);
            });
        if (sc->parsed()) {
            g2flow::RunConfig cfg = g2flow::load_run_config(config_path);
            return with_output(out_path, [&](std::ostream& o) {
                return g2flow::scale_check_command(cfg, kappa, coeff_a, coeff_b, o,
                                                   std::cerr);
            });
        }
        if (sweep_cmd->parsed())
            return with_output(out_path, [&](std::ostream& o) {
                return g2flow::sweep_command(sweep, o, std::cerr);
            });
        if (selftest->parsed())
            return g2flow::selftest_command(corrupt_epsilon, seed, std::cout, std::cerr);
    } catch (const g2flow::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << '\n';
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 1;
}
