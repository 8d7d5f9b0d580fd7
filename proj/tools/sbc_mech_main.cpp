// sbc-mech: solve, simulate and verify threshold-cap transfer mechanisms.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "sbc/config.hpp"
#include "sbc/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"sbc-mech: threshold-cap transfer mechanism toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double rho = 0.0;
    bool rho_set = false;

    sbc::SweepSpec sweep;
    bool sweep_set = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "scenario config (JSON)")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t v) { seed = v; seed_set = true; }, "RNG seed override");
        sub->add_option_function<double>(
            "--rho", [&](double v) { rho = v; rho_set = true; }, "discount factor override");
    };

    for (const char* name : {"solve", "simulate", "verify", "credibility"})
        add_common(app.add_subcommand(name));

    auto* sw = app.add_subcommand("sweep", "re-solve along one parameter");
    add_common(sw);
    sw->add_option("--sweep", sweep.key, "parameter to vary")->required();
    sw->add_option("--from", sweep.from, "first value")->required();
    sw->add_option("--to", sweep.to, "last value")->required();
    sw->add_option("--steps", sweep.steps, "number of points")->required();

    CLI11_PARSE(app, argc, argv);
    sweep_set = sw->parsed();

    auto loaded = sbc::load_config(config_path);
    if (!loaded.ok()) {
        for (const auto& e : loaded.errors) std::cerr << "config error: " << e << "\n";
        return 1;
    }
    for (const auto& w : sbc::param_warnings(loaded.config->params))
        std::cerr << "warning: " << w << "\n";

    sbc::RunOverrides ov;
    if (!out_dir.empty()) ov.out_dir = out_dir;
    if (seed_set) ov.seed = seed;
    if (rho_set) ov.rho = rho;
    if (sweep_set) ov.sweep = sweep;

    const std::string command = app.get_subcommands().front()->get_name();
    auto result = sbc::execute(command, *loaded.config, ov);
    for (const auto& m : result.messages) std::cerr << m << "\n";
    for (const auto& f : result.files) std::cout << f << "\n";
    return result.exit_code;
}
