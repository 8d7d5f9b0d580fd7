#include "sbc/runner.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "sbc/credibility.hpp"
#include "sbc/io.hpp"
#include "sbc/verifier.hpp"

namespace sbc {

namespace {

using nlohmann::json;

json report_json(const SimulationReport& r) {
    return json{{"theta", r.theta},
                {"cap", r.cap},
                {"e_star", r.e_star},
                {"effort_at_boundary", r.effort_at_boundary},
                {"btilde", r.btilde},
                {"btilde_se", r.btilde_se},
                {"expected_p", r.expected_p},
                {"expected_p_se", r.expected_p_se},
                {"delta", r.delta},
                {"delta_se", r.delta_se},
                {"pi", r.pi},
                {"pi_se", r.pi_se},
                {"lambda_T_hat", r.lambda_T_hat},
                {"lambda_T_hat_se", r.lambda_T_hat_se},
                {"Lambda", r.Lambda},
                {"Lambda_se", r.Lambda_se},
                {"cap_bind_prob", r.cap_bind_prob},
                {"cap_bind_prob_se", r.cap_bind_prob_se},
                {"cap_slack_violated", r.cap_slack_violated},
                {"linear_branch_prob", r.linear_branch_prob},
                {"draws", r.draws},
                {"seed", r.seed}};
}

json credibility_json(const CredibilityReport& r) {
    return json{{"rho", r.rho},
                {"rho_star", r.rho_star},
                {"sustainable", r.sustainable},
                {"deviation_gain_bound", r.deviation_gain_bound},
                {"punishment_loss_bound", r.punishment_loss_bound},
                {"conservative_bound_with_alpha", r.conservative_bound_with_alpha},
                {"slack", r.slack}};
}

struct ParamKeyRef {
    const char* name;
    double ParamSet::*member;
};

constexpr ParamKeyRef kParamKeys[] = {
    {"alpha", &ParamSet::alpha},       {"kappa", &ParamSet::kappa},
    {"gamma", &ParamSet::gamma},       {"omega_T", &ParamSet::omega_T},
    {"omega_b", &ParamSet::omega_b},   {"b_bar", &ParamSet::b_bar},
    {"phi_effort", &ParamSet::phi_effort}, {"phi_default", &ParamSet::phi_default},
    {"chi", &ParamSet::chi},           {"s", &ParamSet::s},
    {"r", &ParamSet::r},               {"tau", &ParamSet::tau},
    {"g", &ParamSet::g},               {"rho", &ParamSet::rho},
    {"eps_cap", &ParamSet::eps_cap},
};

std::string emit(const std::string& dir, const std::string& name, const std::string& content,
                 RunResult& res) {
    std::filesystem::path path = std::filesystem::path(dir) / name;
    write_text_file(path.string(), content);
    res.files.push_back(path.string());
    return path.string();
}

} // namespace

RunResult execute(const std::string& command, ScenarioConfig cfg, const RunOverrides& ov) {
    RunResult res;
    if (ov.out_dir) cfg.out_dir = *ov.out_dir;
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.rho) cfg.params.rho = *ov.rho;

    if (command != "solve" && command != "simulate" && command != "verify" &&
        command != "credibility" && command != "sweep") {
        res.messages.push_back("unknown command: " + command);
        res.exit_code = 1;
        return res;
    }

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec || !std::filesystem::is_directory(cfg.out_dir)) {
        res.messages.push_back("cannot create output directory: " + cfg.out_dir);
        res.exit_code = 1;
        return res;
    }

    const auto& d = *cfg.distribution;
    const auto& rule = *cfg.rule;

    try {
        if (command == "solve") {
            auto sol = solve(cfg.params, d, rule, cfg.technology, cfg.noise, cfg.solve_options());
            emit(cfg.out_dir, "schedule.csv", schedule_csv(sol), res);
            emit(cfg.out_dir, "summary.json", summary_json(sol), res);
        } else if (command == "simulate") {
            auto sol = solve(cfg.params, d, rule, cfg.technology, cfg.noise, cfg.solve_options());
            std::vector<double> thetas, pis, dens;
            for (std::size_t k = 0; k < cfg.simulate_thetas.size(); ++k) {
                double theta = cfg.simulate_thetas[k];
                auto rep = simulate(cfg.params, cfg.technology, theta, rule, sol.cap_at(theta),
                                    cfg.noise, std::nullopt, cfg.draws,
                                    derive_seed(cfg.seed, 0x51D0 + k), cfg.effort_draws);
                std::ostringstream name;
                name << "sim_" << k << ".json";
                emit(cfg.out_dir, name.str(), report_json(rep).dump(2) + "\n", res);
                thetas.push_back(theta);
                pis.push_back(rep.pi);
                dens.push_back(d.pdf(theta));
            }
            if (thetas.size() >= 2) {
                json agg{{"aggregate_softness", aggregate_softness(thetas, pis, dens)}};
                emit(cfg.out_dir, "softness.json", agg.dump(2) + "\n", res);
            }
        } else if (command == "verify") {
            auto sol = solve(cfg.params, d, rule, cfg.technology, cfg.noise, cfg.solve_options());
            VerifierOptions vo;
            vo.draws = cfg.draws;
            vo.effort_draws = cfg.effort_draws;
            vo.seed = derive_seed(cfg.seed, 0xF0);
            vo.k_base = cfg.k_base;
            vo.k_slope = cfg.k_slope;
            vo.reservation_utility = cfg.reservation_utility;
            vo.base_choice = cfg.base_choice;

            auto grid = linspace(d.theta_lo(), d.grid_hi(), cfg.ic_grid_size);
            auto ic = check_ic_ir(sol, cfg.params, d, rule, cfg.technology, cfg.noise, grid, vo);
            auto env = check_envelope(sol, cfg.params, d, rule, cfg.technology, cfg.noise, grid, vo);

            // cap-min calculus on the induced payout of a high-need type,
            // where the rule actually pays with appreciable probability
            double med = d.quantile(0.9);
            auto es = solve_effort(cfg.params, cfg.technology, med, rule, sol.cap_at(med),
                                   cfg.noise, cfg.effort_draws, derive_seed(cfg.seed, 0xCA),
                                   cfg.base_choice);
            double mu = gap_base(cfg.base_choice, cfg.params, cfg.technology, med) -
                        cfg.technology.revenue(es.e, med);
            NoiseModel noise = cfg.noise;
            auto sampler = [mu, noise, rule](RandomStream& rs) {
                double eps = noise.epsilon.sample(rs);
                double eta = noise.eta.sample(rs);
                return rule.beta(mu + eps + eta);
            };
            std::vector<double> caps = {0.25 * cfg.params.b_bar, 0.5 * cfg.params.b_bar,
                                        0.9 * cfg.params.b_bar};
            auto capmin = capmin_derivative_check(sampler, caps, std::max(100000L, cfg.draws / 2),
                                                  derive_seed(cfg.seed, 0xCB));

            json out;
            out["ic"] = {{"max_gain", ic.max_gain},
                         {"ic_pass", ic.ic_pass},
                         {"ir_pass", ic.ir_pass},
                         {"x_monotone", ic.x_monotone},
                         {"pass", ic.pass}};
            out["envelope"] = {{"max_abs_residual", env.max_abs_residual}, {"pass", env.pass}};
            json capmin_rows = json::array();
            bool capmin_pass = true;
            for (const auto& row : capmin) {
                capmin_rows.push_back({{"b", row.b},
                                       {"lhs_mean", row.lhs_mean},
                                       {"rhs_mean", row.rhs_mean},
                                       {"pass_mean", row.pass_mean},
                                       {"lhs_sq", row.lhs_sq},
                                       {"rhs_sq", row.rhs_sq},
                                       {"pass_sq", row.pass_sq}});
                capmin_pass = capmin_pass && row.pass_mean && row.pass_sq;
            }
            out["capmin"] = {{"rows", capmin_rows}, {"pass", capmin_pass}};
            bool all_pass = ic.pass && env.pass && capmin_pass;
            out["pass"] = all_pass;
            emit(cfg.out_dir, "verification.json", out.dump(2) + "\n", res);

            std::ostringstream ic_csv;
            ic_csv << "true_theta,report_theta,utility\n";
            for (std::size_t i = 0; i < grid.size(); ++i)
                for (std::size_t r = 0; r < grid.size(); ++r)
                    ic_csv << format_sig(grid[i]) << ',' << format_sig(grid[r]) << ','
                           << format_sig(ic.utility_grid[i * grid.size() + r]) << '\n';
            emit(cfg.out_dir, "ic_grid.csv", ic_csv.str(), res);

            if (!all_pass) {
                res.messages.push_back("verification suite failed");
                res.exit_code = 2;
            }
        } else if (command == "credibility") {
            auto rep = grim_trigger_sustainable(cfg.params, cfg.params.rho);
            emit(cfg.out_dir, "credibility.json", credibility_json(rep).dump(2) + "\n", res);
        } else if (command == "sweep") {
            if (!ov.sweep) {
                res.messages.push_back("sweep requires --sweep <key> --from <v> --to <v> --steps <n>");
                res.exit_code = 1;
                return res;
            }
            const SweepSpec& sw = *ov.sweep;
            double ParamSet::*member = nullptr;
            for (const auto& k : kParamKeys)
                if (sw.key == k.name) member = k.member;
            if (!member) {
                res.messages.push_back("unknown sweep parameter: " + sw.key);
                res.exit_code = 1;
                return res;
            }
            if (sw.steps < 2) {
                res.messages.push_back("sweep needs at least 2 steps");
                res.exit_code = 1;
                return res;
            }
            std::ostringstream csv;
            csv << "parameter,theta_min,theta_dagger,b_max,no_bailout\n";
            for (int k = 0; k < sw.steps; ++k) {
                double value = sw.from + (sw.to - sw.from) * k / (sw.steps - 1);
                ScenarioConfig point = cfg;
                point.params.*member = value;
                auto bad = validate_params(point.params);
                if (!bad.empty()) {
                    res.messages.push_back("sweep value " + format_sig(value) +
                                           " violates: " + bad.front());
                    res.exit_code = 1;
                    return res;
                }
                auto sol = solve(point.params, d, rule, point.technology, point.noise,
                                 point.solve_options());
                csv << format_sig(value) << ','
                    << (std::isfinite(sol.theta_min) ? format_sig(sol.theta_min) : "inf") << ','
                    << (std::isfinite(sol.theta_dagger) ? format_sig(sol.theta_dagger) : "inf")
                    << ',' << format_sig(sol.b_max) << ',' << (sol.no_bailout ? "true" : "false")
                    << '\n';
            }
            emit(cfg.out_dir, "sweep.csv", csv.str(), res);
        }
    } catch (const std::exception& e) {
        res.messages.push_back(std::string("error: ") + e.what());
        res.exit_code = 1;
    }
    return res;
}

} // namespace sbc
