#include "sbc/config.hpp"

#include <fstream>

#include <json.hpp>

namespace sbc {

namespace {

using nlohmann::json;

// Byte offset -> "line L, column C" for parse diagnostics.
std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double want_num(const json& j, const std::string& key, double fallback,
                std::vector<std::string>& errors, bool required = false) {
    if (!j.contains(key)) {
        if (required) errors.push_back(key + ": missing required key");
        return fallback;
    }
    if (!j[key].is_number()) {
        errors.push_back(key + ": expected a number");
        return fallback;
    }
    return j[key].get<double>();
}

NoiseDist parse_noise_dist(const json& j, const std::string& prefix,
                           std::vector<std::string>& errors, bool allow_degenerate) {
    NoiseDist nd = NoiseDist::normal(allow_degenerate ? 0.0 : 1.0);
    if (!j.is_object()) {
        errors.push_back(prefix + ": expected an object");
        return nd;
    }
    std::string kind = j.value("kind", "normal");
    if (kind == "normal") {
        nd = NoiseDist::normal(want_num(j, "sigma", nd.scale, errors, true));
    } else if (kind == "uniform") {
        nd = NoiseDist::uniform_box(want_num(j, "half_width", nd.scale, errors, true));
    } else {
        errors.push_back(prefix + ".kind: unknown noise kind '" + kind + "'");
        return nd;
    }
    if (nd.scale < 0.0) errors.push_back(prefix + ": scale must be >= 0");
    if (!allow_degenerate && !(nd.scale > 0.0))
        errors.push_back(prefix + ": audit noise needs a proper density (scale > 0)");
    return nd;
}

} // namespace

SolveOptions ScenarioConfig::solve_options() const {
    SolveOptions o;
    o.grid_size = grid_size;
    o.draws = draws;
    o.effort_draws = effort_draws;
    o.seed = seed;
    o.ironing = ironing;
    o.base_choice = base_choice;
    return o;
}

LoadResult load_config(const std::string& path) {
    LoadResult res;
    std::ifstream in(path);
    if (!in) {
        res.errors.push_back(path + ": cannot open file");
        return res;
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        res.errors.push_back(path + ": parse error at " + locate(text, e.byte) + ": " + e.what());
        return res;
    }
    if (!root.is_object()) {
        res.errors.push_back(path + ": top level must be an object");
        return res;
    }

    ScenarioConfig cfg;
    auto& errors = res.errors;

    // --- params ---
    json jp = root.value("params", json::object());
    ParamSet& p = cfg.params;
    p.alpha = want_num(jp, "alpha", p.alpha, errors);
    p.kappa = want_num(jp, "kappa", p.kappa, errors);
    p.gamma = want_num(jp, "gamma", p.gamma, errors);
    p.omega_T = want_num(jp, "omega_T", p.omega_T, errors);
    p.omega_b = want_num(jp, "omega_b", p.omega_b, errors);
    p.b_bar = want_num(jp, "b_bar", p.b_bar, errors);
    p.phi_effort = want_num(jp, "phi_effort", p.phi_effort, errors);
    p.phi_default = want_num(jp, "phi_default", p.phi_default, errors);
    p.chi = want_num(jp, "chi", p.chi, errors);
    p.s = want_num(jp, "s", p.s, errors);
    p.r = want_num(jp, "r", p.r, errors);
    p.tau = want_num(jp, "tau", p.tau, errors);
    p.g = want_num(jp, "g", p.g, errors);
    p.rho = want_num(jp, "rho", p.rho, errors);
    p.eps_cap = want_num(jp, "eps_cap", p.eps_cap, errors);
    for (const auto& v : validate_params(p)) errors.push_back("params." + v);

    // --- distribution ---
    json jd = root.value("distribution", json::object());
    std::string family = jd.value("family", "uniform");
    bool ifr_claimed = jd.value("ifr_claimed", true);
    try {
        if (family == "uniform") {
            cfg.distribution = TypeDistribution::uniform(want_num(jd, "theta_lo", 0.0, errors),
                                                         want_num(jd, "theta_hi", 1.0, errors),
                                                         ifr_claimed);
        } else if (family == "truncated-exponential") {
            cfg.distribution = TypeDistribution::truncated_exponential(
                want_num(jd, "theta_lo", 0.0, errors), want_num(jd, "theta_hi", 1.0, errors),
                want_num(jd, "rate", 1.0, errors, true), ifr_claimed);
        } else if (family == "exponential-unbounded") {
            cfg.distribution = TypeDistribution::exponential_unbounded(
                want_num(jd, "theta_lo", 0.0, errors), want_num(jd, "rate", 1.0, errors, true),
                ifr_claimed);
        } else if (family == "log-logistic") {
            cfg.distribution = TypeDistribution::log_logistic(
                want_num(jd, "scale", 1.0, errors, true), want_num(jd, "shape", 1.0, errors, true),
                ifr_claimed);
        } else if (family == "tabulated") {
            if (!jd.contains("csv_path")) {
                errors.push_back("distribution.csv_path: missing required key");
            } else {
                cfg.distribution =
                    TypeDistribution::tabulated_from_csv(jd["csv_path"].get<std::string>(),
                                                         ifr_claimed);
            }
        } else {
            errors.push_back("distribution.family: unknown family '" + family + "'");
        }
    } catch (const std::exception& e) {
        errors.push_back(std::string("distribution: ") + e.what());
    }

    // --- noise ---
    json jn = root.value("noise", json::object());
    cfg.noise.epsilon = parse_noise_dist(jn.value("epsilon", json{{"kind", "normal"}, {"sigma", 0.0}}),
                                         "noise.epsilon", errors, /*allow_degenerate=*/true);
    cfg.noise.eta = parse_noise_dist(jn.value("eta", json{{"kind", "normal"}, {"sigma", 0.1}}),
                                     "noise.eta", errors, /*allow_degenerate=*/false);

    // --- technology ---
    json jt = root.value("technology", json::object());
    std::string tf = jt.value("family", "sqrt");
    if (tf == "sqrt") {
        cfg.technology.family = EffortTechnology::Family::Sqrt;
    } else if (tf == "log") {
        cfg.technology.family = EffortTechnology::Family::Log;
    } else {
        errors.push_back("technology.family: unknown family '" + tf + "'");
    }
    cfg.technology.a0 = want_num(jt, "scale_base", 1.0, errors);
    cfg.technology.a1 = want_num(jt, "scale_slope", 0.0, errors);
    cfg.technology.c0_base = want_num(jt, "c0_base", 0.0, errors);
    cfg.technology.c0_slope = want_num(jt, "c0_slope", 0.0, errors);
    if (cfg.distribution) {
        double lo = cfg.distribution->theta_lo(), hi = cfg.distribution->grid_hi();
        if (!(cfg.technology.a0 + cfg.technology.a1 * lo > 0.0) ||
            !(cfg.technology.a0 + cfg.technology.a1 * hi > 0.0))
            errors.push_back("technology: revenue scale must be positive on the type support");
    }

    // --- rule ---
    json jr = root.contains("rule") ? root["rule"]
                                    : json{{"kind", "threshold"}, {"location", 1.0}, {"level", 0.5}};
    std::string rk = jr.value("kind", "threshold");
    try {
        if (rk == "threshold") {
            cfg.rule = SignalRule::threshold(want_num(jr, "location", 0.0, errors, true),
                                             want_num(jr, "level", 0.0, errors, true));
        } else if (rk == "linear") {
            cfg.rule = SignalRule::linear_branch(want_num(jr, "kink", 0.0, errors, true),
                                                 want_num(jr, "slope", 0.5, errors, true),
                                                 want_num(jr, "upper", p.b_bar, errors));
        } else if (rk == "discretionary") {
            cfg.rule = discretionary_rule(p);
        } else {
            errors.push_back("rule.kind: unknown rule kind '" + rk + "'");
        }
    } catch (const std::exception& e) {
        errors.push_back(std::string("rule: ") + e.what());
    }

    // --- choice / run settings ---
    json jc = root.value("choice", json::object());
    cfg.base_choice.I = want_num(jc, "investment", 0.0, errors);
    cfg.base_choice.D = want_num(jc, "debt", 0.0, errors);
    if (cfg.base_choice.I < 0.0) errors.push_back("choice.investment: must be >= 0");
    if (cfg.base_choice.D < 0.0) errors.push_back("choice.debt: must be >= 0");

    cfg.grid_size = static_cast<int>(want_num(root, "grid_size", 101, errors));
    cfg.cap_grid_size = static_cast<int>(want_num(root, "cap_grid_size", 201, errors));
    cfg.ic_grid_size = static_cast<int>(want_num(root, "ic_grid_size", 21, errors));
    cfg.draws = static_cast<long>(want_num(root, "draws", 200000, errors));
    cfg.effort_draws = static_cast<long>(want_num(root, "effort_draws", 20000, errors));
    if (root.contains("seed")) {
        if (root["seed"].is_number_unsigned() || root["seed"].is_number_integer())
            cfg.seed = root["seed"].get<std::uint64_t>();
        else
            errors.push_back("seed: expected an unsigned integer");
    }
    if (cfg.grid_size < 3) errors.push_back("grid_size: must be >= 3");
    if (cfg.cap_grid_size < 2) errors.push_back("cap_grid_size: must be >= 2");
    if (cfg.ic_grid_size < 3) errors.push_back("ic_grid_size: must be >= 3");
    if (cfg.draws < 1000) errors.push_back("draws: must be >= 1000");
    if (cfg.effort_draws < 1000) errors.push_back("effort_draws: must be >= 1000");

    std::string ironing = root.value("ironing", "auto");
    if (ironing == "auto") cfg.ironing = IroningMode::Auto;
    else if (ironing == "on") cfg.ironing = IroningMode::Forced;
    else if (ironing == "off") cfg.ironing = IroningMode::Off;
    else errors.push_back("ironing: expected one of auto|on|off");

    if (root.contains("simulate_thetas")) {
        if (!root["simulate_thetas"].is_array()) {
            errors.push_back("simulate_thetas: expected an array of numbers");
        } else {
            for (const auto& v : root["simulate_thetas"]) {
                if (!v.is_number()) {
                    errors.push_back("simulate_thetas: expected numbers");
                    break;
                }
                cfg.simulate_thetas.push_back(v.get<double>());
            }
        }
    }
    if (cfg.simulate_thetas.empty() && cfg.distribution)
        cfg.simulate_thetas.push_back(cfg.distribution->quantile(0.5));

    cfg.k_base = want_num(root, "k_base", 0.0, errors);
    cfg.k_slope = want_num(root, "k_slope", 0.0, errors);
    cfg.reservation_utility = want_num(root, "reservation_utility", 0.0, errors);
    cfg.out_dir = root.value("out_dir", "out");

    if (errors.empty()) res.config = std::move(cfg);
    return res;
}

} // namespace sbc
