#include "sbc/stage_game.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sbc {

namespace {

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double m = 0.0;
    for (double x : xs) m += x;
    m /= n;
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return {m, xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
}

} // namespace

double gap_base(const LocalChoice& c, const ParamSet& p, const EffortTechnology& tech,
                double theta) {
    double cost = tech.reduced_cost(theta) + (1.0 - p.s) * c.I + p.r * c.D;
    double resources = p.tau + p.g + p.s * c.I + c.D;
    return cost - resources;
}

double fiscal_gap(const LocalChoice& c, const ParamSet& p, const EffortTechnology& tech,
                  double theta, double eps) {
    return gap_base(c, p, tech, theta) - tech.revenue(c.e, theta) + eps;
}

GapDraws GapDraws::draw(const NoiseModel& noise, long n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("GapDraws: need n >= 1");
    GapDraws d;
    d.eps.resize(static_cast<std::size_t>(n));
    d.eta.resize(static_cast<std::size_t>(n));
    RandomStream rs(seed);
    for (long j = 0; j < n; ++j) {
        d.eps[static_cast<std::size_t>(j)] = noise.epsilon.sample(rs);
        d.eta[static_cast<std::size_t>(j)] = noise.eta.sample(rs);
    }
    return d;
}

EffortSolution solve_effort(const ParamSet& p, const EffortTechnology& tech, double theta,
                            const SignalRule& rule, double cap, const NoiseModel& noise,
                            long draws, std::uint64_t seed, const LocalChoice& base_choice,
                            double e_hi) {
    const double base = gap_base(base_choice, p, tech, theta);
    const bool need_lambda = p.phi_default > 0.0;
    const bool need_slope = !rule.is_threshold() && p.omega_b != 0.0;

    GapDraws d;
    if (need_lambda || need_slope) d = GapDraws::draw(noise, draws, seed);
    const std::size_t n = d.eps.size();

    auto multiplier = [&](double e) {
        double m = 1.0;
        if (n == 0) return m;
        double rev = tech.revenue(e, theta);
        if (need_lambda) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double g = base - rev + d.eps[j];
                acc += noise.eta.pdf(g - rule.beta(g));
            }
            m += p.phi_default * acc / static_cast<double>(n);
        }
        if (need_slope) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double g_hat = base - rev + d.eps[j] + d.eta[j];
                if (rule.beta(g_hat) < cap) acc += rule.slope_at(g_hat);
            }
            m -= p.omega_b * acc / static_cast<double>(n);
        }
        return m;
    };

    auto residual = [&](double e) {
        double mr = tech.marginal_revenue(e, theta);
        if (std::isinf(mr)) return std::numeric_limits<double>::infinity();
        return mr * multiplier(e) - p.phi_effort;
    };

    EffortSolution sol;
    double lo = 0.0, hi = e_hi;
    double r_lo = residual(lo);
    double r_hi = residual(hi);
    if (r_lo <= 0.0) { // weak incentives even at zero effort (log family)
        sol.e = 0.0;
        sol.at_boundary = r_lo < 0.0;
        sol.foc_residual = r_lo;
        return sol;
    }
    if (r_hi >= 0.0) { // interior root beyond the bracket
        sol.e = e_hi;
        sol.at_boundary = r_hi > 0.0;
        sol.foc_residual = r_hi;
        return sol;
    }

    int it = 0;
    while (hi - lo > 1e-12 && it < 200) {
        double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
        ++it;
    }
    sol.e = 0.5 * (lo + hi);
    sol.foc_residual = residual(sol.e);
    sol.iterations = it;
    return sol;
}

Estimate expected_payout_under_cap(const ParamSet& p, const EffortTechnology& tech, double theta,
                                   const SignalRule& rule, double cap, const NoiseModel& noise,
                                   double effort, long draws, std::uint64_t seed,
                                   const LocalChoice& base_choice) {
    if (draws < 1000) throw std::invalid_argument("expected_payout_under_cap: draws must be >= 1000");
    if (cap == 0.0) return {0.0, 0.0}; // min{beta, 0} = 0 identically

    const double mu = gap_base(base_choice, p, tech, theta) - tech.revenue(effort, theta);
    GapDraws d = GapDraws::draw(noise, draws, seed);
    std::vector<double> vals(d.eps.size());
    for (std::size_t j = 0; j < d.eps.size(); ++j) {
        double g_hat = mu + d.eps[j] + d.eta[j];
        vals[j] = std::min(rule.beta(g_hat), cap);
    }
    auto ms = mean_sd(vals);
    return {ms.mean, ms.sd / std::sqrt(static_cast<double>(vals.size()))};
}

SimulationReport simulate(const ParamSet& p, const EffortTechnology& tech, double theta,
                          const SignalRule& rule, double cap, const NoiseModel& noise,
                          const std::optional<LocalChoice>& choice_overrides, long draws,
                          std::uint64_t seed, long effort_draws) {
    if (draws < 1000) throw std::invalid_argument("simulate: draws must be >= 1000");

    SimulationReport rep;
    rep.theta = theta;
    rep.cap = cap;
    rep.draws = draws;
    rep.seed = seed;

    LocalChoice choice;
    if (choice_overrides) {
        choice = *choice_overrides;
        rep.e_star = choice.e;
    } else {
        auto es = solve_effort(p, tech, theta, rule, cap, noise, effort_draws,
                               derive_seed(seed, 0xEF01), choice);
        choice.e = es.e;
        rep.e_star = es.e;
        rep.effort_at_boundary = es.at_boundary;
    }

    const double mu = gap_base(choice, p, tech, theta);
    const double rev = tech.revenue(choice.e, theta);
    GapDraws d = GapDraws::draw(noise, draws, derive_seed(seed, 0x5EED));
    const std::size_t n = d.eps.size();

    const double h = 0.01; // grant perturbation for the crowd-out difference
    std::vector<double> v_min(n), v_p(n), v_def(n), v_lam(n), v_bind(n), v_fd(n);
    double branch_hits = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double g_true = mu - rev + d.eps[j];
        double g_hat = g_true + d.eta[j];
        double y = rule.beta(g_hat);
        double pay = g_hat > 0.0 ? std::min({y, cap, g_hat}) : 0.0;

        v_min[j] = std::min(y, cap);
        v_p[j] = pay;
        v_def[j] = pay < g_true ? 1.0 : 0.0;
        v_lam[j] = noise.eta.pdf(g_true - rule.beta(g_true));
        v_bind[j] = y >= cap ? 1.0 : 0.0;
        if (rule.slope_at(g_hat) > 0.0 && y < cap) branch_hits += 1.0;
        // raising tau by h lowers the gap (and the signal) by h
        double p_up = realized_payout(rule, cap, g_hat - h);
        double p_dn = realized_payout(rule, cap, g_hat + h);
        v_fd[j] = (p_up - p_dn) / (2.0 * h);
    }

    auto put = [&](const std::vector<double>& xs, double& value, double& se) {
        auto ms = mean_sd(xs);
        value = ms.mean;
        se = ms.sd / std::sqrt(static_cast<double>(n));
    };
    put(v_min, rep.btilde, rep.btilde_se);
    put(v_p, rep.expected_p, rep.expected_p_se);
    put(v_def, rep.delta, rep.delta_se);
    rep.pi = 1.0 - rep.delta;
    rep.pi_se = rep.delta_se;
    put(v_lam, rep.Lambda, rep.Lambda_se);
    put(v_bind, rep.cap_bind_prob, rep.cap_bind_prob_se);

    auto fd = mean_sd(v_fd);
    rep.lambda_T_hat = p.omega_T + p.omega_b * fd.mean;
    rep.lambda_T_hat_se = std::abs(p.omega_b) * fd.sd / std::sqrt(static_cast<double>(n));

    rep.linear_branch_prob = branch_hits / static_cast<double>(n);
    rep.cap_slack_violated = rep.cap_bind_prob > p.eps_cap;
    return rep;
}

DefaultSensitivity effort_default_sensitivity(const ParamSet& p, const EffortTechnology& tech,
                                              double theta, const SignalRule& rule, double cap,
                                              const NoiseModel& noise, double effort, long draws,
                                              std::uint64_t seed, const LocalChoice& base_choice,
                                              double h) {
    if (draws < 1000)
        throw std::invalid_argument("effort_default_sensitivity: draws must be >= 1000");
    const double mu = gap_base(base_choice, p, tech, theta);
    const double rev_up = tech.revenue(effort + h, theta);
    const double rev_dn = tech.revenue(effort - h, theta);
    const double rev = tech.revenue(effort, theta);

    GapDraws d = GapDraws::draw(noise, draws, seed);
    const std::size_t n = d.eps.size();
    std::vector<double> v_fd(n), v_lam(n);
    for (std::size_t j = 0; j < n; ++j) {
        auto def_at = [&](double r) {
            double g_true = mu - r + d.eps[j];
            double g_hat = g_true + d.eta[j];
            return realized_payout(rule, cap, g_hat) < g_true ? 1.0 : 0.0;
        };
        v_fd[j] = (def_at(rev_up) - def_at(rev_dn)) / (2.0 * h);
        double g = mu - rev + d.eps[j];
        v_lam[j] = noise.eta.pdf(g - rule.beta(g));
    }

    DefaultSensitivity out;
    auto fd = mean_sd(v_fd);
    out.fd = fd.mean;
    out.fd_se = fd.sd / std::sqrt(static_cast<double>(n));
    auto lam = mean_sd(v_lam);
    double rp = tech.marginal_revenue(effort, theta);
    out.rprime_lambda = rp * lam.mean;
    out.rprime_lambda_se = rp * lam.sd / std::sqrt(static_cast<double>(n));
    out.pooled_se = std::sqrt(out.fd_se * out.fd_se + out.rprime_lambda_se * out.rprime_lambda_se);
    return out;
}

double aggregate_softness(const std::vector<double>& thetas, const std::vector<double>& pis,
                          const std::vector<double>& densities) {
    if (thetas.size() != pis.size() || thetas.size() != densities.size() || thetas.size() < 2)
        throw std::invalid_argument("aggregate_softness: mismatched grids");
    double acc = 0.0, mass = 0.0;
    for (std::size_t i = 1; i < thetas.size(); ++i) {
        double w = thetas[i] - thetas[i - 1];
        acc += 0.5 * w * (pis[i] * densities[i] + pis[i - 1] * densities[i - 1]);
        mass += 0.5 * w * (densities[i] + densities[i - 1]);
    }
    return mass > 0.0 ? acc / mass : 0.0;
}

} // namespace sbc
