#include "sbc/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sbc {

namespace {

// Per-type signal draws G_hat | theta at the solved effort, on a shared
// (eps, eta) block so that comparisons across types and reports use common
// random numbers.
std::vector<double> signal_draws(const ParamSet& p, const TypeDistribution&,
                                 const SignalRule& rule, const EffortTechnology& tech,
                                 const NoiseModel& noise, double theta, double cap_for_effort,
                                 const GapDraws& shared, const VerifierOptions& opts) {
    auto es = solve_effort(p, tech, theta, rule, cap_for_effort, noise, opts.effort_draws,
                           derive_seed(opts.seed, 0xE0), opts.base_choice);
    double mu = gap_base(opts.base_choice, p, tech, theta) - tech.revenue(es.e, theta);
    std::vector<double> g(shared.eps.size());
    for (std::size_t j = 0; j < g.size(); ++j) g[j] = mu + shared.eps[j] + shared.eta[j];
    return g;
}

} // namespace

std::vector<double> brute_force_leader(const ParamSet& p, const TypeDistribution& d,
                                       const SignalRule& rule, const EffortTechnology& tech,
                                       const NoiseModel& noise,
                                       const std::vector<double>& theta_grid,
                                       const std::vector<double>& cap_grid,
                                       const VerifierOptions& opts) {
    if (theta_grid.empty() || cap_grid.empty())
        throw std::invalid_argument("brute_force_leader: empty grid");

    std::vector<double> argmins(theta_grid.size(), 0.0);
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        const double theta = theta_grid[i];
        // virtual weight, saturated where the hazard diverges at a finite top
        // (any weight above alpha + kappa*b_bar selects the statutory cap)
        double sbar = d.survivor(theta);
        double hz = sbar > 0.0 ? d.pdf(theta) / sbar
                               : std::numeric_limits<double>::infinity();
        const double v = std::min(p.gamma * p.omega_b / p.omega_T * hz,
                                  p.alpha + p.kappa * p.b_bar + 1.0);

        auto es = solve_effort(p, tech, theta, rule, cap_grid.back(), noise, opts.effort_draws,
                               derive_seed(opts.seed, 0xB000 + i), opts.base_choice);
        GapDraws dr = GapDraws::draw(noise, opts.draws, derive_seed(opts.seed, 0xC000 + i));
        const double mu = gap_base(opts.base_choice, p, tech, theta) - tech.revenue(es.e, theta);

        std::vector<double> y(dr.eps.size());
        for (std::size_t j = 0; j < y.size(); ++j)
            y[j] = rule.beta(mu + dr.eps[j] + dr.eta[j]);
        std::sort(y.begin(), y.end());

        // prefix sums over the sorted payouts: E[min{Y,b}] and E[min{Y,b}^2]
        // for every cap in one pass each
        std::vector<double> s1(y.size() + 1, 0.0), s2(y.size() + 1, 0.0);
        for (std::size_t j = 0; j < y.size(); ++j) {
            s1[j + 1] = s1[j] + y[j];
            s2[j + 1] = s2[j] + y[j] * y[j];
        }
        const double n = static_cast<double>(y.size());

        double best = std::numeric_limits<double>::infinity();
        double best_cap = cap_grid.front();
        for (double b : cap_grid) {
            std::size_t k = static_cast<std::size_t>(
                std::upper_bound(y.begin(), y.end(), b) - y.begin());
            double tail = n - static_cast<double>(k);
            double e1 = (s1[k] + b * tail) / n;
            double e2 = (s2[k] + b * b * tail) / n;
            double objective = p.alpha * e1 + 0.5 * p.kappa * e2 - v * e1;
            if (objective < best) { // strict: ties keep the smaller cap
                best = objective;
                best_cap = b;
            }
        }
        argmins[i] = best_cap;
    }
    return argmins;
}

ICReport check_ic_ir(const MechanismSolution& mech, const ParamSet& p, const TypeDistribution& d,
                     const SignalRule& rule, const EffortTechnology& tech,
                     const NoiseModel& noise, const std::vector<double>& theta_grid,
                     const VerifierOptions& opts) {
    if (theta_grid.empty()) throw std::invalid_argument("check_ic_ir: empty theta grid");
    const std::size_t T = theta_grid.size();
    const GapDraws shared = GapDraws::draw(noise, opts.draws, derive_seed(opts.seed, 0xA11));
    const double n = static_cast<double>(shared.eps.size());

    std::vector<double> caps(T), grants(T);
    for (std::size_t r = 0; r < T; ++r) {
        caps[r] = mech.cap_at(theta_grid[r]);
        grants[r] = mech.grant_at(theta_grid[r]);
    }

    ICReport rep;
    rep.rows.resize(T);
    rep.report_grid = theta_grid;
    rep.utility_grid.assign(T * T, 0.0);

    bool ic_ok = true, ir_ok = true;
    double max_gain = -std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i < T; ++i) {
        const double theta = theta_grid[i];
        auto g = signal_draws(p, d, rule, tech, noise, theta, caps[i], shared, opts);
        std::vector<double> y(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) y[j] = rule.beta(g[j]);

        // truthful b_tilde
        double bt_true = 0.0;
        for (double yj : y) bt_true += std::min(yj, caps[i]);
        bt_true /= n;
        const double k_theta = opts.k_base + opts.k_slope * theta;
        const double u_true = p.omega_T * grants[i] + p.omega_b * bt_true + k_theta;

        double best_gain = 0.0, best_tol = 0.0, best_report = theta;
        for (std::size_t r = 0; r < T; ++r) {
            double sum = 0.0, sumsq = 0.0;
            for (double yj : y) {
                double diff = std::min(yj, caps[r]) - std::min(yj, caps[i]);
                sum += diff;
                sumsq += diff * diff;
            }
            double mean_diff = sum / n;
            double var = std::max(0.0, (sumsq - n * mean_diff * mean_diff) / (n - 1.0));
            double se = p.omega_b * std::sqrt(var / n);
            double gain = p.omega_T * (grants[r] - grants[i]) + p.omega_b * mean_diff;
            rep.utility_grid[i * T + r] =
                p.omega_T * grants[r] + p.omega_b * (bt_true + mean_diff) + k_theta;
            if (gain > best_gain) {
                best_gain = gain;
                best_tol = 5.0 * se + 1e-9;
                best_report = theta_grid[r];
            }
            if (gain > 5.0 * se + 1e-9) ic_ok = false;
        }

        auto& row = rep.rows[i];
        row.theta = theta;
        row.best_report = best_report;
        row.gain = best_gain;
        row.tolerance = best_tol;
        row.utility = u_true;
        row.x_index = p.omega_T * grants[i] + p.omega_b * bt_true;
        max_gain = std::max(max_gain, best_gain);
        if (u_true < opts.reservation_utility - 1e-12) ir_ok = false;
    }

    rep.max_gain = max_gain;
    rep.ic_pass = ic_ok;
    rep.ir_pass = ir_ok;

    rep.x_monotone = true;
    for (std::size_t i = 1; i < T; ++i) {
        double slack = 1e-12 * std::max(1.0, std::abs(rep.rows[i - 1].x_index));
        if (rep.rows[i].x_index < rep.rows[i - 1].x_index - slack) rep.x_monotone = false;
    }

    auto env = check_envelope(mech, p, d, rule, tech, noise, theta_grid, opts);
    rep.envelope_max_abs_residual = env.max_abs_residual;
    rep.envelope_pass = env.pass;

    rep.pass = rep.ic_pass && rep.ir_pass && rep.x_monotone;
    return rep;
}

EnvelopeReport check_envelope(const MechanismSolution& mech, const ParamSet& p,
                              const TypeDistribution& d, const SignalRule& rule,
                              const EffortTechnology& tech, const NoiseModel& noise,
                              const std::vector<double>& theta_grid,
                              const VerifierOptions& opts) {
    EnvelopeReport rep;
    const GapDraws shared = GapDraws::draw(noise, opts.draws, derive_seed(opts.seed, 0xE57));
    const double n = static_cast<double>(shared.eps.size());
    const double h = opts.envelope_step;

    const double lo = d.theta_lo(), hi = d.grid_hi();
    bool all_pass = true;

    for (double theta : theta_grid) {
        if (theta - h < lo || theta + h > hi) continue;
        double cap_up = mech.cap_at(theta + h), cap_dn = mech.cap_at(theta - h);
        double cap_fx = mech.cap_at(theta);
        double t_up = mech.grant_at(theta + h), t_dn = mech.grant_at(theta - h);

        auto g_up = signal_draws(p, d, rule, tech, noise, theta + h, cap_up, shared, opts);
        auto g_dn = signal_draws(p, d, rule, tech, noise, theta - h, cap_dn, shared, opts);

        double sum = 0.0, sumsq = 0.0;  // residual contributions per draw
        double lhs_b = 0.0, rhs_b = 0.0;
        for (std::size_t j = 0; j < g_up.size(); ++j) {
            double yu = rule.beta(g_up[j]), yd = rule.beta(g_dn[j]);
            double diag = std::min(yu, cap_up) - std::min(yd, cap_dn);
            double fixed = std::min(yu, cap_fx) - std::min(yd, cap_fx);
            lhs_b += diag;
            rhs_b += fixed;
            double rj = p.omega_b * (diag - fixed) / (2.0 * h);
            sum += rj;
            sumsq += rj * rj;
        }
        double k_term = opts.k_slope; // affine K: exact derivative
        EnvelopeRow row;
        row.theta = theta;
        row.lhs = (p.omega_T * (t_up - t_dn) + p.omega_b * lhs_b / n) / (2.0 * h) + k_term;
        row.rhs = p.omega_b * rhs_b / n / (2.0 * h) + k_term;
        double mean_r = sum / n;
        double var = std::max(0.0, (sumsq - n * mean_r * mean_r) / (n - 1.0));
        row.se = std::sqrt(var / n);
        row.residual = row.lhs - row.rhs;
        if (std::abs(row.residual) > 5.0 * row.se + 1e-9) all_pass = false;
        rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(row.residual));
        rep.rows.push_back(row);
    }
    rep.pass = all_pass;
    return rep;
}

std::vector<CapminRow> capmin_derivative_check(
    const std::function<double(RandomStream&)>& sample_y, const std::vector<double>& caps,
    long draws, std::uint64_t seed, double fd_step) {
    if (draws < 1000) throw std::invalid_argument("capmin_derivative_check: draws must be >= 1000");
    RandomStream rs(seed);
    std::vector<double> y(static_cast<std::size_t>(draws));
    for (auto& v : y) v = sample_y(rs);
    const double n = static_cast<double>(y.size());
    const double dstep = fd_step;

    std::vector<CapminRow> rows;
    rows.reserve(caps.size());
    for (double b : caps) {
        CapminRow row;
        row.b = b;
        // central difference in b; one-sided with a tiny step at the b = 0
        // boundary, where min{Y, b - d} would leave the cap's domain
        const bool one_sided = b < dstep;
        const double step = one_sided ? 1e-6 : dstep;
        const double width = one_sided ? step : 2.0 * step;
        double s_l1 = 0, s_r1 = 0, s_d1 = 0, s_d1sq = 0;
        double s_l2 = 0, s_r2 = 0, s_d2 = 0, s_d2sq = 0;
        for (double yj : y) {
            double up = std::min(yj, b + step);
            double dn = std::min(yj, one_sided ? b : b - step);
            double l1 = (up - dn) / width;
            double r1 = yj >= b ? 1.0 : 0.0;
            double l2 = (up * up - dn * dn) / width;
            double r2 = 2.0 * b * r1;
            s_l1 += l1;
            s_r1 += r1;
            s_d1 += l1 - r1;
            s_d1sq += (l1 - r1) * (l1 - r1);
            s_l2 += l2;
            s_r2 += r2;
            s_d2 += l2 - r2;
            s_d2sq += (l2 - r2) * (l2 - r2);
        }
        auto finish = [&](double sl, double sr, double sd, double sdsq, double& lhs, double& rhs,
                          double& se, bool& pass) {
            lhs = sl / n;
            rhs = sr / n;
            double mean_d = sd / n;
            double var = std::max(0.0, (sdsq - n * mean_d * mean_d) / (n - 1.0));
            se = std::sqrt(var / n);
            pass = std::abs(mean_d) <= 3.0 * se + 1e-12;
        };
        finish(s_l1, s_r1, s_d1, s_d1sq, row.lhs_mean, row.rhs_mean, row.se_mean, row.pass_mean);
        finish(s_l2, s_r2, s_d2, s_d2sq, row.lhs_sq, row.rhs_sq, row.se_sq, row.pass_sq);
        rows.push_back(row);
    }
    return rows;
}

MechanismSolution perturb_grant_tilt(const MechanismSolution& m, double slope) {
    MechanismSolution out = m;
    for (auto& r : out.rows) r.t_star += slope * r.theta;
    return out;
}

MechanismSolution perturb_cap(const MechanismSolution& m, double theta_at, double new_cap) {
    MechanismSolution out = m;
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
        double dist = std::abs(out.rows[i].theta - theta_at);
        if (dist < best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    out.rows[best].b_star = new_cap;
    return out;
}

} // namespace sbc
