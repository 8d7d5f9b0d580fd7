#include "sbc/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sbc/io.hpp"

namespace sbc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kKnifeEdgeTol = 1e-12;

double clamp_cap(double raw, double b_bar) { return std::clamp(raw, 0.0, b_bar); }

// Hazard for internal grids: +inf where the survivor has vanished (finite
// upper support point), instead of the domain error the public op raises.
double hazard_or_inf(const TypeDistribution& d, double x) {
    double sbar = d.survivor(x);
    if (!(sbar > 0.0)) return kInf;
    return d.pdf(x) / sbar;
}

// Bisection for h(theta) = target on [lo, hi]; assumes h nondecreasing.
double bisect_hazard(const TypeDistribution& d, double target, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        double mid = 0.5 * (lo + hi);
        (d.hazard(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

} // namespace

std::string region_name(Region r) {
    switch (r) {
        case Region::NoTransfer: return "no-transfer";
        case Region::RisingCap: return "rising-cap";
        case Region::FlatCap: return "flat-cap";
    }
    return "?";
}

std::vector<double> MechanismSolution::thetas() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.theta);
    return out;
}

std::vector<double> MechanismSolution::caps() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.b_star);
    return out;
}

double MechanismSolution::cap_at(double theta) const {
    return interp(thetas(), caps(), theta);
}

double MechanismSolution::grant_at(double theta) const {
    std::vector<double> ts;
    ts.reserve(rows.size());
    for (const auto& r : rows) ts.push_back(r.t_star);
    return interp(thetas(), ts, theta);
}

IronedWeights iron_weights(const std::vector<double>& thetas, const std::vector<double>& values) {
    if (thetas.size() != values.size() || thetas.size() < 2)
        throw std::invalid_argument("iron_weights: need >= 2 matching nodes");
    const std::size_t n = values.size();

    // Cumulative curve W_k = sum_{i<k} v_i (unit cell widths; uniform grids).
    std::vector<double> W(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) W[i + 1] = W[i] + values[i];

    // Greatest convex minorant of (k, W_k): lower convex hull. Collinear
    // points stay on the hull so already-monotone stretches iron to
    // themselves cell by cell.
    std::vector<std::size_t> hull;
    hull.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        while (hull.size() >= 2) {
            std::size_t a = hull[hull.size() - 2], b = hull.back();
            // pop b iff slope(a,b) > slope(b,k), with slack so that exactly
            // affine stretches are not pooled by rounding noise
            double lhs = (W[b] - W[a]) * static_cast<double>(k - b);
            double rhs = (W[k] - W[b]) * static_cast<double>(b - a);
            double tol = 1e-12 * (std::abs(W[k]) + std::abs(W[b]) + 1.0) *
                         static_cast<double>(k - a);
            if (lhs <= rhs + tol) break;
            hull.pop_back();
        }
        hull.push_back(k);
    }

    IronedWeights out;
    out.thetas = thetas;
    out.raw = values;
    out.ironed.assign(n, 0.0);
    out.pooled.assign(n, false);
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        std::size_t a = hull[s], b = hull[s + 1];
        if (b - a == 1) {
            out.ironed[a] = values[a]; // single cell: exact identity
        } else {
            double avg = 0.0;
            for (std::size_t i = a; i < b; ++i) avg += values[i];
            avg /= static_cast<double>(b - a);
            for (std::size_t i = a; i < b; ++i) {
                out.ironed[i] = avg;
                out.pooled[i] = true;
            }
            out.any_pooled = true;
        }
    }
    return out;
}

IronedWeights iron_virtual_weight(const TypeDistribution& d, const ParamSet& p, int grid_size) {
    if (grid_size < 3) throw std::invalid_argument("iron_virtual_weight: grid_size must be >= 3");
    auto thetas = linspace(d.theta_lo(), d.grid_hi(), grid_size);
    std::vector<double> v(thetas.size());
    const double scale = p.gamma * p.omega_b / p.omega_T;
    // Above alpha + kappa*b_bar the weight saturates the statutory cap, so a
    // divergent hazard near a finite top is clamped there to keep the
    // cumulative curve finite.
    const double w_cap = p.alpha + p.kappa * p.b_bar;
    for (std::size_t i = 0; i < thetas.size(); ++i)
        v[i] = std::min(scale * hazard_or_inf(d, thetas[i]), w_cap);
    return iron_weights(thetas, v);
}

CutoffResult solve_cutoffs(const ParamSet& p, const TypeDistribution& d, int grid_size,
                           IroningMode ironing) {
    if (grid_size < 3) throw std::invalid_argument("solve_cutoffs: grid_size must be >= 3");
    const bool want_iron =
        ironing == IroningMode::Forced || (ironing == IroningMode::Auto && !d.ifr_claimed());
    if (!d.ifr_claimed() && ironing == IroningMode::Off)
        throw std::domain_error("distribution is not IFR: iron the virtual weight first "
                                "(iron_virtual_weight / IroningMode::Auto)");

    CutoffResult res;
    res.thetas = linspace(d.theta_lo(), d.grid_hi(), grid_size);
    const std::size_t n = res.thetas.size();
    res.caps.assign(n, 0.0);
    res.pooled.assign(n, false);

    const double sup_h = d.sup_hazard();
    res.no_bailout = std::isfinite(sup_h) &&
                     p.alpha * p.omega_T >= p.gamma * p.omega_b * sup_h - kKnifeEdgeTol;

    const double lam = p.omega_T;
    const double scale = p.gamma * p.omega_b / lam;

    std::vector<double> weight(n);
    if (want_iron) {
        auto iw = iron_virtual_weight(d, p, grid_size);
        weight = iw.ironed;
        for (std::size_t i = 0; i < n; ++i) res.pooled[i] = iw.pooled[i];
        res.ironed = true;
    } else {
        for (std::size_t i = 0; i < n; ++i) weight[i] = scale * hazard_or_inf(d, res.thetas[i]);
    }

    if (res.no_bailout) {
        res.theta_min = d.theta_hi();
        res.theta_dagger = d.theta_hi();
        return res; // caps identically zero
    }

    for (std::size_t i = 0; i < n; ++i)
        res.caps[i] = clamp_cap((weight[i] - p.alpha) / p.kappa, p.b_bar);

    // theta_min = inf{theta : b > 0}
    if (res.caps.front() > 0.0) {
        res.theta_min = res.thetas.front();
    } else {
        std::size_t i0 = 0;
        while (i0 < n && res.caps[i0] <= 0.0) ++i0;
        if (i0 == n) {
            // positive somewhere off-grid at most; treat as empty bailout region
            res.theta_min = d.theta_hi();
        } else if (res.ironed) {
            res.theta_min = res.thetas[i0]; // grid resolution on ironed weights
        } else {
            res.theta_min = bisect_hazard(d, p.alpha * lam / (p.gamma * p.omega_b),
                                          res.thetas[i0 - 1], res.thetas[i0]);
        }
    }

    // theta_dagger = inf{theta : b = b_bar}
    std::size_t i1 = 0;
    while (i1 < n && res.caps[i1] < p.b_bar) ++i1;
    if (i1 == n) {
        res.theta_dagger = d.theta_hi();
    } else if (i1 == 0) {
        res.theta_dagger = res.thetas.front();
    } else if (res.ironed) {
        res.theta_dagger = res.thetas[i1];
    } else {
        res.theta_dagger = bisect_hazard(d, (p.alpha + p.kappa * p.b_bar) * lam /
                                                (p.gamma * p.omega_b),
                                         res.thetas[i1 - 1], res.thetas[i1]);
    }
    if (res.theta_dagger < res.theta_min) res.theta_dagger = res.theta_min;
    return res;
}

MechanismSolution solve(const ParamSet& p, const TypeDistribution& d, const SignalRule& rule,
                        const EffortTechnology& tech, const NoiseModel& noise,
                        const SolveOptions& opts) {
    auto violations = validate_params(p);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "solve: invalid parameters:";
        for (const auto& v : violations) msg << " [" << v << "]";
        throw std::invalid_argument(msg.str());
    }

    CutoffResult cut = solve_cutoffs(p, d, opts.grid_size, opts.ironing);

    // Optional lambda_T(theta) substitution for linear-branch rules: estimate
    // omega_T - omega_b * m * P[cap slack and linear range] at the first-pass
    // caps and re-clamp.
    if (opts.estimate_lambda_for_linear && !rule.is_threshold()) {
        const double m = rule.interior_slope();
        for (std::size_t i = 0; i < cut.thetas.size(); ++i) {
            double cap = cut.caps[i];
            if (cap <= 0.0) continue;
            auto es = solve_effort(p, tech, cut.thetas[i], rule, cap, noise, opts.effort_draws,
                                   derive_seed(opts.seed, 0x3000 + i), opts.base_choice);
            GapDraws dr = GapDraws::draw(noise, opts.effort_draws,
                                         derive_seed(opts.seed, 0x4000 + i));
            double mu = gap_base(opts.base_choice, p, tech, cut.thetas[i]) -
                        tech.revenue(es.e, cut.thetas[i]);
            double q = 0.0;
            for (std::size_t j = 0; j < dr.eps.size(); ++j) {
                double g_hat = mu + dr.eps[j] + dr.eta[j];
                if (rule.slope_at(g_hat) > 0.0 && rule.beta(g_hat) < cap) q += 1.0;
            }
            q /= static_cast<double>(dr.eps.size());
            double lam_i = p.omega_T - p.omega_b * m * q;
            if (!(lam_i > 0.0)) lam_i = p.omega_T;
            double w = p.gamma * p.omega_b / lam_i * hazard_or_inf(d, cut.thetas[i]);
            cut.caps[i] = clamp_cap((w - p.alpha) / p.kappa, p.b_bar);
        }
    }

    MechanismSolution sol;
    sol.theta_min = cut.theta_min;
    sol.theta_dagger = cut.theta_dagger;
    sol.no_bailout = cut.no_bailout;
    sol.ironed = cut.ironed;

    const std::size_t n = cut.thetas.size();
    std::vector<double> btilde(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (cut.caps[i] <= 0.0) continue; // min{beta, 0} = 0 without sampling
        auto es = solve_effort(p, tech, cut.thetas[i], rule, cut.caps[i], noise,
                               opts.effort_draws, derive_seed(opts.seed, 0x1000 + i),
                               opts.base_choice);
        btilde[i] = expected_payout_under_cap(p, tech, cut.thetas[i], rule, cut.caps[i], noise,
                                              es.e, opts.draws, derive_seed(opts.seed, 0x2000 + i),
                                              opts.base_choice)
                        .value;
    }

    const double btilde_ref = cut.caps.front() > 0.0 ? btilde.front() : 0.0;
    auto grants = grant_schedule(p, btilde, btilde_ref);

    sol.rows.resize(n);
    double b_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = sol.rows[i];
        row.theta = cut.thetas[i];
        row.b_star = cut.caps[i];
        row.b_tilde = btilde[i];
        row.t_star = grants[i].t_star;
        row.ll_binding = grants[i].ll_binding;
        row.pooled = cut.pooled[i];
        row.region = cut.caps[i] <= 0.0
                         ? Region::NoTransfer
                         : (cut.caps[i] >= p.b_bar ? Region::FlatCap : Region::RisingCap);
        b_max = std::max(b_max, cut.caps[i]);
    }
    sol.b_max = b_max;
    return sol;
}

std::vector<GrantRow> grant_schedule(const ParamSet& p, const std::vector<double>& btilde,
                                     double btilde_ref) {
    std::vector<GrantRow> out(btilde.size());
    const double ratio = p.omega_T > 0.0 ? p.omega_b / p.omega_T : 0.0;
    for (std::size_t i = 0; i < btilde.size(); ++i) {
        double unclamped = -ratio * (btilde[i] - btilde_ref);
        out[i].t_star = std::max(0.0, unclamped);
        out[i].ll_binding = unclamped < 0.0;
    }
    return out;
}

ComparativeStatics comparative_statics(const ParamSet& p, const TypeDistribution& d) {
    ComparativeStatics cs;
    const double lam = p.omega_T;

    cs.b_max = (p.gamma * p.omega_b / lam - p.alpha) / p.kappa;
    cs.d_b_max_d_kappa = -(p.gamma * p.omega_b / lam - p.alpha) / (p.kappa * p.kappa);
    cs.d_b_max_d_lambda_T = -p.gamma * p.omega_b / (p.kappa * lam * lam);
    cs.d_b_max_d_gamma = p.omega_b / (p.kappa * lam);

    const double target = p.alpha * lam / (p.gamma * p.omega_b);
    const double lo = d.theta_lo(), hi = d.grid_hi();
    double h_lo = hazard_or_inf(d, lo), h_hi = hazard_or_inf(d, hi);
    if (!(h_lo < target) || !(h_hi > target)) return cs; // boundary: undefined, signaled by flag

    cs.theta_min = bisect_hazard(d, target, lo, hi);
    cs.hazard_slope = d.hazard_derivative(cs.theta_min);
    if (!(cs.hazard_slope > 0.0)) return cs;

    cs.theta_min_defined = true;
    const double inv = 1.0 / cs.hazard_slope;
    cs.d_theta_min_d_alpha = inv * lam / (p.gamma * p.omega_b);
    cs.d_theta_min_d_omega_b = -inv * p.alpha * lam / (p.gamma * p.omega_b * p.omega_b);
    cs.d_theta_min_d_lambda_T = inv * p.alpha / (p.gamma * p.omega_b);
    cs.d_theta_min_d_gamma = -inv * p.alpha * lam / (p.gamma * p.gamma * p.omega_b);
    return cs;
}

std::vector<double> variable_omega_cap(const std::function<double(double)>& omega_b_fn,
                                       const ParamSet& p, const std::vector<double>& thetas) {
    std::vector<double> out(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        double w = omega_b_fn(thetas[i]);
        if (!(w > 0.0))
            throw std::domain_error("variable_omega_cap: omega_b(theta) must be > 0");
        out[i] = clamp_cap((w - p.alpha) / p.kappa, p.b_bar);
    }
    return out;
}

std::string schedule_csv(const MechanismSolution& m) {
    std::ostringstream os;
    os << "theta,b_star,T_star,b_tilde,region,ll_binding\n";
    for (const auto& r : m.rows) {
        os << format_sig(r.theta) << ',' << format_sig(r.b_star) << ',' << format_sig(r.t_star)
           << ',' << format_sig(r.b_tilde) << ',' << region_name(r.region) << ','
           << (r.ll_binding ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string summary_json(const MechanismSolution& m) {
    std::ostringstream os;
    auto num = [](double x) {
        return std::isfinite(x) ? format_sig(x) : std::string("null");
    };
    os << "{\n"
       << "  \"theta_min\": " << num(m.theta_min) << ",\n"
       << "  \"theta_dagger\": " << num(m.theta_dagger) << ",\n"
       << "  \"b_max\": " << num(m.b_max) << ",\n"
       << "  \"no_bailout\": " << (m.no_bailout ? "true" : "false") << ",\n"
       << "  \"ironed\": " << (m.ironed ? "true" : "false") << "\n"
       << "}\n";
    return os.str();
}

} // namespace sbc
