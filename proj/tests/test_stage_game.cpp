#include <doctest.h>

#include <stdexcept>

#include "fixtures.hpp"
#include "sbc/stage_game.hpp"

#include <cmath>

using namespace sbc;

TEST_CASE("fiscal gap term by term") {
    ParamSet p;
    p.tau = 0.2;
    p.g = 0.1;
    EffortTechnology tech{EffortTechnology::Family::Sqrt, 1.0, 0.0, 1.0, 0.0};
    LocalChoice c;
    c.e = 0.25; // R = 1*sqrt(0.25) = 0.5
    CHECK(fiscal_gap(c, p, tech, 0.3, 0.0) == doctest::Approx(0.2).epsilon(1e-14));

    ParamSet zero;
    zero.tau = 0.0;
    zero.g = 0.0;
    EffortTechnology tz{EffortTechnology::Family::Sqrt, 1.0, 0.0, 0.0, 0.0};
    CHECK(fiscal_gap(LocalChoice{}, zero, tz, 0.0, 0.0) == 0.0);

    // matching and debt terms: (1-s)I + rD on the cost side, sI + D on the
    // resource side
    ParamSet pm = p;
    pm.s = 0.5;
    pm.r = 0.1;
    LocalChoice cm = c;
    cm.I = 2.0;
    cm.D = 1.0;
    CHECK(fiscal_gap(cm, pm, tech, 0.3, 0.0) == doctest::Approx(-0.7).epsilon(1e-12));
}

TEST_CASE("effort FOC closed form when the default channel is off") {
    ParamSet p;
    p.phi_effort = 1.0;
    p.phi_default = 0.0;
    NoiseModel noise{NoiseDist::normal(0.1), NoiseDist::normal(0.1)};
    auto rule = SignalRule::threshold(0.5, 0.4);

    EffortTechnology t2{EffortTechnology::Family::Sqrt, 2.0, 0.0, 1.0, 0.0};
    auto s2 = solve_effort(p, t2, 0.5, rule, 1.0, noise, 2000, 7);
    CHECK(!s2.at_boundary);
    CHECK(std::abs(s2.e - 1.0) <= 1e-10);

    EffortTechnology t3{EffortTechnology::Family::Sqrt, 3.0, 0.0, 1.0, 0.0};
    auto s3 = solve_effort(p, t3, 0.5, rule, 1.0, noise, 2000, 7);
    CHECK(std::abs(s3.e - 2.25) <= 1e-10);
}

TEST_CASE("effort with an active default channel matches the grid-search oracle") {
    auto fx = fx::effort_oracle_fixture();
    const double theta = 0.5;
    auto sol = solve_effort(fx.params, fx.tech, theta, fx.rule, 1.0, fx.noise, 2000, 11);
    REQUIRE(!sol.at_boundary);

    // Exact objective in eta given the degenerate shock:
    //   R(e) - phi*e - varphi*P[G_hat > 0] + omega_b*min(level,cap)*P[G_hat >= t]
    const double base = gap_base({}, fx.params, fx.tech, theta);
    const double pay = std::min(fx.rule.level(), 1.0);
    auto objective = [&](double e) {
        double g = base - fx.tech.revenue(e, theta);
        double p_def = 1.0 - fx.noise.eta.cdf(-g);
        double p_fire = 1.0 - fx.noise.eta.cdf(fx.rule.location() - g);
        return fx.tech.revenue(e, theta) - fx.params.phi_effort * e -
               fx.params.phi_default * p_def + fx.params.omega_b * pay * p_fire;
    };
    double best_e = 0.0, best_v = -1e300;
    for (long k = 0; k <= 40000; ++k) {
        double e = k * 1e-4;
        double v = objective(e);
        if (v > best_v) {
            best_v = v;
            best_e = e;
        }
    }
    CHECK(std::abs(sol.e - best_e) <= 1e-3);
}

TEST_CASE("log revenue family can hit the zero-effort boundary") {
    ParamSet p;
    p.phi_effort = 2.0;
    p.phi_default = 0.0;
    NoiseModel noise{NoiseDist::normal(0.1), NoiseDist::normal(0.1)};
    EffortTechnology t{EffortTechnology::Family::Log, 1.0, 0.0, 0.0, 0.0};
    auto s = solve_effort(p, t, 0.5, SignalRule::threshold(1.0, 0.5), 1.0, noise, 2000, 3);
    CHECK(s.e == 0.0);
    CHECK(s.at_boundary);
}

TEST_CASE("expected payout under cap") {
    // P[G_hat >= 0.5] = 0.5 by symmetry: mean signaled gap exactly 0.5
    ParamSet p;
    NoiseModel noise{NoiseDist::normal(0.0), NoiseDist::normal(0.3)};
    EffortTechnology tech{EffortTechnology::Family::Sqrt, 1.0, 0.0, 1.5, 0.0};
    auto rule = SignalRule::threshold(0.5, 0.4);
    double effort = 1.0; // R = 1, mean gap = 1.5 - 1 = 0.5

    auto est = expected_payout_under_cap(p, tech, 0.5, rule, 1.0, noise, effort, 200000, 42);
    CHECK(std::abs(est.value - 0.2) <= 3.0 * est.se);

    CHECK(expected_payout_under_cap(p, tech, 0.5, rule, 0.0, noise, effort, 2000, 42).value ==
          0.0);

    auto clipped = expected_payout_under_cap(p, tech, 0.5, rule, 0.1, noise, effort, 200000, 42);
    CHECK(std::abs(clipped.value - 0.05) <= 3.0 * std::max(clipped.se, 1e-6));
}

TEST_CASE("grant crowd-out is null for a rare-rescue threshold rule") {
    // threshold deep in the signal's upper tail: rescue is a rare event
    auto fx = fx::margprob_fixture();
    fx.rule = SignalRule::threshold(3.5, 0.7);
    auto rep = simulate(fx.params, fx.tech, 0.5, fx.rule, 1.0, fx.noise, std::nullopt, 20000, 42);
    CHECK(std::abs(rep.lambda_T_hat - fx.params.omega_T) <= 3.0 * rep.lambda_T_hat_se + 1e-12);
}

TEST_CASE("hard budget: zero cap zeroes the payout and pi = P[G <= 0]") {
    ParamSet p;
    // bounded shock, gap strictly positive: default is certain
    NoiseModel noise{NoiseDist::uniform_box(0.2), NoiseDist::normal(0.1)};
    EffortTechnology tech{EffortTechnology::Family::Sqrt, 1.0, 0.0, 2.0, 0.0};
    LocalChoice pin;
    pin.e = 1.0; // R = 1, G = 1 + eps > 0 always
    auto rep = simulate(p, tech, 0.5, SignalRule::threshold(0.5, 0.4), 0.0, noise, pin, 20000, 9);
    CHECK(rep.btilde == 0.0);
    CHECK(rep.pi == 0.0);
    CHECK(rep.delta == 1.0);
}

TEST_CASE("linear branch crowd-out matches slope times branch occupancy") {
    auto fx = fx::linear_crowdout();
    const double cap = 1.5;
    auto rep = simulate(fx.params, fx.tech, 0.5, fx.rule, cap, fx.noise, std::nullopt, 200000, 42);
    double target = fx.params.omega_T -
                    fx.rule.interior_slope() * fx.params.omega_b * rep.linear_branch_prob;
    CHECK(std::abs(rep.lambda_T_hat - target) <= 3.0 * rep.lambda_T_hat_se + 1e-12);
}

TEST_CASE("marginal default probability: sign and threshold magnitude") {
    auto fx = fx::margprob_fixture();
    auto sens = effort_default_sensitivity(fx.params, fx.tech, 0.5, fx.rule, 1.0, fx.noise, 1.0,
                                           200000, 42);
    CHECK(sens.fd <= 0.0);
    CHECK(std::abs(sens.fd - (-sens.rprime_lambda)) <= 3.0 * sens.pooled_se);
}

TEST_CASE("effort is report independent under threshold rules") {
    auto fx = fx::margprob_fixture();
    auto lo = solve_effort(fx.params, fx.tech, 0.5, fx.rule, 0.4, fx.noise, 20000, 3);
    auto hi = solve_effort(fx.params, fx.tech, 0.5, fx.rule, 1.6, fx.noise, 20000, 3);
    auto rep_lo = simulate(fx.params, fx.tech, 0.5, fx.rule, 0.4, fx.noise, std::nullopt, 20000, 3);
    auto rep_hi = simulate(fx.params, fx.tech, 0.5, fx.rule, 1.6, fx.noise, std::nullopt, 20000, 3);
    REQUIRE(rep_lo.cap_bind_prob <= fx.params.eps_cap);
    REQUIRE(rep_hi.cap_bind_prob <= fx.params.eps_cap);
    CHECK(std::abs(lo.e - hi.e) <= 1e-12);
}

TEST_CASE("cap-slack audit flags configurations that bind often") {
    auto fx = fx::benchmark_screening();
    // type 0.9 fires with probability ~0.5; a cap below the rule level binds
    // whenever the rule fires
    auto rep = simulate(fx.params, fx.tech, 0.9, fx.rule, 0.1, fx.noise, std::nullopt, 20000, 5);
    CHECK(rep.cap_slack_violated);
    auto ok = simulate(fx.params, fx.tech, 0.6, fx.rule, 0.5, fx.noise, std::nullopt, 20000, 5);
    CHECK(!ok.cap_slack_violated);
}

TEST_CASE("simulation reports are bit-identical for a fixed seed") {
    auto fx = fx::benchmark_screening();
    auto a = simulate(fx.params, fx.tech, 0.7, fx.rule, 0.8, fx.noise, std::nullopt, 20000, 1234);
    auto b = simulate(fx.params, fx.tech, 0.7, fx.rule, 0.8, fx.noise, std::nullopt, 20000, 1234);
    CHECK(a.btilde == b.btilde);
    CHECK(a.delta == b.delta);
    CHECK(a.lambda_T_hat == b.lambda_T_hat);
    CHECK(a.Lambda == b.Lambda);
    CHECK(a.cap_bind_prob == b.cap_bind_prob);
    CHECK(a.e_star == b.e_star);
}

TEST_CASE("aggregate softness is a density-weighted trapezoid") {
    std::vector<double> thetas = {0.0, 0.5, 1.0};
    std::vector<double> pis = {0.0, 0.5, 1.0};
    std::vector<double> dens = {1.0, 1.0, 1.0};
    CHECK(aggregate_softness(thetas, pis, dens) == doctest::Approx(0.5));
}
