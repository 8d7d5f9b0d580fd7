#pragma once

// Shared scenario fixtures. The "benchmark" family keeps one parameter set
// (alpha=2, kappa=1, gamma=omega_T=omega_b=1, b_bar=2 on uniform[0,1] types,
// so theta_min=0.5, theta_dagger=0.75) and varies the gap/rule environment:
//   screening: payouts ramp in theta with cap-slack everywhere the rule fires
//   oracle:    the rule fires almost surely and its level sits at b_bar, so
//              the per-type leader objective is a clean quadratic in the cap

#include "sbc/config.hpp"
#include "sbc/mechanism.hpp"

namespace fx {

struct Scenario {
    sbc::ParamSet params;
    sbc::TypeDistribution dist = sbc::TypeDistribution::uniform(0.0, 1.0);
    sbc::NoiseModel noise;
    sbc::EffortTechnology tech;
    sbc::SignalRule rule = sbc::SignalRule::threshold(0.5, 0.4);
};

inline sbc::ParamSet benchmark_params() {
    sbc::ParamSet p;
    p.alpha = 2.0;
    p.kappa = 1.0;
    p.gamma = 1.0;
    p.omega_T = 1.0;
    p.omega_b = 1.0;
    p.b_bar = 2.0;
    p.phi_effort = 1.0;
    p.phi_default = 0.0;
    p.chi = 1.0;
    p.s = 0.0;
    p.r = 0.0;
    p.tau = 0.2;
    p.g = 0.1;
    p.rho = 0.5;
    p.eps_cap = 0.05;
    return p;
}

// e* = 1 and R = 2 at these settings, so the mean pre-noise gap is
// C0(theta) - 2.3 = theta - 0.4.
inline Scenario benchmark_screening() {
    Scenario s;
    s.params = benchmark_params();
    s.noise.epsilon = sbc::NoiseDist::normal(0.05);
    s.noise.eta = sbc::NoiseDist::normal(0.05);
    s.tech.family = sbc::EffortTechnology::Family::Sqrt;
    s.tech.a0 = 2.0;
    s.tech.a1 = 0.0;
    s.tech.c0_base = 1.9;
    s.tech.c0_slope = 1.0;
    s.rule = sbc::SignalRule::threshold(0.5, 0.4);
    return s;
}

// Mean signaled gap 3.0 for every type, rule fires at 2.0 with level b_bar.
inline Scenario benchmark_oracle() {
    Scenario s = benchmark_screening();
    s.tech.c0_base = 5.3;
    s.tech.c0_slope = 0.0;
    s.rule = sbc::SignalRule::threshold(2.0, 2.0);
    return s;
}

// Broad shocks: payouts reachable from most types, caps matter. Used to give
// the IC checker something it can actually catch a cap spike on.
inline Scenario benchmark_broad() {
    Scenario s = benchmark_screening();
    s.noise.epsilon = sbc::NoiseDist::normal(0.6);
    return s;
}

// Constant hazard 1, flat interior cap (gamma*omega_b/omega_T - alpha)/kappa = 0.5.
inline Scenario exponential_flat() {
    Scenario s;
    s.params = benchmark_params();
    s.params.alpha = 0.5;
    s.params.b_bar = 10.0;
    s.dist = sbc::TypeDistribution::exponential_unbounded(0.0, 1.0);
    s.noise.epsilon = sbc::NoiseDist::normal(0.05);
    s.noise.eta = sbc::NoiseDist::normal(0.05);
    s.tech.a0 = 2.0;
    s.tech.c0_base = 5.3;
    s.tech.c0_slope = 0.0;
    s.rule = sbc::SignalRule::threshold(2.0, 2.0);
    return s;
}

// alpha*omega_T == gamma*omega_b*sup h exactly: the knife-edge tie.
inline Scenario exponential_knife_edge() {
    Scenario s = exponential_flat();
    s.params.alpha = 1.0;
    return s;
}

// Non-IFR hazard (rises to theta=1, then falls). Payouts ramp high enough in
// theta that every firing type's cap saturates the rule level.
inline Scenario nonifr_loglogistic() {
    Scenario s;
    s.params = benchmark_params();
    s.params.alpha = 0.1;
    s.params.b_bar = 2.0;
    s.dist = sbc::TypeDistribution::log_logistic(1.0, 2.0, /*ifr_claimed=*/false);
    s.noise.epsilon = sbc::NoiseDist::normal(0.035);
    s.noise.eta = sbc::NoiseDist::normal(0.035);
    s.tech.a0 = 2.0;
    s.tech.c0_base = 2.342;
    s.tech.c0_slope = 0.6;
    s.rule = sbc::SignalRule::threshold(0.4, 0.25);
    return s;
}

// Linear-branch rule with a busy interior branch; the crowd-out weight drops
// below omega_T by slope * branch occupancy.
inline Scenario linear_crowdout() {
    Scenario s;
    s.params = benchmark_params();
    s.params.omega_b = 0.8;
    s.params.phi_default = 0.0;
    s.dist = sbc::TypeDistribution::uniform(0.0, 1.0);
    s.noise.epsilon = sbc::NoiseDist::normal(0.3);
    s.noise.eta = sbc::NoiseDist::normal(0.1);
    s.tech.a0 = 2.0;
    s.tech.c0_base = 2.8;
    s.tech.c0_slope = 0.0;
    s.rule = sbc::SignalRule::linear_branch(0.2, 0.5, 2.0);
    return s;
}

// Rare-rescue threshold scenario at one type: mean gap 0, audit noise small,
// threshold deep in the upper tail.
inline Scenario margprob_fixture() {
    Scenario s;
    s.params = benchmark_params();
    s.params.phi_default = 0.5;
    s.noise.epsilon = sbc::NoiseDist::normal(1.0);
    s.noise.eta = sbc::NoiseDist::normal(0.05);
    s.tech.a0 = 2.0;
    s.tech.c0_base = 2.3;
    s.tech.c0_slope = 0.0;
    s.rule = sbc::SignalRule::threshold(2.5, 0.2);
    return s;
}

// Deterministic shock, sizable audit noise: the effort FOC has a closed
// grid-search oracle.
inline Scenario effort_oracle_fixture() {
    Scenario s;
    s.params = benchmark_params();
    s.params.phi_default = 1.0;
    s.params.tau = 0.0;
    s.params.g = 0.0;
    s.noise.epsilon = sbc::NoiseDist::normal(0.0);
    s.noise.eta = sbc::NoiseDist::normal(0.5);
    s.tech.a0 = 2.0;
    s.tech.c0_base = 3.158;
    s.tech.c0_slope = 0.0;
    s.rule = sbc::SignalRule::threshold(1.75, 0.2);
    return s;
}

inline sbc::SolveOptions fast_solve_options(long draws = 20000) {
    sbc::SolveOptions o;
    o.draws = draws;
    o.effort_draws = 5000;
    o.seed = 42;
    return o;
}

} // namespace fx
