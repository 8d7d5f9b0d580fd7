#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sbc/noise.hpp"
#include "sbc/params.hpp"
#include "sbc/signal_rule.hpp"
#include "sbc/technology.hpp"

namespace sbc {

struct LocalChoice {
    double e = 0.0; // effort
    double q = 0.0; // service level (absorbed into the reduced cost)
    double I = 0.0; // capital investment
    double D = 0.0; // debt
};

/// Pre-shock part of the cash-flow gap: everything except -R(e,theta) + eps.
double gap_base(const LocalChoice& choice, const ParamSet& p, const EffortTechnology& tech,
                double theta);

/// G = [C0 + (1-s)I + rD] - [R(e,theta) + tau + g + sI + D] + eps.
double fiscal_gap(const LocalChoice& choice, const ParamSet& p, const EffortTechnology& tech,
                  double theta, double eps);

/// One block of common random numbers, paired (eps_j, eta_j).
struct GapDraws {
    std::vector<double> eps;
    std::vector<double> eta;
    static GapDraws draw(const NoiseModel& noise, long n, std::uint64_t seed);
};

struct EffortSolution {
    double e = 0.0;
    bool at_boundary = false;
    double foc_residual = 0.0;
    int iterations = 0;
};

/// Root of the interior effort FOC
///   R'_e(e) * {1 + phi_default * Lambda(e) - omega_b * E[beta'(G_hat) 1{beta < cap}]} = phi_effort
/// by bisection on [0, e_hi]. Lambda(e) is the density of the audit noise at
/// the pre-noise default margin, E_eps[f_eta(G - beta(G))]; for threshold
/// rules the beta' term is dropped exactly. Expectations reuse one block of
/// common random numbers across iterates. Without a sign change on the
/// bracket the better endpoint is returned with at_boundary set.
EffortSolution solve_effort(const ParamSet& p, const EffortTechnology& tech, double theta,
                            const SignalRule& rule, double cap, const NoiseModel& noise,
                            long draws, std::uint64_t seed,
                            const LocalChoice& base_choice = {}, double e_hi = 100.0);

struct Estimate {
    double value = 0.0;
    double se = 0.0;
};

/// b_tilde = E[min{beta(G_hat), cap} | theta] by Monte Carlo at a given effort.
Estimate expected_payout_under_cap(const ParamSet& p, const EffortTechnology& tech, double theta,
                                   const SignalRule& rule, double cap, const NoiseModel& noise,
                                   double effort, long draws, std::uint64_t seed,
                                   const LocalChoice& base_choice = {});

struct SimulationReport {
    double theta = 0.0;
    double cap = 0.0;
    double e_star = 0.0;
    bool effort_at_boundary = false;

    double btilde = 0.0, btilde_se = 0.0;          // E[min{beta(G_hat), cap}]
    double expected_p = 0.0, expected_p_se = 0.0;  // E[realized payout], for comparison
    double delta = 0.0, delta_se = 0.0;            // P[p < G]
    double pi = 0.0, pi_se = 0.0;                  // P[p >= G]
    double lambda_T_hat = 0.0, lambda_T_hat_se = 0.0;
    double Lambda = 0.0, Lambda_se = 0.0;          // E_eps[f_eta(G - beta(G))]
    double cap_bind_prob = 0.0, cap_bind_prob_se = 0.0;
    bool cap_slack_violated = false;               // cap_bind_prob > eps_cap
    double linear_branch_prob = 0.0;               // P[cap slack and on the linear branch]

    long draws = 0;
    std::uint64_t seed = 0;
};

/// Monte-Carlo stage-game report at one type. Effort is solved internally
/// unless choice_overrides pins it. lambda_T_hat is the marginal interim
/// utility of a grant dollar, omega_T + omega_b * dE[p]/dtau, estimated by a
/// central difference with common random numbers and step h = 0.01.
SimulationReport simulate(const ParamSet& p, const EffortTechnology& tech, double theta,
                          const SignalRule& rule, double cap, const NoiseModel& noise,
                          const std::optional<LocalChoice>& choice_overrides, long draws,
                          std::uint64_t seed, long effort_draws = 20000);

struct DefaultSensitivity {
    double fd = 0.0;       // central difference of delta in effort, CRN, h = 0.02
    double fd_se = 0.0;
    double rprime_lambda = 0.0; // R'_e(e) * Lambda
    double rprime_lambda_se = 0.0;
    double pooled_se = 0.0;
};

/// Finite-difference dP[p < G]/de against the analytic -R'_e * Lambda.
DefaultSensitivity effort_default_sensitivity(const ParamSet& p, const EffortTechnology& tech,
                                              double theta, const SignalRule& rule, double cap,
                                              const NoiseModel& noise, double effort, long draws,
                                              std::uint64_t seed,
                                              const LocalChoice& base_choice = {},
                                              double h = 0.02);

/// Aggregate softness: trapezoid integral of per-type pi against f(theta).
double aggregate_softness(const std::vector<double>& thetas, const std::vector<double>& pis,
                          const std::vector<double>& densities);

} // namespace sbc
