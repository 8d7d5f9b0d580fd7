#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sbc/mechanism.hpp"

namespace sbc {

/// Per-true-type, all-reports grid evaluation of the reduced interim utility
///   U(report, theta) = omega_T * T(report) + omega_b * E[min{beta(G_hat|theta), b(report)}] + K(theta)
/// on common random numbers.
struct ICRow {
    double theta = 0.0;
    double best_report = 0.0;
    double gain = 0.0;      // max over reports of U(report) - U(truth)
    double tolerance = 0.0; // 5 * SE(best difference) + 1e-9
    double utility = 0.0;   // truthful U
    double x_index = 0.0;   // omega_T*T + omega_b*btilde at truth
};

struct ICReport {
    std::vector<ICRow> rows;
    double max_gain = 0.0;
    bool ic_pass = false;
    bool ir_pass = false;
    bool x_monotone = false;
    double envelope_max_abs_residual = 0.0;
    bool envelope_pass = false;
    bool pass = false; // ic && ir && monotone
    // full product grid, row-major over (true type, report), for inspection
    std::vector<double> utility_grid;
    std::vector<double> report_grid;
};

struct VerifierOptions {
    long draws = 200000;
    long effort_draws = 20000;
    std::uint64_t seed = 7;
    double k_base = 0.0;       // K(theta) = k_base + k_slope * theta
    double k_slope = 0.0;
    double reservation_utility = 0.0;
    double envelope_step = 1e-3;
    LocalChoice base_choice = {};
};

/// Per-theta argmin over cap_grid of the pointwise virtual objective
///   E[alpha*min{beta,b} + (kappa/2)*min{beta,b}^2 | theta]
///     - (gamma*omega_b/omega_T)*h(theta)*E[min{beta,b} | theta],
/// expectations by fixed-seed Monte Carlo. Ties break toward the smaller cap.
std::vector<double> brute_force_leader(const ParamSet& p, const TypeDistribution& d,
                                       const SignalRule& rule, const EffortTechnology& tech,
                                       const NoiseModel& noise,
                                       const std::vector<double>& theta_grid,
                                       const std::vector<double>& cap_grid,
                                       const VerifierOptions& opts = {});

ICReport check_ic_ir(const MechanismSolution& mech, const ParamSet& p,
                     const TypeDistribution& d, const SignalRule& rule,
                     const EffortTechnology& tech, const NoiseModel& noise,
                     const std::vector<double>& theta_grid, const VerifierOptions& opts = {});

struct EnvelopeRow {
    double theta = 0.0;
    double lhs = 0.0;      // finite-difference V'(theta) along the truthful diagonal
    double rhs = 0.0;      // omega_b * d/dtheta btilde(report fixed) + K'(theta)
    double residual = 0.0;
    double se = 0.0;
};

struct EnvelopeReport {
    std::vector<EnvelopeRow> rows;
    double max_abs_residual = 0.0;
    bool pass = false; // every |residual| <= 5*SE + 1e-9
};

EnvelopeReport check_envelope(const MechanismSolution& mech, const ParamSet& p,
                              const TypeDistribution& d, const SignalRule& rule,
                              const EffortTechnology& tech, const NoiseModel& noise,
                              const std::vector<double>& theta_grid,
                              const VerifierOptions& opts = {});

struct CapminRow {
    double b = 0.0;
    double lhs_mean = 0.0, rhs_mean = 0.0, se_mean = 0.0;
    bool pass_mean = false;
    double lhs_sq = 0.0, rhs_sq = 0.0, se_sq = 0.0;
    bool pass_sq = false;
};

/// Finite differences of E[min{Y,b}] and E[min{Y,b}^2] in b against the
/// tail-probability identities P[Y>=b] and 2b*P[Y>=b], within 3 pooled SE.
std::vector<CapminRow> capmin_derivative_check(const std::function<double(RandomStream&)>& sample_y,
                                               const std::vector<double>& caps, long draws,
                                               std::uint64_t seed, double fd_step = 1e-3);

// Canned adversarial perturbations for checker-power tests.
MechanismSolution perturb_grant_tilt(const MechanismSolution& m, double slope);
MechanismSolution perturb_cap(const MechanismSolution& m, double theta_at, double new_cap);

} // namespace sbc
