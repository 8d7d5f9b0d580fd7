#pragma once

#include <string>
#include <vector>

namespace sbc {

/// Scalar model parameters. Cost side: payout cost alpha*x + (kappa/2)*x^2,
/// grant cost gamma per dollar. Utility side: omega_T per grant dollar,
/// omega_b per realized payout dollar.
struct ParamSet {
    double alpha = 1.0;       // linear payout cost per dollar
    double kappa = 1.0;       // quadratic payout cost coefficient
    double gamma = 1.0;       // marginal cost of a grant dollar
    double omega_T = 1.0;     // marginal utility of the grant
    double omega_b = 1.0;     // marginal utility of the realized payout
    double b_bar = 1.0;       // statutory cap (dollars)
    double phi_effort = 1.0;  // marginal disutility of effort
    double phi_default = 0.0; // welfare loss on default
    double chi = 1.0;         // convex residual-gap loss (discretionary rescue)
    double s = 0.0;           // matching share on capital outlays, in [0,1)
    double r = 0.0;           // debt-service factor
    double tau = 0.0;         // unconditional operating grant
    double g = 0.0;           // block capital grant
    double rho = 0.5;         // discount factor, in (0,1)
    double eps_cap = 0.05;    // cap-binding probability bound
};

/// Empty iff every invariant holds; each violation names the field and rule.
std::vector<std::string> validate_params(const ParamSet& p);

/// Non-fatal flags (e.g. omega_T < omega_b, under which rho* degenerates).
std::vector<std::string> param_warnings(const ParamSet& p);

} // namespace sbc
