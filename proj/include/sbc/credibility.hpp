#pragma once

#include "sbc/params.hpp"

namespace sbc {

struct CredibilityReport {
    double rho = 0.0;
    double rho_star = 0.0;
    bool sustainable = false;
    double deviation_gain_bound = 0.0;       // omega_T - omega_b (allocation-index units)
    double punishment_loss_bound = 0.0;      // kappa + gamma
    double conservative_bound_with_alpha = 0.0; // alpha + kappa + gamma
    double slack = 0.0; // rho/(1-rho)*(kappa+gamma) - (omega_T - omega_b)
};

/// Critical discount factor (omega_T - omega_b)/(kappa + gamma + omega_T - omega_b);
/// reported as 0 when omega_T <= omega_b (deviation gain bound nonpositive).
double rho_star(const ParamSet& p);

/// Evaluates the grim-trigger no-deviation inequality
///   omega_T - omega_b <= rho/(1-rho) * (kappa + gamma)
/// directly; boundary equality counts as sustainable.
CredibilityReport grim_trigger_sustainable(const ParamSet& p, double rho);

} // namespace sbc
