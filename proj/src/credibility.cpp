#include "sbc/credibility.hpp"

#include <stdexcept>

namespace sbc {

double rho_star(const ParamSet& p) {
    double wedge = p.omega_T - p.omega_b;
    if (wedge <= 0.0) return 0.0;
    return wedge / (p.kappa + p.gamma + wedge);
}

CredibilityReport grim_trigger_sustainable(const ParamSet& p, double rho) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::domain_error("grim_trigger_sustainable: rho must lie in (0,1)");
    CredibilityReport r;
    r.rho = rho;
    r.rho_star = rho_star(p);
    r.deviation_gain_bound = p.omega_T - p.omega_b;
    r.punishment_loss_bound = p.kappa + p.gamma;
    r.conservative_bound_with_alpha = p.alpha + p.kappa + p.gamma;
    r.slack = rho / (1.0 - rho) * r.punishment_loss_bound - r.deviation_gain_bound;
    // The no-deviation inequality is equivalent to rho >= rho*; comparing in
    // threshold form keeps weak boundary equality sustainable even when rho*
    // itself is not representable (e.g. 1/3).
    r.sustainable = rho >= r.rho_star;
    return r;
}

} // namespace sbc
