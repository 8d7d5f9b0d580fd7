#include "sbc/params.hpp"

namespace sbc {

std::vector<std::string> validate_params(const ParamSet& p) {
    std::vector<std::string> v;
    if (!(p.alpha >= 0.0)) v.push_back("alpha must be >= 0");
    if (!(p.kappa > 0.0)) v.push_back("kappa must be > 0");
    if (!(p.gamma > 0.0)) v.push_back("gamma must be > 0");
    if (!(p.omega_T > 0.0)) v.push_back("omega_T must be > 0");
    if (!(p.omega_b > 0.0)) v.push_back("omega_b must be > 0");
    if (!(p.b_bar >= 0.0)) v.push_back("b_bar must be >= 0");
    if (!(p.phi_effort > 0.0)) v.push_back("phi_effort must be > 0");
    if (!(p.phi_default >= 0.0)) v.push_back("phi_default must be >= 0");
    if (!(p.chi > 0.0)) v.push_back("chi must be > 0");
    if (!(p.s >= 0.0 && p.s < 1.0)) v.push_back("s must lie in [0,1)");
    if (!(p.r >= 0.0)) v.push_back("r must be >= 0");
    if (!(p.rho > 0.0 && p.rho < 1.0)) v.push_back("rho must lie in (0,1)");
    if (!(p.eps_cap > 0.0 && p.eps_cap < 1.0)) v.push_back("eps_cap must lie in (0,1)");
    return v;
}

std::vector<std::string> param_warnings(const ParamSet& p) {
    std::vector<std::string> w;
    if (p.omega_T < p.omega_b)
        w.push_back("omega_T < omega_b: grants are worth less than payouts; "
                    "the credibility threshold rho* degenerates to 0");
    return w;
}

} // namespace sbc
