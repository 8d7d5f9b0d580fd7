#pragma once

#include <string>

namespace sbc {

/// Own-source revenue technology R(e, theta) with scale a(theta) = a0 + a1*theta,
/// plus the reduced pre-bailout cost block C0(theta) = c0 + c1*theta that absorbs
/// the optimized service/investment/debt choices.
struct EffortTechnology {
    enum class Family { Sqrt, Log }; // a*sqrt(e) or a*ln(1+e)

    Family family = Family::Sqrt;
    double a0 = 1.0;
    double a1 = 0.0;
    double c0_base = 0.0;
    double c0_slope = 0.0;

    double scale(double theta) const;
    double revenue(double e, double theta) const;
    /// dR/de; +inf at e = 0 for the sqrt family.
    double marginal_revenue(double e, double theta) const;
    double reduced_cost(double theta) const { return c0_base + c0_slope * theta; }
};

std::string technology_family_name(EffortTechnology::Family f);

} // namespace sbc
