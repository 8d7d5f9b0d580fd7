#include "sbc/technology.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sbc {

double EffortTechnology::scale(double theta) const {
    double a = a0 + a1 * theta;
    if (!(a > 0.0))
        throw std::domain_error("EffortTechnology: scale a(theta) must be > 0");
    return a;
}

double EffortTechnology::revenue(double e, double theta) const {
    if (e < 0.0) throw std::domain_error("EffortTechnology: effort must be >= 0");
    switch (family) {
        case Family::Sqrt: return scale(theta) * std::sqrt(e);
        case Family::Log: return scale(theta) * std::log1p(e);
    }
    return 0.0;
}

double EffortTechnology::marginal_revenue(double e, double theta) const {
    if (e < 0.0) throw std::domain_error("EffortTechnology: effort must be >= 0");
    switch (family) {
        case Family::Sqrt:
            if (e == 0.0) return std::numeric_limits<double>::infinity();
            return 0.5 * scale(theta) / std::sqrt(e);
        case Family::Log:
            return scale(theta) / (1.0 + e);
    }
    return 0.0;
}

std::string technology_family_name(EffortTechnology::Family f) {
    return f == EffortTechnology::Family::Sqrt ? "sqrt" : "log";
}

} // namespace sbc
