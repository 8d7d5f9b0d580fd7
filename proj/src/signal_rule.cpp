#include "sbc/signal_rule.hpp"

#include <algorithm>
#include <stdexcept>

namespace sbc {

SignalRule SignalRule::threshold(double location, double level) {
    if (!(location >= 0.0)) throw std::invalid_argument("threshold rule: location must be >= 0");
    if (!(level >= 0.0)) throw std::invalid_argument("threshold rule: level must be >= 0");
    if (!(level <= location))
        throw std::invalid_argument("threshold rule: level must be <= location "
                                    "(payout may not exceed the signaled gap)");
    SignalRule r;
    r.kind_ = Kind::Threshold;
    r.location_ = location;
    r.level_ = level;
    return r;
}

SignalRule SignalRule::linear_branch(double kink, double slope, double upper) {
    if (!(kink >= 0.0)) throw std::invalid_argument("linear rule: kink must be >= 0");
    if (!(slope > 0.0 && slope < 1.0))
        throw std::invalid_argument("linear rule: slope must lie in (0,1)");
    if (!(upper >= 0.0)) throw std::invalid_argument("linear rule: upper clamp must be >= 0");
    SignalRule r;
    r.kind_ = Kind::LinearBranch;
    r.kink_ = kink;
    r.slope_ = slope;
    r.upper_ = upper;
    return r;
}

double SignalRule::beta(double g_hat) const {
    switch (kind_) {
        case Kind::Threshold:
            return g_hat >= location_ ? level_ : 0.0;
        case Kind::LinearBranch:
            return std::clamp(slope_ * (g_hat - kink_), 0.0, upper_);
    }
    return 0.0;
}

double SignalRule::slope_at(double g_hat) const {
    if (kind_ == Kind::Threshold) return 0.0;
    double raw = slope_ * (g_hat - kink_);
    return (raw > 0.0 && raw < upper_) ? slope_ : 0.0;
}

double realized_payout(const SignalRule& rule, double cap, double g_hat) {
    if (!(cap >= 0.0)) throw std::invalid_argument("realized_payout: cap must be >= 0");
    if (g_hat <= 0.0) return 0.0;
    return std::min({rule.beta(g_hat), cap, g_hat});
}

SignalRule discretionary_rule(const ParamSet& p) {
    if (!(p.chi > 0.0) || !(p.kappa > 0.0))
        throw std::invalid_argument("discretionary_rule: chi and kappa must be > 0");
    return SignalRule::linear_branch(p.alpha / p.chi, p.chi / (p.kappa + p.chi), p.b_bar);
}

std::string rule_kind_name(SignalRule::Kind k) {
    return k == SignalRule::Kind::Threshold ? "threshold" : "linear";
}

} // namespace sbc
