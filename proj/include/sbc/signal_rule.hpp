#pragma once

#include <string>

#include "sbc/params.hpp"

namespace sbc {

/// The t=2 signal-based payout rule beta(g_hat).
///
/// Threshold:    beta = level * 1{g_hat >= location}, with level <= location
///               so that beta(g_hat) <= g_hat on the rule's range.
/// LinearBranch: beta = clamp(slope * (g_hat - kink), 0, upper) with
///               slope in (0,1).
///
/// Both variants are nondecreasing with beta(0) = 0 and a.e. slope in [0,1).
class SignalRule {
public:
    enum class Kind { Threshold, LinearBranch };

    static SignalRule threshold(double location, double level);
    static SignalRule linear_branch(double kink, double slope, double upper);

    Kind kind() const { return kind_; }
    bool is_threshold() const { return kind_ == Kind::Threshold; }

    double beta(double g_hat) const;
    /// a.e. derivative of beta at g_hat (0 on flats and for threshold rules).
    double slope_at(double g_hat) const;
    /// Slope of the interior branch: 0 for threshold rules.
    double interior_slope() const { return kind_ == Kind::Threshold ? 0.0 : slope_; }

    double location() const { return location_; }
    double level() const { return level_; }
    double kink() const { return kink_; }
    double upper() const { return upper_; }

private:
    SignalRule() = default;

    Kind kind_ = Kind::Threshold;
    double location_ = 0.0, level_ = 0.0; // threshold
    double kink_ = 0.0, slope_ = 0.5, upper_ = 0.0; // linear branch
};

/// Realized payout p = 1{g_hat > 0} * min{beta(g_hat), cap, g_hat}.
double realized_payout(const SignalRule& rule, double cap, double g_hat);

/// The rule a province without commitment picks at t=2 when the residual-gap
/// loss is (chi/2)(g_hat - x)^2: a linear branch with kink alpha/chi, slope
/// chi/(kappa+chi) and clamp b_bar.
SignalRule discretionary_rule(const ParamSet& p);

std::string rule_kind_name(SignalRule::Kind k);

} // namespace sbc
