#include <doctest.h>

#include <stdexcept>

#include "sbc/rng.hpp"
#include "sbc/signal_rule.hpp"

#include <cmath>

using namespace sbc;

TEST_CASE("realized payout hand values") {
    auto rule = SignalRule::threshold(0.5, 0.4);
    CHECK(realized_payout(rule, 1.0, 0.7) == doctest::Approx(0.4));
    CHECK(realized_payout(rule, 0.0, 5.0) == 0.0);
    CHECK(realized_payout(rule, 0.3, 0.7) == doctest::Approx(0.3));
    CHECK(realized_payout(rule, 1.0, -0.2) == 0.0);
}

TEST_CASE("threshold construction enforces level <= location") {
    CHECK_THROWS_AS(SignalRule::threshold(0.5, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(SignalRule::threshold(-0.1, 0.0), std::invalid_argument);
    CHECK_NOTHROW(SignalRule::threshold(0.5, 0.5));
}

TEST_CASE("discretionary rule is threshold-linear-cap") {
    ParamSet p;
    p.chi = 1.0;
    p.kappa = 1.0;
    p.alpha = 0.5;
    p.b_bar = 2.0;
    auto rule = discretionary_rule(p);
    CHECK(rule.kind() == SignalRule::Kind::LinearBranch);
    CHECK(rule.beta(1.0) == doctest::Approx(0.25));
    CHECK(rule.beta(0.4) == 0.0);
    CHECK(rule.beta(10.0) == doctest::Approx(2.0));
    CHECK(rule.interior_slope() == doctest::Approx(0.5));
}

TEST_CASE("discretionary slope matches finite differences on the interior branch") {
    ParamSet p;
    p.chi = 0.8;
    p.kappa = 1.7;
    p.alpha = 0.3;
    p.b_bar = 2.0;
    auto rule = discretionary_rule(p);
    double expected = p.chi / (p.kappa + p.chi);
    RandomStream rs(5);
    for (int i = 0; i < 200; ++i) {
        double g = p.alpha / p.chi + 0.05 + rs.uniform01() * 2.0;
        if (rule.beta(g) >= p.b_bar - 0.05) continue;
        double h = 1e-7;
        double fd = (rule.beta(g + h) - rule.beta(g - h)) / (2.0 * h);
        CHECK(std::abs(fd - expected) <= 1e-9);
    }
}

TEST_CASE("rules are monotone with a.e. slope in [0,1)") {
    auto thresh = SignalRule::threshold(0.8, 0.6);
    auto lin = SignalRule::linear_branch(0.3, 0.7, 1.5);
    RandomStream rs(11);
    for (int i = 0; i < 1000; ++i) {
        double g1 = rs.uniform01() * 4.0;
        double g2 = g1 + rs.uniform01() * 2.0;
        for (const auto& rule : {thresh, lin}) CHECK(rule.beta(g2) >= rule.beta(g1));
    }
    // finite-difference slope away from kinks
    auto kink_dist = [](const SignalRule& r, double g) {
        if (r.is_threshold()) return std::abs(g - r.location());
        double top = r.kink() + r.upper() / r.interior_slope();
        return std::min(std::abs(g - r.kink()), std::abs(g - top));
    };
    for (int i = 0; i < 1000; ++i) {
        double g = rs.uniform01() * 4.0;
        for (const auto& rule : {thresh, lin}) {
            if (kink_dist(rule, g) < 1e-3) continue;
            double h = 1e-6;
            double fd = (rule.beta(g + h) - rule.beta(g - h)) / (2.0 * h);
            CHECK(fd >= 0.0);
            CHECK(fd <= 1.0 - 1e-9);
        }
    }
}

TEST_CASE("payout dominance: never above the cap or the positive signal") {
    auto lin = SignalRule::linear_branch(0.1, 0.9, 3.0);
    RandomStream rs(17);
    for (int i = 0; i < 2000; ++i) {
        double g = rs.uniform01() * 6.0 - 1.0;
        double cap = rs.uniform01() * 2.0;
        double pay = realized_payout(lin, cap, g);
        CHECK(pay <= std::min(cap, std::max(g, 0.0)) + 1e-15);
        CHECK(pay >= 0.0);
    }
}
