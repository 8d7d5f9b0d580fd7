#include <doctest.h>

#include <stdexcept>

#include "sbc/credibility.hpp"
#include "sbc/rng.hpp"

#include <cmath>

using namespace sbc;

namespace {
ParamSet with(double omega_T, double omega_b, double kappa, double gamma, double alpha = 1.0) {
    ParamSet p;
    p.omega_T = omega_T;
    p.omega_b = omega_b;
    p.kappa = kappa;
    p.gamma = gamma;
    p.alpha = alpha;
    return p;
}
} // namespace

TEST_CASE("rho star hand values") {
    CHECK(std::abs(rho_star(with(2.0, 1.0, 1.0, 1.0)) - 1.0 / 3.0) <= 1e-15);
    CHECK(rho_star(with(1.0, 1.0, 1.0, 1.0)) == 0.0);
    CHECK(rho_star(with(0.8, 1.0, 1.0, 1.0)) == 0.0); // nonpositive wedge
    CHECK(rho_star(with(2.0, 1.0, 1e-12, 1e-12)) > 1.0 - 1e-11);
}

TEST_CASE("grim trigger inequality hand values") {
    auto p = with(2.0, 1.0, 1.0, 1.0);
    auto mid = grim_trigger_sustainable(p, 0.5);
    CHECK(mid.sustainable);
    CHECK(mid.slack == doctest::Approx(1.0));

    auto boundary = grim_trigger_sustainable(p, rho_star(p));
    CHECK(boundary.sustainable);
    CHECK(std::abs(boundary.slack) <= 1e-12);

    auto low = grim_trigger_sustainable(p, 0.2);
    CHECK(!low.sustainable);
    CHECK(low.slack == doctest::Approx(-0.5));

    CHECK_THROWS_AS(grim_trigger_sustainable(p, 1.0), std::domain_error);
}

TEST_CASE("sustainability is equivalent to rho >= rho_star on random draws") {
    RandomStream rs(314);
    for (int i = 0; i < 1000; ++i) {
        auto p = with(0.5 + 2.0 * rs.uniform01(), 0.5 + 2.0 * rs.uniform01(),
                      0.2 + 2.0 * rs.uniform01(), 0.2 + 2.0 * rs.uniform01());
        double rho = 0.01 + 0.98 * rs.uniform01();
        auto rep = grim_trigger_sustainable(p, rho);
        CHECK(rep.sustainable == (rho >= rho_star(p)));
        // off the (measure-zero) boundary the raw inequality agrees too
        CHECK(rep.sustainable == (rep.slack >= 0.0));
    }
}

TEST_CASE("rho star monotone comparative statics") {
    RandomStream rs(2718);
    const double h = 1e-6;
    for (int i = 0; i < 100; ++i) {
        // keep a strictly positive wedge so the threshold is interior
        double wb = 0.3 + rs.uniform01();
        auto p = with(wb + 0.2 + rs.uniform01(), wb, 0.2 + rs.uniform01(), 0.2 + rs.uniform01());

        auto bump = [&](double ParamSet::*member) {
            ParamSet up = p, dn = p;
            up.*member += h;
            dn.*member -= h;
            return rho_star(up) - rho_star(dn);
        };
        CHECK(bump(&ParamSet::omega_T) > 0.0);
        CHECK(bump(&ParamSet::omega_b) < 0.0);
        CHECK(bump(&ParamSet::kappa) < 0.0);
        CHECK(bump(&ParamSet::gamma) < 0.0);
    }
}

TEST_CASE("including the linear payout cost only relaxes the threshold") {
    RandomStream rs(99);
    for (int i = 0; i < 200; ++i) {
        auto p = with(0.5 + 2.0 * rs.uniform01(), 0.3 + rs.uniform01(), 0.2 + rs.uniform01(),
                      0.2 + rs.uniform01(), rs.uniform01());
        auto r = grim_trigger_sustainable(p, 0.5);
        double wedge = r.deviation_gain_bound;
        if (wedge <= 0.0) continue;
        double conservative = wedge / (r.punishment_loss_bound + wedge);
        double with_alpha = wedge / (r.conservative_bound_with_alpha + wedge);
        CHECK(with_alpha <= conservative + 1e-15);
    }
}
