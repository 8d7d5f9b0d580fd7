#include <doctest.h>

#include <stdexcept>

#include "sbc/noise.hpp"
#include "sbc/technology.hpp"

#include <cmath>

using namespace sbc;

TEST_CASE("noise draws are mean zero within Monte Carlo tolerance") {
    for (auto nd : {NoiseDist::normal(0.7), NoiseDist::uniform_box(1.2)}) {
        RandomStream rs(99);
        const long n = 200000;
        double sum = 0.0;
        for (long i = 0; i < n; ++i) sum += nd.sample(rs);
        double mean = sum / n;
        double se = nd.sd() / std::sqrt(static_cast<double>(n));
        CHECK(std::abs(mean) <= 4.0 * se);
    }
}

TEST_CASE("densities integrate to one on an 8-sd window") {
    for (auto nd : {NoiseDist::normal(0.5), NoiseDist::uniform_box(0.8)}) {
        double w = 8.0 * nd.sd();
        const int n = 40001;
        double step = 2.0 * w / (n - 1);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double x = -w + i * step;
            double weight = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            acc += weight * nd.pdf(x);
        }
        // the box density has jump points the trapezoid rule straddles
        double tol = nd.kind == NoiseDist::Kind::Normal ? 1e-6 : 5e-4;
        CHECK(acc * step == doctest::Approx(1.0).epsilon(tol));
    }
}

TEST_CASE("degenerate shock is allowed, degenerate density is not") {
    auto point = NoiseDist::normal(0.0);
    RandomStream rs(1);
    CHECK(point.sample(rs) == 0.0);
    CHECK_THROWS_AS(point.pdf(0.0), std::domain_error);
}

TEST_CASE("revenue families: zero at zero effort, increasing and concave") {
    EffortTechnology sq{EffortTechnology::Family::Sqrt, 2.0, 0.3, 0.0, 0.0};
    EffortTechnology lg{EffortTechnology::Family::Log, 1.5, 0.0, 0.0, 0.0};
    for (const auto& t : {sq, lg}) {
        CHECK(t.revenue(0.0, 0.5) == 0.0);
        for (double e : {0.1, 1.0, 10.0}) {
            double h = 1e-6 * std::max(1.0, e);
            double fd1 = (t.revenue(e + h, 0.5) - t.revenue(e - h, 0.5)) / (2.0 * h);
            CHECK(fd1 > 0.0);
            CHECK(fd1 == doctest::Approx(t.marginal_revenue(e, 0.5)).epsilon(1e-5));
            double fd2 = (t.revenue(e + h, 0.5) - 2.0 * t.revenue(e, 0.5) +
                          t.revenue(e - h, 0.5)) /
                         (h * h);
            CHECK(fd2 < 0.0);
        }
    }
}

TEST_CASE("nonpositive revenue scale is rejected") {
    EffortTechnology t{EffortTechnology::Family::Sqrt, 1.0, -2.0, 0.0, 0.0};
    CHECK_THROWS_AS(t.revenue(1.0, 1.0), std::domain_error);
}
