#include "scmmi/control.hpp"
#include "scmmi/errors.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace scmmi;

TEST_CASE("mi limiter is the identity on a balanced bus") {
    const LimiterConfig cfg;
    const Eigen::VectorXd v = Eigen::VectorXd::Constant(3, 200.0);
    const Eigen::VectorXd mi = mi_limiter(v, 200.0, 0.9, cfg);
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(mi(i) == 0.9);
}

TEST_CASE("mi limiter raises the over-voltage phase by its deviation") {
    const LimiterConfig cfg;
    Eigen::VectorXd v(3);
    v << 220.0, 200.0, 200.0;
    const Eigen::VectorXd mi = mi_limiter(v, 200.0, 1.0, cfg);
    CHECK(mi(0) == doctest::Approx(1.1));
    CHECK(mi(1) == 1.0);
}

TEST_CASE("deviation inside the deadband leaves every limiter unchanged") {
    const LimiterConfig cfg;
    Eigen::VectorXd v(1);
    v << 202.0;
    CHECK(mi_limiter(v, 200.0, 0.8, cfg)(0) == 0.8);
    CHECK(current_ref_limiter(5.0, 202.0, 200.0, cfg) == 5.0);
    CHECK(torque_ref_limiter(12.0, 202.0, 200.0, cfg) == 12.0);
}

TEST_CASE("reference limiters scale the low-voltage phase down") {
    const LimiterConfig cfg;
    CHECK(current_ref_limiter(10.0, 180.0, 200.0, cfg) == doctest::Approx(9.0));
    CHECK(torque_ref_limiter(40.0, 180.0, 200.0, cfg) == doctest::Approx(36.0));
    CHECK(current_ref_limiter(10.0, 200.0, 200.0, cfg) == 10.0);
    CHECK(torque_ref_limiter(40.0, 200.0, 200.0, cfg) == 40.0);
}

TEST_CASE("correction factor saturates at the clamp bounds") {
    const LimiterConfig cfg;
    CHECK(correction_factor(400.0, 200.0, cfg) == 1.2);
    CHECK(correction_factor(20.0, 200.0, cfg) == 0.8);
}

TEST_CASE("limiter rejects a non-positive average and a bad clamp") {
    const LimiterConfig cfg;
    CHECK_THROWS_AS(correction_factor(200.0, 0.0, cfg), ConfigError);
    LimiterConfig bad;
    bad.floor = 1.1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = LimiterConfig{};
    bad.deadband = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("property: correction factor is nondecreasing in the capacitor voltage") {
    testsupport::Gen g(11);
    for (int trial = 0; trial < 200; ++trial) {
        LimiterConfig cfg;
        cfg.deadband = g.uniform(0.0, 10.0);
        cfg.gain = g.uniform(0.0, 5.0);
        cfg.floor = g.uniform(0.1, 1.0);
        cfg.ceiling = g.uniform(1.0, 3.0);
        const double avg = g.uniform(10.0, 1000.0);
        double prev = correction_factor(0.0, avg, cfg);
        for (int k = 1; k <= 400; ++k) {
            const double f = correction_factor(avg * k / 200.0, avg, cfg);
            CHECK(f >= prev);
            CHECK(f >= cfg.floor);
            CHECK(f <= cfg.ceiling);
            prev = f;
        }
    }
}

TEST_CASE("property: every limiter is the identity when the bus is balanced") {
    testsupport::Gen g(12);
    for (int trial = 0; trial < 100; ++trial) {
        LimiterConfig cfg;
        cfg.gain = g.uniform(0.0, 5.0);
        cfg.deadband = g.uniform(0.0, 5.0);
        const double avg = g.uniform(1.0, 1000.0);
        const int n = g.integer(1, 9);
        const double mi = g.uniform(0.1, 1.0);
        const Eigen::VectorXd out = mi_limiter(Eigen::VectorXd::Constant(n, avg), avg, mi, cfg);
        for (Eigen::Index i = 0; i < n; ++i) CHECK(out(i) == mi);
        const double ref = g.uniform(-50.0, 50.0);
        CHECK(current_ref_limiter(ref, avg, avg, cfg) == ref);
        CHECK(torque_ref_limiter(ref, avg, avg, cfg) == ref);
    }
}

TEST_CASE("moving average over a full window") {
    MovingAverage avg(2, 4, Eigen::Vector2d(1.0, 2.0));
    CHECK(avg.mean()(0) == 1.0);
    for (int k = 0; k < 4; ++k) avg.push(Eigen::Vector2d(5.0, 6.0));
    CHECK(avg.mean()(0) == doctest::Approx(5.0));
    CHECK(avg.mean()(1) == doctest::Approx(6.0));
    avg.push(Eigen::Vector2d(9.0, 6.0));
    CHECK(avg.mean()(0) == doctest::Approx(6.0));
}
