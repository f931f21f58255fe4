#include "scmmi/errors.hpp"
#include "scmmi/topology.hpp"

#include <doctest.h>

using namespace scmmi;

TEST_CASE("five-level sub-module counts") {
    const SubModuleSpec s = component_counts(5);
    CHECK(s.n_switches == 7);
    CHECK(s.n_capacitors == 2);
    CHECK(s.n_no_diode == 1);
    CHECK(s.n_with_diode == 2);
    CHECK(s.n_any_diode == 4);
}

TEST_CASE("three-level sub-module is four switches and one capacitor") {
    const SubModuleSpec s = component_counts(3);
    CHECK(s.n_switches == 4);
    CHECK(s.n_capacitors == 1);
    CHECK(s.n_no_diode == 0);
}

TEST_CASE("seven-level sub-module counts") {
    const SubModuleSpec s = component_counts(7);
    CHECK(s.n_switches == 10);
    CHECK(s.n_capacitors == 3);
}

TEST_CASE("invalid level counts are rejected") {
    CHECK_THROWS_AS(component_counts(4), InvalidLevelCount);
    CHECK_THROWS_AS(component_counts(1), InvalidLevelCount);
    CHECK_THROWS_AS(component_counts(-3), InvalidLevelCount);
}

TEST_CASE("property: diode classes partition the switch set") {
    for (int nl = 3; nl <= 21; nl += 2) {
        CAPTURE(nl);
        const SubModuleSpec s = component_counts(nl);
        CHECK(s.n_no_diode + s.n_with_diode + s.n_any_diode == s.n_switches);
        CHECK(2 * s.n_switches == 3 * nl - 1);
        CHECK(2 * s.n_capacitors == nl - 1);
    }
}

TEST_CASE("five-level level set and ratings at 600 V") {
    const RatingReport r = device_ratings(5, 3, 600.0);
    CHECK(r.capacitor_rating == doctest::Approx(200.0));
    CHECK(r.inner_switch_rating == doctest::Approx(200.0));
    CHECK(r.outer_switch_rating == doctest::Approx(400.0));
    const std::vector<double> expected = {-400.0, -200.0, 0.0, 200.0, 400.0};
    REQUIRE(r.level_set.size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) CHECK(r.level_set[k] == doctest::Approx(expected[k]));
}

TEST_CASE("property: level set is symmetric with N_L entries spaced V_DC/n") {
    for (int nl = 3; nl <= 21; nl += 2) {
        for (int n = 1; n <= 5; ++n) {
            CAPTURE(nl);
            CAPTURE(n);
            const double vdc = 120.0 * n;
            const auto levels = voltage_levels(nl, n, vdc);
            REQUIRE(static_cast<int>(levels.size()) == nl);
            for (std::size_t k = 0; k < levels.size(); ++k) {
                CHECK(levels[k] == doctest::Approx(-levels[levels.size() - 1 - k]));
                if (k > 0) CHECK(levels[k] - levels[k - 1] == doctest::Approx(vdc / n));
            }
            const RatingReport r = device_ratings(nl, n, vdc);
            CHECK(r.outer_switch_rating == doctest::Approx((nl - 1) * vdc / (2.0 * n)));
        }
    }
}

TEST_CASE("boost condition") {
    CHECK(is_boosting(9, 3));
    CHECK_FALSE(is_boosting(7, 3));
    CHECK_FALSE(is_boosting(5, 3));
    CHECK_FALSE(is_boosting(3, 1));
    CHECK(is_boosting(5, 1));
}

TEST_CASE("nominal capacitor voltage") {
    CHECK(nominal_capacitor_voltage(3, 600.0) == doctest::Approx(200.0));
    CHECK(nominal_capacitor_voltage(3, 400.0) == doctest::Approx(133.333333333));
}
