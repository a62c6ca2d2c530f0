#include <doctest.h>

#include <cmath>

#include "modsym/petersson.hpp"

using namespace modsym;

TEST_SUITE("petersson") {

TEST_CASE("Rankin estimate agrees with the lattice value") {
    for (const char* name : {"11a", "37a"}) {
        const auto curve = preset_curve(name);
        const auto table = coefficient_table(curve, 20000);
        const auto r = rankin_estimate(table, curve.N, 20000);
        const auto l = lattice_norm(agm_periods(curve), preset_modular_degree(curve));
        CHECK(r.method == "rankin");
        CHECK(l.method == "lattice");
        CHECK(std::abs(r.value / l.value - 1.0) < 0.05);
        CHECK(r.spread > 0.0);
        CHECK(r.spread < 0.1);
        const auto half = rankin_estimate(table, curve.N, 10000);
        CHECK(std::abs(half.value / r.value - 1.0) < 0.05);
    }
}

TEST_CASE("guards") {
    const auto table = coefficient_table(preset_curve("11a"), 2000);
    CHECK_THROWS_AS(rankin_estimate(table, 11, 999), std::invalid_argument);
    CHECK_THROWS_AS(rankin_estimate(table, 11, 2001), std::invalid_argument);
    CHECK_THROWS_AS(lattice_norm(agm_periods(preset_curve("11a")), 0), std::invalid_argument);
}

}
