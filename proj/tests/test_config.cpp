#include <doctest.h>

#include "modsym/config.hpp"

using namespace modsym;

TEST_SUITE("config") {

TEST_CASE("JSON round trip is lossless") {
    RunConfig c;
    c.curve = "0,0,1,-1,0,37";
    c.T_grid = {1e4, 31622.776601683792, 1e6};
    c.z_re = 0.1 + 0.2;
    c.z_im = 1.0 / 3.0;
    c.tol = 3e-11;
    c.threads = 6;
    c.format = "json";
    c.seed = 18446744073709551557ULL;
    CHECK(RunConfig::from_json(c.to_json()) == c);
    CHECK(RunConfig::from_json(RunConfig{}.to_json()) == RunConfig{});
}

TEST_CASE("single T and defaults") {
    const auto c = RunConfig::from_json(R"({"curve": "37a", "T": 5000})");
    CHECK(c.T_grid == std::vector<double>{5000});
    CHECK(c.z() == std::complex<double>(0.0, 1.0));
    CHECK(c.tol == 1e-10);
    CHECK(c.curve_spec() == preset_curve("37a"));
}

TEST_CASE("bounds") {
    CHECK_THROWS_AS(RunConfig::from_json(R"({"z": [0, 0]})"), std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::from_json(R"({"T": 0.5})"), std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::from_json(R"({"tol": 1})"), std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::from_json(R"({"threads": 0})"), std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::from_json(R"({"format": "xml"})"), std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::from_json(R"({"curve": "99z"})"), std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::from_json("{not json"), std::invalid_argument);
}

}
