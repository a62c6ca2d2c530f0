#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "modsym/stats.hpp"

using namespace modsym;

namespace {

std::vector<NormalizedSample> normal_draws(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<NormalizedSample> out(n);
    for (auto& s : out) s = {g(rng), g(rng), 2.0};
    return out;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("gaussian moments") {
    CHECK(gaussian_moment(0, 0) == 1.0);
    CHECK(gaussian_moment(2, 0) == 1.0);
    CHECK(gaussian_moment(4, 0) == 3.0);
    CHECK(gaussian_moment(6, 0) == 15.0);
    CHECK(gaussian_moment(2, 4) == 3.0);
    CHECK(gaussian_moment(1, 0) == 0.0);
    CHECK(gaussian_moment(3, 2) == 0.0);
}

TEST_CASE("normal cdf") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-13));
    CHECK(normal_cdf(-1.0) + normal_cdf(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(normal_cdf(-8.0) == doctest::Approx(6.22096057427178e-16).epsilon(1e-10));
}

TEST_CASE("moments of normal draws approach the limits") {
    const auto draws = normal_draws(200000, 3);
    const auto r = moments(draws, 4, 4);
    CHECK(r.count == draws.size());
    CHECK(r.empirical.at({2, 0}) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(r.empirical.at({4, 0}) == doctest::Approx(3.0).epsilon(0.05));
    CHECK(r.empirical.at({2, 2}) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::abs(r.empirical.at({1, 1})) < 0.02);
    CHECK(r.gaussian_limit.at({4, 2}) == 3.0);
}

TEST_CASE("moments are permutation invariant") {
    auto draws = normal_draws(5000, 5);
    const auto ref = moments(draws, 6, 6).empirical;
    std::mt19937_64 rng(9);
    for (int k = 0; k < 3; ++k) {
        std::shuffle(draws.begin(), draws.end(), rng);
        CHECK(moments(draws, 6, 6).empirical == ref);
    }
    CHECK_THROWS_AS(moments({}, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(moments(draws, 7, 0), std::invalid_argument);
}

TEST_CASE("normalization drops samples with norm at most 1") {
    std::vector<SymbolSample> in(3);
    in[0].coset = {0, 1, 1.0};
    in[1].coset = {11, 1, 122.0};
    in[1].value = Complex(1.0, -1.0);
    in[2].coset = {11, 3, 130.0};
    const auto n = normalize(in, 0.05, 4.0 * std::numbers::pi, 125.0);
    CHECK(n.dropped == 2);
    REQUIRE(n.samples.size() == 1);
    const double scale = std::sqrt(8.0 * std::numbers::pi * std::numbers::pi * 0.05 / (4.0 * std::numbers::pi) *
                                   std::log(122.0));
    CHECK(n.samples[0].x == doctest::Approx(1.0 / scale));
    CHECK(n.samples[0].y == doctest::Approx(-1.0 / scale));
}

TEST_CASE("Kolmogorov-Smirnov distance") {
    std::vector<double> zeros(100, 0.0);
    CHECK(ks_distance(zeros) == doctest::Approx(0.5));
    std::vector<double> draws;
    for (const auto& s : normal_draws(10000, 17)) draws.push_back(s.x);
    CHECK(ks_distance(draws) < 0.02);
    std::vector<double> shifted;
    for (double v : draws) shifted.push_back(v + 1.0);
    CHECK(ks_distance(shifted) > 0.3);
    CHECK_THROWS_AS(ks_distance({}), std::invalid_argument);
}

TEST_CASE("histogram") {
    std::vector<double> draws;
    for (const auto& s : normal_draws(20000, 21)) draws.push_back(s.x);
    const auto all = histogram(draws, 1, -INFINITY, INFINITY);
    REQUIRE(all.size() == 1);
    CHECK(all[0].count == draws.size());
    CHECK(all[0].expected_mass == 1.0);

    const auto h = histogram(draws, 16, -2.0, 2.0);
    std::size_t total = 0;
    double mass = 0.0;
    for (const auto& b : h) {
        total += b.count;
        mass += b.expected_mass;
        CHECK(static_cast<double>(b.count) == doctest::Approx(b.expected_mass * draws.size()).epsilon(0.15));
    }
    const auto inside = std::count_if(draws.begin(), draws.end(), [](double v) { return v >= -2.0 && v <= 2.0; });
    CHECK(total == static_cast<std::size_t>(inside));
    CHECK(mass == doctest::Approx(normal_cdf(2.0) - normal_cdf(-2.0)).epsilon(1e-14));
    CHECK(h.front().lo == -2.0);
    CHECK(h.back().hi == 2.0);
    CHECK_THROWS_AS(histogram(draws, 0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(histogram(draws, 4, 1.0, 1.0), std::invalid_argument);
}

}
