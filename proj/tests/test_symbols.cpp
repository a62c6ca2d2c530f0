#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "modsym/symbols.hpp"
#include "oracle_values.hpp"

using namespace modsym;

namespace {

const CoefficientTable& table11() {
    static const CoefficientTable t = coefficient_table(preset_curve("11a"), 8000);
    return t;
}

const CoefficientTable& table37() {
    static const CoefficientTable t = coefficient_table(preset_curve("37a"), 8000);
    return t;
}

GammaMatrix random_gamma(std::mt19937_64& rng, std::int64_t N) {
    for (;;) {
        const std::int64_t c = N * std::uniform_int_distribution<std::int64_t>(1, 6)(rng);
        const std::int64_t d = std::uniform_int_distribution<std::int64_t>(-60, 60)(rng);
        if (std::gcd(c, d) != 1) continue;
        const std::int64_t j = std::uniform_int_distribution<std::int64_t>(-2, 2)(rng);
        return GammaMatrix{1, j, 0, 1} * lift({c, d, 0.0});
    }
}

}  // namespace

TEST_SUITE("symbols") {

TEST_CASE("antiderivative at i matches the oracle") {
    CHECK(std::abs(antiderivative(table11(), {0.0, 1.0}, 1e-15) - oracle::kGi_11a) < 1e-15);
    CHECK(std::abs(antiderivative(table37(), {0.0, 1.0}, 1e-15) - oracle::kGi_37a) < 1e-15);
}

TEST_CASE("trivial elements pair to zero") {
    CHECK(pairing(table11(), GammaMatrix{}, 1e-10).value == Complex(0.0));
    CHECK(pairing(table11(), GammaMatrix{1, 7, 0, 1}, 1e-10).value == Complex(0.0));
    CHECK(pairing(table11(), GammaMatrix{-1, 0, 0, -1}, 1e-10).value == Complex(0.0));
}

TEST_CASE("homomorphism and inverse") {
    std::mt19937_64 rng(7);
    for (std::int64_t N : {11, 37}) {
        const auto& t = N == 11 ? table11() : table37();
        for (int k = 0; k < 40; ++k) {
            const auto g = random_gamma(rng, N), h = random_gamma(rng, N);
            if (std::llabs((g * h).c) > 700) continue;
            const Complex vg = pairing(t, g, 1e-11).value, vh = pairing(t, h, 1e-11).value;
            CHECK(std::abs(pairing(t, g * h, 1e-11).value - vg - vh) < 1e-9);
            CHECK(std::abs(pairing(t, g.inverse(), 1e-11).value + vg) < 1e-9);
        }
    }
}

TEST_CASE("symbols lie in the period lattice") {
    for (const char* name : {"11a", "37a"}) {
        const auto curve = preset_curve(name);
        const auto L = agm_periods(curve);
        const auto& t = curve.N == 11 ? table11() : table37();
        for (const auto& c : enumerate(curve.N, 5e4, {0.0, 1.0}))
            CHECK(L.distance(pairing(t, lift(c), 1e-10).value) < 1e-8);
    }
}

TEST_CASE("series and quadrature agree at both split heights") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 6; ++k) {
        const auto g = random_gamma(rng, 11);
        const Complex v = pairing(table11(), g, 1e-12).value;
        CHECK(std::abs(oracle_pairing(table11(), g, 1.0, 1e-11) - v) < 1e-9);
        CHECK(std::abs(oracle_pairing(table11(), g, 2.0, 1e-11) - v) < 1e-9);
    }
}

TEST_CASE("batch evaluation equals single pairings") {
    const auto cosets = enumerate(37, 3e4, {0.0, 1.0});
    const auto batch = evaluate_symbols(table37(), cosets, 1e-10, 3);
    REQUIRE(batch.size() == cosets.size());
    for (std::size_t i = 0; i < cosets.size(); ++i) {
        CHECK(batch[i].coset == cosets[i]);
        CHECK(std::abs(batch[i].value - pairing(table37(), lift(cosets[i]), 1e-10).value) < 1e-10);
        CHECK(batch[i].err_bound < 1e-10);
    }
}

TEST_CASE("reflection d -> -d conjugates the symbol at z = i") {
    const auto cosets = enumerate(11, 2e4, {0.0, 1.0});
    const auto v = evaluate_symbols(table11(), cosets, 1e-10);
    for (std::size_t i = 1; i < v.size(); ++i) {
        const Complex mirror = pairing(table11(), lift({v[i].coset.c, -v[i].coset.d, 0.0}), 1e-10).value;
        CHECK(std::abs(mirror - std::conj(v[i].value)) < 1e-9);
    }
}

TEST_CASE("decomposition") {
    const Complex v(0.3, -1.25);
    const auto [alpha, beta] = decompose(v);
    CHECK(alpha.real() == 0.0);
    CHECK(beta.real() == 0.0);
    CHECK(std::abs(alpha + Complex(0.0, 1.0) * beta - v) < 1e-16);
}

TEST_CASE("truncation") {
    const std::int64_t M = terms_for_height(0.01, 1.1, 1e-10);
    const double r = std::exp(-2.0 * std::numbers::pi * 0.01);
    CHECK(1.1 * std::pow(r, M + 1) / (1.0 - r) < 1e-10);
    CHECK(1.1 * std::pow(r, M) / (1.0 - r) >= 1e-10);
    CHECK(required_table_size(100, 1e-10) >= terms_for_height(0.01, 2.0, 5e-11));
}

TEST_CASE("short tables and bad arguments") {
    const auto tiny = coefficient_table(preset_curve("11a"), 50);
    try {
        (void)pairing(tiny, lift({1100, 1, 0.0}), 1e-10);
        FAIL("expected InsufficientTable");
    } catch (const InsufficientTable& e) {
        CHECK(e.required_n_max > 50);
    }
    const auto cosets = enumerate(11, 1e6, {0.0, 1.0});
    CHECK_THROWS_AS(evaluate_symbols(tiny, cosets, 1e-10, 2), InsufficientTable);
    CHECK_THROWS_AS(pairing(table11(), GammaMatrix{2, 0, 0, 1}, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(pairing(table11(), lift({11, 1, 0.0}), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(antiderivative(table11(), {0.0, -1.0}, 1e-10), std::invalid_argument);
}

}
