#include <doctest.h>

#include <cmath>
#include <numbers>

#include "modsym/series.hpp"

using namespace modsym;

namespace {

const SampleSet& set11() {
    static const SampleSet s = SampleSet::build(preset_curve("11a"), 2e5, {0.0, 1.0}, 1e-10, 2);
    return s;
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("weight parsing") {
    for (const char* text : {"one", "f_power(2,0)", "alphabeta(1,3)", "abs2m(2)"})
        CHECK(WeightSpec::parse(text).to_string() == text);
    CHECK(WeightSpec::parse("f_power(1,1)") == WeightSpec::f_power(1, 1));
    CHECK_THROWS_AS(WeightSpec::parse("f_power(4,3)"), std::invalid_argument);
    CHECK_THROWS_AS(WeightSpec::parse("abs2m(4)"), std::invalid_argument);
    CHECK_THROWS_AS(WeightSpec::parse("cube"), std::invalid_argument);
    CHECK_THROWS_AS(WeightSpec::f_power(-1, 0), std::invalid_argument);
}

TEST_CASE("weights on a sample") {
    SymbolSample s;
    s.value = Complex(0.5, -2.0);
    std::tie(s.alpha, s.beta) = decompose(s.value);
    CHECK(WeightSpec::one()(s) == Complex(1.0));
    CHECK(std::abs(WeightSpec::f_power(2, 1)(s) - s.value * s.value * std::conj(s.value)) < 1e-14);
    CHECK(std::abs(WeightSpec::abs2m(2)(s) - std::pow(std::norm(s.value), 2)) < 1e-12);
    CHECK(std::abs(WeightSpec::alphabeta(2, 0)(s) + s.value.imag() * s.value.imag()) < 1e-14);
    CHECK(WeightSpec::abs2m(1).nonnegative());
    CHECK(!WeightSpec::f_power(2, 0).nonnegative());
}

TEST_CASE("sharp sums") {
    const auto& s = set11();
    CHECK(sharp_sum(s, WeightSpec::one(), 1.0).value == Complex(1.0));
    CHECK(sharp_sum(s, WeightSpec::one(), 1.0).count == 1);
    const auto r = sharp_sum(s, WeightSpec::one(), 1e5);
    CHECK(r.value.real() == static_cast<double>(r.count));
    CHECK(static_cast<std::size_t>(r.count) == enumerate(11, 1e5, {0.0, 1.0}).size());
    // Conjugate pairs make first and second moments real at z = i.
    const auto f1 = sharp_sum(s, WeightSpec::f_power(1, 0), 1e5);
    CHECK(std::abs(f1.value.imag()) < 1e-9 * std::abs(f1.value.real()) + 1e-9);
    CHECK(!sharp_sum(s, WeightSpec::abs2m(1), 1e5).warning);
    CHECK_THROWS_AS(sharp_sum(s, WeightSpec::one(), 3e5), std::invalid_argument);
    CHECK_THROWS_AS(sharp_sum(s, WeightSpec::one(), 0.5), std::invalid_argument);
}

TEST_CASE("sums do not depend on the thread count") {
    const auto& s = set11();
    for (const auto& w : {WeightSpec::abs2m(2), WeightSpec::f_power(3, 0)}) {
        const Complex ref = sharp_sum(s, w, 2e5, 1).value;
        for (unsigned t : {2u, 4u, 8u}) CHECK(sharp_sum(s, w, 2e5, t).value == ref);
    }
}

TEST_CASE("smooth cutoff") {
    for (double U : {2.0, 10.0, 100.0}) {
        CHECK(smooth_cutoff(1.0 - 1.0 / U, U) == 1.0);
        CHECK(smooth_cutoff(1.0 + 1.0 / U, U) == 0.0);
        CHECK(smooth_cutoff(1.0, U) == doctest::Approx(0.5).epsilon(1e-12));
        double prev = 1.0;
        for (int k = 0; k <= 200; ++k) {
            const double v = smooth_cutoff(1.0 - 1.0 / U + k * (2.0 / U) / 200.0, U);
            CHECK(v <= prev);
            CHECK(v >= 0.0);
            prev = v;
        }
    }
    CHECK_THROWS_AS(smooth_cutoff(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("smoothed sums sit between sharp sums") {
    const auto& s = set11();
    for (const auto& w : {WeightSpec::one(), WeightSpec::abs2m(1), WeightSpec::abs2m(3)}) {
        for (double T : {3e3, 2.2e4, 1.1e5}) {
            for (double U : {4.0, 10.0, 100.0}) {
                const double mid = smoothed_sum(s, w, T, U).value.real();
                CHECK(sharp_sum(s, w, T * (1 - 1 / U)).value.real() <= mid);
                CHECK(mid <= sharp_sum(s, w, T * (1 + 1 / U)).value.real());
            }
        }
    }
    CHECK_THROWS_AS(smoothed_sum(s, WeightSpec::one(), 1.9e5, 10.0), std::invalid_argument);
}

TEST_CASE("twisted Eisenstein partial sums") {
    const auto& s = set11();
    const auto trivial = eisenstein_twisted(s, 10.0, 0, 0, 1e4);
    CHECK(std::abs(trivial.value - 1.0) < 1e-3);
    for (auto [m, n] : {std::pair{1, 0}, std::pair{1, 1}, std::pair{2, 0}}) {
        const auto fwd = eisenstein_twisted(s, {2.0, 0.5}, m, n, 2e5);
        const auto rev = eisenstein_twisted(s, {2.0, 0.5}, m, n, 2e5, true);
        CHECK(std::abs(fwd.value - rev.value) <= 1e-12 * std::abs(fwd.value));
        CHECK(fwd.tail_estimate >= 0.0);
        CHECK(fwd.terms == sharp_sum(s, WeightSpec::one(), 2e5).count);
    }
    CHECK_THROWS_AS(eisenstein_twisted(s, 1.0, 1, 0, 1e4), std::invalid_argument);
    CHECK_THROWS_AS(eisenstein_twisted(s, {0.5, 3.0}, 1, 0, 1e4), std::invalid_argument);
}

TEST_CASE("asymptotic constants") {
    const double pi = std::numbers::pi;
    const AsymptoticInputs in{4.0 * pi, 0.0469, 2.0, Complex(0.01, 0.002)};
    const auto one = asymptotic_constants(in, WeightSpec::one());
    CHECK(one.leading.real() == doctest::Approx(1.0 / (2.0 * 4.0 * pi)));
    CHECK(one.power_of_logT == 0);
    const auto sq = asymptotic_constants(in, WeightSpec::abs2m(1));
    CHECK(sq.leading.real() == doctest::Approx(16 * pi * pi * 0.0469 / (2.0 * 16 * pi * pi)));
    CHECK(sq.power_of_logT == 1);
    CHECK(asymptotic_constants(in, WeightSpec::f_power(2, 2)).leading ==
          asymptotic_constants(in, WeightSpec::abs2m(2)).leading);
    const auto g2 = asymptotic_constants(in, WeightSpec::f_power(2, 0));
    CHECK(std::abs(g2.leading - in.base_integral * in.base_integral / (2.0 * 4.0 * pi)) < 1e-18);
    const auto ab = asymptotic_constants(in, WeightSpec::alphabeta(2, 2));
    CHECK(ab.leading.real() ==
          doctest::Approx(std::pow(-8 * pi * pi * 0.0469, 2) / (2.0 * std::pow(4.0 * pi, 3))));
    CHECK(ab.power_of_logT == 2);
    const auto odd = asymptotic_constants(in, WeightSpec::alphabeta(2, 1));
    CHECK(odd.leading == Complex(0.0));
    CHECK(odd.order_bound_only);
    CHECK_THROWS_AS(asymptotic_constants(in, WeightSpec::f_power(3, 1)), std::invalid_argument);
    CHECK(sq.evaluate(100.0).real() == doctest::Approx(sq.leading.real() * 100.0 * std::log(100.0)));
}

}
