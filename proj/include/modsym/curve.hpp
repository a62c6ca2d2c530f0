#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace modsym {

using Complex = std::complex<double>;

// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// together with its conductor. The model is assumed minimal: every prime
// dividing the discriminant must divide N and vice versa.
struct CurveSpec {
    std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    std::int64_t N = 0;

    struct Invariants {
        __int128 b2, b4, b6, b8, discriminant;
    };
    Invariants invariants() const;

    // Throws std::invalid_argument when the model is singular, N < 11, or the
    // primes of bad reduction do not match the prime divisors of N.
    void validate() const;

    std::set<std::int64_t> bad_primes() const;

    friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

// Presets "11a" (X_0(11)) and "37a". Both have Manin constant 1 and the
// modular degree recorded here; other curves report degree 0 (unknown).
CurveSpec preset_curve(const std::string& name);
int preset_modular_degree(const CurveSpec& curve);

// Parses "11a", "37a" or "a1,a2,a3,a4,a6,N".
CurveSpec parse_curve(const std::string& text);
std::string format_curve(const CurveSpec& curve);

bool is_prime(std::int64_t n);

constexpr std::int64_t kMaxPointCountPrime = 1'000'000;

// a_p = p + 1 - #E~(F_p) where E~ is the reduction of the model, counted
// projectively. At a prime of bad reduction the reduced curve has a single
// singular point, so this equals p - #E_ns(F_p), the smooth-point count.
std::int64_t ap_count(const CurveSpec& curve, std::int64_t p);

// Fourier coefficients a_1..a_{n_max} of the newform, with a linear growth
// constant C (|a_n| <= C n) measured over the table and inflated by 10%.
class CoefficientTable {
public:
    CoefficientTable(std::vector<std::int64_t> coefficients, double tail_constant);

    std::int64_t n_max() const { return static_cast<std::int64_t>(a_.size()) - 1; }
    std::int64_t operator[](std::int64_t n) const { return a_.at(static_cast<std::size_t>(n)); }
    double tail_constant() const { return tail_constant_; }

    std::span<const std::int64_t> values() const { return a_; }
    // a_n / n for 0 <= n <= n_max (index 0 holds 0).
    std::span<const double> scaled() const { return scaled_; }

private:
    std::vector<std::int64_t> a_;
    std::vector<double> scaled_;
    double tail_constant_;
};

// Builds the table from prime coefficients via multiplicativity and the Hecke
// recursion. Bad primes use a_{p^r} = a_p^r. Throws std::invalid_argument
// naming the first prime <= n_max without a coefficient.
CoefficientTable hecke_expand(const std::map<std::int64_t, std::int64_t>& ap,
                              const std::set<std::int64_t>& bad_primes,
                              std::int64_t n_max);

// Point counts for every prime <= n_max followed by hecke_expand.
CoefficientTable coefficient_table(const CurveSpec& curve, std::int64_t n_max);

struct PeriodLattice {
    Complex omega1;  // generator of the real sublattice, Re > 0
    Complex omega2;  // Im(omega2 / omega1) > 0
    double area;     // |Im(conj(omega1) * omega2)|

    // Distance from v to the nearest lattice point.
    double distance(Complex v) const;
    // Real coordinates (x, y) with v = x omega1 + y omega2.
    std::pair<double, double> coordinates(Complex v) const;
};

// Periods of the invariant differential dx / (2y + a1 x + a3) via the
// arithmetic-geometric mean. Throws std::runtime_error if the AGM fails to
// reach the requested relative precision within the iteration cap.
PeriodLattice agm_periods(const CurveSpec& curve, double precision = 1e-15);

}  // namespace modsym
