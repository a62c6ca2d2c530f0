#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace modsym {

// Canonical representative (c, d) of a coset Gamma_inf * gamma in
// Gamma_inf \ Gamma_0(N), with norm |cz + d|^2 at the working point z.
// c > 0 except for the identity coset (0, 1).
struct Coset {
    std::int64_t c = 0;
    std::int64_t d = 1;
    double norm = 1.0;

    bool is_identity() const { return c == 0; }
    friend bool operator==(const Coset&, const Coset&) = default;
};

struct GammaMatrix {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t det() const { return a * d - b * c; }
    GammaMatrix inverse() const { return {d, -b, -c, a}; }
    friend bool operator==(const GammaMatrix&, const GammaMatrix&) = default;
};

// Exact integer product; throws std::overflow_error if an entry overflows.
GammaMatrix operator*(const GammaMatrix& x, const GammaMatrix& y);

std::int64_t gamma0_index(std::int64_t N);

// Hyperbolic area of Gamma_0(N)\H: (pi/3) [SL2(Z) : Gamma_0(N)].
double volume(std::int64_t N);

double coset_norm(std::int64_t c, std::int64_t d, std::complex<double> z);

// Visits every coset with |cz + d|^2 <= T exactly once, ordered by c then d.
// c is restricted to the half-open range [c_begin, c_end) of multiples of N
// (c_begin = 0 includes the identity coset). Throws std::invalid_argument
// if Im z <= 0 or T < 1.
void for_each_coset(std::int64_t N, double T, std::complex<double> z,
                    const std::function<void(const Coset&)>& visit,
                    std::int64_t c_begin = 0, std::int64_t c_end = -1);

std::vector<Coset> enumerate(std::int64_t N, double T, std::complex<double> z);

// Largest c with (c Im z)^2 <= T.
std::int64_t max_c(double T, std::complex<double> z);

// Canonical lift: identity for (0, 1); otherwise 0 <= a < c, b forced by det 1.
GammaMatrix lift(const Coset& coset);

// Canonical coset of a matrix in Gamma_0(N) (sign normalized so c > 0).
Coset project(const GammaMatrix& m, std::complex<double> z);

}  // namespace modsym
