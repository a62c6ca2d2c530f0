#include "modsym/cosets.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace modsym {

namespace {

std::int64_t checked(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("matrix entry overflows 64 bits");
    return static_cast<std::int64_t>(v);
}

// Inverse of x modulo m (m >= 1, gcd(x, m) = 1), in [0, m).
std::int64_t inverse_mod(std::int64_t x, std::int64_t m) {
    std::int64_t old_r = ((x % m) + m) % m, r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    if (old_r != 1 && m != 1) throw std::invalid_argument("inverse_mod: arguments not coprime");
    return ((old_s % m) + m) % m;
}

}  // namespace

GammaMatrix operator*(const GammaMatrix& x, const GammaMatrix& y) {
    using W = __int128;
    return {checked(W(x.a) * y.a + W(x.b) * y.c), checked(W(x.a) * y.b + W(x.b) * y.d),
            checked(W(x.c) * y.a + W(x.d) * y.c), checked(W(x.c) * y.b + W(x.d) * y.d)};
}

std::int64_t gamma0_index(std::int64_t N) {
    if (N < 1) throw std::invalid_argument("level must be positive");
    std::int64_t index = N, m = N;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        index = index / p * (p + 1);
    }
    if (m > 1) index = index / m * (m + 1);
    return index;
}

double volume(std::int64_t N) { return std::numbers::pi / 3.0 * static_cast<double>(gamma0_index(N)); }

double coset_norm(std::int64_t c, std::int64_t d, std::complex<double> z) {
    if (z == std::complex<double>(0.0, 1.0)) {
        // Exact integer value at z = i.
        return static_cast<double>(c * c + d * d);
    }
    const double re = static_cast<double>(c) * z.real() + static_cast<double>(d);
    const double im = static_cast<double>(c) * z.imag();
    return re * re + im * im;
}

std::int64_t max_c(double T, std::complex<double> z) {
    auto c = static_cast<std::int64_t>(std::floor(std::sqrt(T) / z.imag()));
    while (c > 0 && (c * z.imag()) * (c * z.imag()) > T) --c;
    while (((c + 1) * z.imag()) * ((c + 1) * z.imag()) <= T) ++c;
    return c;
}

void for_each_coset(std::int64_t N, double T, std::complex<double> z,
                    const std::function<void(const Coset&)>& visit,
                    std::int64_t c_begin, std::int64_t c_end) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument("enumerate: z must lie in the upper half-plane");
    if (!(T >= 1.0)) throw std::invalid_argument("enumerate: T must be at least 1");
    if (N < 1) throw std::invalid_argument("enumerate: level must be positive");

    const std::int64_t c_last = max_c(T, z);
    const std::int64_t c_stop = c_end < 0 ? c_last + 1 : std::min(c_end, c_last + 1);
    if (c_begin <= 0 && c_stop > 0) visit(Coset{0, 1, 1.0});

    std::int64_t c = std::max<std::int64_t>(c_begin, 1);
    c = (c + N - 1) / N * N;
    for (; c < c_stop; c += N) {
        const double height = static_cast<double>(c) * z.imag();
        const double radius = std::sqrt(std::max(0.0, T - height * height));
        const double centre = -static_cast<double>(c) * z.real();
        // One unit of slack on either side; every candidate is re-checked.
        const auto d_lo = static_cast<std::int64_t>(std::floor(centre - radius)) - 1;
        const auto d_hi = static_cast<std::int64_t>(std::ceil(centre + radius)) + 1;
        for (std::int64_t d = d_lo; d <= d_hi; ++d) {
            const double norm = coset_norm(c, d, z);
            if (norm > T) continue;
            if (std::gcd(c, d) != 1) continue;
            visit(Coset{c, d, norm});
        }
    }
}

std::vector<Coset> enumerate(std::int64_t N, double T, std::complex<double> z) {
    std::vector<Coset> out;
    out.reserve(static_cast<std::size_t>(T / (volume(N) * z.imag()) * 1.05) + 16);
    for_each_coset(N, T, z, [&](const Coset& c) { out.push_back(c); });
    return out;
}

GammaMatrix lift(const Coset& coset) {
    if (coset.c == 0) {
        if (coset.d != 1) throw std::invalid_argument("lift: identity coset must be (0, 1)");
        return {};
    }
    if (coset.c < 0) throw std::invalid_argument("lift: canonical cosets have c > 0");
    if (std::gcd(coset.c, coset.d) != 1) throw std::invalid_argument("lift: gcd(c, d) != 1");
    const std::int64_t a = coset.c == 1 ? 0 : inverse_mod(coset.d, coset.c);
    const __int128 numerator = static_cast<__int128>(a) * coset.d - 1;
    return {a, checked(numerator / coset.c), coset.c, coset.d};
}

Coset project(const GammaMatrix& m, std::complex<double> z) {
    std::int64_t c = m.c, d = m.d;
    if (c < 0 || (c == 0 && d < 0)) {
        c = -c;
        d = -d;
    }
    return {c, d, coset_norm(c, d, z)};
}

}  // namespace modsym
