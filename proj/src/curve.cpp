#include "modsym/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace modsym {

namespace {

constexpr std::int64_t kMaxCoefficient = 1'000'000'000;

std::int64_t mod(std::int64_t x, std::int64_t p) {
    std::int64_t r = x % p;
    return r < 0 ? r + p : r;
}

std::set<std::int64_t> prime_divisors(__int128 n) {
    std::set<std::int64_t> out;
    if (n < 0) n = -n;
    for (std::int64_t p = 2; static_cast<__int128>(p) * p <= n; ++p) {
        if (n % p == 0) {
            out.insert(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) {
        if (n > static_cast<__int128>(INT64_MAX)) throw std::invalid_argument("discriminant too large to factor");
        out.insert(static_cast<std::int64_t>(n));
    }
    return out;
}

double agm(double a, double b, double precision) {
    for (int it = 0; it < 64; ++it) {
        if (std::abs(a - b) <= precision * std::abs(a)) return 0.5 * (a + b);
        const double next_a = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = next_a;
    }
    throw std::runtime_error("AGM did not converge within 64 iterations");
}

// Newton polish of a real root of 4x^3 + b2 x^2 + 2 b4 x + b6.
double polish_root(double x, double b2, double b4, double b6) {
    for (int it = 0; it < 8; ++it) {
        const double g = ((4.0 * x + b2) * x + 2.0 * b4) * x + b6;
        const double dg = (12.0 * x + 2.0 * b2) * x + 2.0 * b4;
        if (dg == 0.0) break;
        const double step = g / dg;
        x -= step;
        if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

}  // namespace

CurveSpec::Invariants CurveSpec::invariants() const {
    const __int128 A1 = a1, A2 = a2, A3 = a3, A4 = a4, A6 = a6;
    Invariants inv{};
    inv.b2 = A1 * A1 + 4 * A2;
    inv.b4 = 2 * A4 + A1 * A3;
    inv.b6 = A3 * A3 + 4 * A6;
    inv.b8 = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
    inv.discriminant = -inv.b2 * inv.b2 * inv.b8 - 8 * inv.b4 * inv.b4 * inv.b4 - 27 * inv.b6 * inv.b6 +
                       9 * inv.b2 * inv.b4 * inv.b6;
    return inv;
}

void CurveSpec::validate() const {
    for (auto c : {a1, a2, a3, a4, a6}) {
        if (c > kMaxCoefficient || c < -kMaxCoefficient)
            throw std::invalid_argument("Weierstrass coefficient out of range (|a_i| <= 1e9)");
    }
    if (N < 11) throw std::invalid_argument("conductor must be at least 11");
    const auto disc = invariants().discriminant;
    if (disc == 0) throw std::invalid_argument("singular model: discriminant is zero");
    const auto from_disc = prime_divisors(disc);
    const auto from_level = prime_divisors(N);
    for (auto p : from_disc) {
        if (!from_level.contains(p))
            throw std::invalid_argument("prime " + std::to_string(p) +
                                        " divides the discriminant but not N (model not minimal?)");
    }
    for (auto p : from_level) {
        if (!from_disc.contains(p))
            throw std::invalid_argument("prime " + std::to_string(p) + " divides N but the curve has good reduction there");
    }
}

std::set<std::int64_t> CurveSpec::bad_primes() const { return prime_divisors(N); }

CurveSpec preset_curve(const std::string& name) {
    if (name == "11a") return CurveSpec{0, -1, 1, -10, -20, 11};
    if (name == "37a") return CurveSpec{0, 0, 1, -1, 0, 37};
    throw std::invalid_argument("unknown curve preset '" + name + "' (expected 11a or 37a)");
}

int preset_modular_degree(const CurveSpec& curve) {
    if (curve == preset_curve("11a")) return 1;
    if (curve == preset_curve("37a")) return 2;
    return 0;
}

CurveSpec parse_curve(const std::string& text) {
    if (text == "11a" || text == "37a") return preset_curve(text);
    std::vector<std::int64_t> fields;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            fields.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad curve field '" + item + "'");
        }
    }
    if (fields.size() != 6) throw std::invalid_argument("curve must be 11a, 37a or a1,a2,a3,a4,a6,N");
    CurveSpec c{fields[0], fields[1], fields[2], fields[3], fields[4], fields[5]};
    c.validate();
    return c;
}

std::string format_curve(const CurveSpec& c) {
    if (c == preset_curve("11a")) return "11a";
    if (c == preset_curve("37a")) return "37a";
    std::ostringstream os;
    os << c.a1 << ',' << c.a2 << ',' << c.a3 << ',' << c.a4 << ',' << c.a6 << ',' << c.N;
    return os.str();
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::int64_t ap_count(const CurveSpec& curve, std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("ap_count: " + std::to_string(p) + " is not prime");
    if (p > kMaxPointCountPrime) throw std::invalid_argument("ap_count: prime exceeds 1e6 point-count bound");

    if (p == 2) {
        std::int64_t points = 1;
        for (std::int64_t x = 0; x < 2; ++x)
            for (std::int64_t y = 0; y < 2; ++y) {
                const std::int64_t lhs = y * y + curve.a1 * x * y + curve.a3 * y;
                const std::int64_t rhs = x * x * x + curve.a2 * x * x + curve.a4 * x + curve.a6;
                if (mod(lhs - rhs, 2) == 0) ++points;
            }
        return p + 1 - points;
    }

    // Completing the square: the number of y over F_p for a given x is
    // 1 + legendre(4x^3 + b2 x^2 + 2 b4 x + b6).
    const auto inv = curve.invariants();
    const std::int64_t b2 = mod(static_cast<std::int64_t>(inv.b2 % p), p);
    const std::int64_t b4 = mod(static_cast<std::int64_t>((2 * inv.b4) % p), p);
    const std::int64_t b6 = mod(static_cast<std::int64_t>(inv.b6 % p), p);

    std::vector<signed char> chi(static_cast<std::size_t>(p), -1);
    chi[0] = 0;
    for (std::int64_t y = 1; y <= p / 2; ++y) chi[static_cast<std::size_t>(y * y % p)] = 1;

    std::int64_t sum = 0;
    for (std::int64_t x = 0; x < p; ++x) {
        const std::int64_t g = (((4 * x + b2) % p * x + b4) % p * x + b6) % p;
        sum += chi[static_cast<std::size_t>(g)];
    }
    return -sum;
}

CoefficientTable::CoefficientTable(std::vector<std::int64_t> coefficients, double tail_constant)
    : a_(std::move(coefficients)), tail_constant_(tail_constant) {
    if (a_.size() < 2 || a_[1] != 1) throw std::invalid_argument("coefficient table must start with a_1 = 1");
    scaled_.resize(a_.size());
    scaled_[0] = 0.0;
    for (std::size_t n = 1; n < a_.size(); ++n) {
        scaled_[n] = static_cast<double>(a_[n]) / static_cast<double>(n);
        if (std::abs(scaled_[n]) > tail_constant_)
            throw std::invalid_argument("tail constant does not bound |a_n|/n at n = " + std::to_string(n));
    }
}

CoefficientTable hecke_expand(const std::map<std::int64_t, std::int64_t>& ap,
                              const std::set<std::int64_t>& bad_primes,
                              std::int64_t n_max) {
    if (n_max < 1) throw std::invalid_argument("hecke_expand: n_max must be positive");
    const auto size = static_cast<std::size_t>(n_max) + 1;

    std::vector<std::int64_t> spf(size, 0);
    for (std::int64_t i = 2; i <= n_max; ++i) {
        if (spf[i] != 0) continue;
        for (std::int64_t j = i; j <= n_max; j += i)
            if (spf[j] == 0) spf[j] = i;
    }

    std::vector<std::int64_t> a(size, 0);
    a[1] = 1;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        const std::int64_t p = spf[n];
        std::int64_t m = n, k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        if (m > 1) {
            a[n] = a[n / m] * a[m];
        } else if (k == 1) {
            auto it = ap.find(p);
            if (it == ap.end()) throw std::invalid_argument("hecke_expand: missing a_p for prime " + std::to_string(p));
            a[n] = it->second;
        } else if (bad_primes.contains(p)) {
            a[n] = a[p] * a[n / p];
        } else {
            a[n] = a[p] * a[n / p] - p * a[n / (p * p)];
        }
    }

    double worst = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n)
        worst = std::max(worst, std::abs(static_cast<double>(a[n])) / static_cast<double>(n));
    return CoefficientTable(std::move(a), 1.1 * worst);
}

CoefficientTable coefficient_table(const CurveSpec& curve, std::int64_t n_max) {
    curve.validate();
    std::map<std::int64_t, std::int64_t> ap;
    std::vector<char> composite(static_cast<std::size_t>(n_max) + 1, 0);
    for (std::int64_t p = 2; p <= n_max; ++p) {
        if (composite[p]) continue;
        for (std::int64_t j = p * p; j <= n_max; j += p) composite[j] = 1;
        ap.emplace(p, ap_count(curve, p));
    }
    return hecke_expand(ap, curve.bad_primes(), n_max);
}

double PeriodLattice::distance(Complex v) const {
    const auto [x, y] = coordinates(v);
    const double nx = std::round(x), ny = std::round(y);
    // The nearest point in a reduced basis lies among the neighbours of the
    // rounded coordinates.
    double best = std::abs(v - (nx * omega1 + ny * omega2));
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
            best = std::min(best, std::abs(v - ((nx + dx) * omega1 + (ny + dy) * omega2)));
    return best;
}

std::pair<double, double> PeriodLattice::coordinates(Complex v) const {
    // Solve v = x omega1 + y omega2 over the reals (Cramer's rule).
    const double det = omega1.real() * omega2.imag() - omega2.real() * omega1.imag();
    const double x = (v.real() * omega2.imag() - omega2.real() * v.imag()) / det;
    const double y = (omega1.real() * v.imag() - v.real() * omega1.imag()) / det;
    return {x, y};
}

PeriodLattice agm_periods(const CurveSpec& curve, double precision) {
    const auto inv = curve.invariants();
    if (inv.discriminant == 0) throw std::invalid_argument("agm_periods: singular model");
    const double b2 = static_cast<double>(inv.b2);
    const double b4 = static_cast<double>(inv.b4);
    const double b6 = static_cast<double>(inv.b6);
    const double pi = std::numbers::pi;

    // Monic form x^3 + p2 x^2 + p1 x + p0 and its depressed cubic t^3 + P t + Q.
    const double p2 = b2 / 4.0, p1 = b4 / 2.0, p0 = b6 / 4.0;
    const double shift = p2 / 3.0;
    const double P = p1 - p2 * p2 / 3.0;
    const double Q = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;

    PeriodLattice lattice{};
    if (inv.discriminant > 0) {
        // Three real roots e1 > e2 > e3.
        const double r = 2.0 * std::sqrt(-P / 3.0);
        const double arg = std::clamp(3.0 * Q / (P * r), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        std::array<double, 3> e{};
        for (int k = 0; k < 3; ++k) e[k] = polish_root(r * std::cos(phi - 2.0 * pi * k / 3.0) - shift, b2, b4, b6);
        std::sort(e.begin(), e.end(), std::greater<>());
        lattice.omega1 = pi / agm(std::sqrt(e[0] - e[2]), std::sqrt(e[0] - e[1]), precision);
        lattice.omega2 = Complex(0.0, pi / agm(std::sqrt(e[0] - e[2]), std::sqrt(e[1] - e[2]), precision));
    } else {
        // One real root e1; the lattice is Z omega1 + Z (omega1/2 + i h).
        const double disc = Q * Q / 4.0 + P * P * P / 27.0;
        const double s = std::sqrt(std::max(disc, 0.0));
        const double t = std::cbrt(-Q / 2.0 + s) + std::cbrt(-Q / 2.0 - s);
        const double e1 = polish_root(t - shift, b2, b4, b6);
        const double beta = 3.0 * e1 + b2 / 4.0;
        const double alpha = std::sqrt(3.0 * e1 * e1 + b2 * e1 / 2.0 + b4 / 2.0);
        const double w1 = 2.0 * pi / agm(2.0 * std::sqrt(alpha), std::sqrt(2.0 * alpha + beta), precision);
        const double h = pi / agm(2.0 * std::sqrt(alpha), std::sqrt(2.0 * alpha - beta), precision);
        lattice.omega1 = Complex(w1, 0.0);
        lattice.omega2 = Complex(w1 / 2.0, h);
    }
    lattice.area = std::abs((std::conj(lattice.omega1) * lattice.omega2).imag());
    if (!(lattice.area > 0.0)) throw std::runtime_error("agm_periods: degenerate lattice");
    return lattice;
}

}  // namespace modsym
