#include "modsym/symbols.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "modsym/parallel.hpp"

namespace modsym {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t reduce(std::int64_t x, std::int64_t m) {
    const std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

// exp(2 pi i (r/c + i h)) with r already reduced mod c.
Complex nome(std::int64_t r, std::int64_t c, double h) {
    return std::polar(std::exp(-kTwoPi * h), kTwoPi * static_cast<double>(r) / static_cast<double>(c));
}

void require_terms(const CoefficientTable& table, std::int64_t needed, const char* what) {
    if (needed > table.n_max()) {
        throw InsufficientTable(std::string(what) + ": coefficient table too short, need n_max >= " +
                                    std::to_string(needed) + " (have " + std::to_string(table.n_max()) + ")",
                                needed);
    }
}

double tail_bound(double height, double tail_constant, std::int64_t terms) {
    const double r = std::exp(-kTwoPi * height);
    return tail_constant * std::exp(static_cast<double>(terms + 1) * std::log(r)) / (1.0 - r);
}

// Gauss-Kronrod 7/15 nodes on [-1, 1] (non-negative half).
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
Complex gauss_kronrod(F&& f, double lo, double hi, double tol, int depth) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    Complex kronrod = kKronrodWeights[7] * f(mid);
    Complex gauss = kGaussWeights[3] * f(mid);
    for (int k = 0; k < 7; ++k) {
        const Complex pair = f(mid - half * kKronrodNodes[k]) + f(mid + half * kKronrodNodes[k]);
        kronrod += kKronrodWeights[k] * pair;
        if (k % 2 == 1) gauss += kGaussWeights[k / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    if (std::abs(kronrod - gauss) <= tol) return kronrod;
    if (depth >= 40) throw std::runtime_error("oracle_pairing: quadrature failed to converge");
    return gauss_kronrod(f, lo, mid, 0.5 * tol, depth + 1) + gauss_kronrod(f, mid, hi, 0.5 * tol, depth + 1);
}

// integral_h^inf f(x + i t) dt, x = r/c, by quadrature of the raw q-series.
Complex vertical_ray(const CoefficientTable& table, std::int64_t r, std::int64_t c, double h, double tol) {
    const auto a = table.values();
    const double C = table.tail_constant();
    const double point_eps = 1e-3 * tol;

    auto f = [&](double t) {
        // Truncate where C sum_{n>M} n e^{-2 pi n t} < point_eps.
        const double rho = std::exp(-kTwoPi * t);
        std::int64_t M = 1;
        while (C * static_cast<double>(M + 1) * std::pow(rho, static_cast<double>(M + 1)) /
                   ((1.0 - rho) * (1.0 - rho)) >=
               point_eps)
            M = M < 64 ? M + 1 : M + M / 4;
        require_terms(table, M, "oracle_pairing");
        const Complex q = nome(r, c, t);
        Complex qn = q, sum = 0.0;
        for (std::int64_t n = 1; n <= M; ++n) {
            sum += static_cast<double>(a[n]) * qn;
            qn *= q;
        }
        return sum;
    };

    // Beyond t_end the integrand is below C e^{-2 pi t} / (1 - e^{-2 pi t_end})^2.
    double t_end = std::max(2.0 * h, 1.0);
    auto tail = [&](double t) {
        const double rho = std::exp(-kTwoPi * t);
        return C * rho / (kTwoPi * (1.0 - rho) * (1.0 - rho));
    };
    while (tail(t_end) > 1e-3 * tol) t_end += 0.5;

    // Dyadic pieces [h, 2h], [2h, 4h], ... resolve the scale of f near the
    // real axis.
    std::vector<std::pair<double, double>> pieces;
    for (double lo = h; lo < t_end;) {
        const double hi = std::min(2.0 * lo, t_end);
        pieces.emplace_back(lo, hi);
        lo = hi;
    }
    Complex total = 0.0;
    const double piece_tol = tol / static_cast<double>(pieces.size());
    for (const auto& [lo, hi] : pieces) total += gauss_kronrod(f, lo, hi, piece_tol, 0);
    return total;
}

GammaMatrix canonical_sign(const GammaMatrix& m) {
    if (m.c < 0 || (m.c == 0 && m.d < 0)) return {-m.a, -m.b, -m.c, -m.d};
    return m;
}

// Residue sums S(r) = sum_n (a_n/n) e^{-2 pi n / c} e^{2 pi i n r / c} for one c.
class ResidueSums {
public:
    ResidueSums(const CoefficientTable& table, std::int64_t c, std::int64_t terms)
        : c_(c), folded_(static_cast<std::size_t>(c)), roots_(static_cast<std::size_t>(c)),
          cache_(static_cast<std::size_t>(c)) {
        const auto w = table.scaled();
        const double rho = std::exp(-kTwoPi / static_cast<double>(c));
        double decay = 1.0;
        std::int64_t k = 0;
        for (std::int64_t n = 1; n <= terms; ++n) {
            decay *= rho;
            if (++k == c) k = 0;
            folded_[static_cast<std::size_t>(k)] += w[n] * decay;
        }
        for (std::int64_t j = 0; j < c; ++j)
            roots_[static_cast<std::size_t>(j)] =
                std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(c));
    }

    Complex at(std::int64_t r) {
        auto& slot = cache_[static_cast<std::size_t>(r)];
        if (!slot) {
            Complex sum = folded_[0];
            std::int64_t idx = 0;
            for (std::int64_t k = 1; k < c_; ++k) {
                idx += r;
                if (idx >= c_) idx -= c_;
                sum += folded_[static_cast<std::size_t>(k)] * roots_[static_cast<std::size_t>(idx)];
            }
            slot = sum;
        }
        return *slot;
    }

private:
    std::int64_t c_;
    std::vector<double> folded_;
    std::vector<Complex> roots_;
    std::vector<std::optional<Complex>> cache_;
};

SymbolSample make_sample(const Coset& coset, Complex value, double err) {
    const auto [alpha, beta] = decompose(value);
    return {coset, value, alpha, beta, err};
}

}  // namespace

std::int64_t terms_for_height(double height, double tail_constant, double tol) {
    if (!(height > 0.0)) throw std::invalid_argument("terms_for_height: height must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("terms_for_height: tolerance must be positive");
    const double r = std::exp(-kTwoPi * height);
    // C r^{M+1} / (1 - r) < tol  <=>  M + 1 > log(tol (1 - r) / C) / log r
    const double bound = std::log(tol * (1.0 - r) / tail_constant) / std::log(r);
    auto M = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(bound)) - 1);
    while (M > 0 && tail_bound(height, tail_constant, M - 1) < tol) --M;
    while (tail_bound(height, tail_constant, M) >= tol) ++M;
    return M;
}

std::int64_t required_table_size(std::int64_t c_max, double tol, double tail_constant) {
    if (c_max <= 0) return 1;
    return std::max<std::int64_t>(1, terms_for_height(1.0 / static_cast<double>(c_max), tail_constant, 0.5 * tol));
}

Complex antiderivative(const CoefficientTable& table, Complex z, double tol) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument("antiderivative: Im z must be positive");
    const std::int64_t M = terms_for_height(z.imag(), table.tail_constant(), tol);
    require_terms(table, M, "antiderivative");
    const auto w = table.scaled();
    const double x = z.real() - std::floor(z.real());
    const Complex q = std::polar(std::exp(-kTwoPi * z.imag()), kTwoPi * x);
    Complex qn = q, sum = 0.0;
    for (std::int64_t n = 1; n <= M; ++n) {
        sum += w[n] * qn;
        qn *= q;
    }
    return sum;
}

SymbolSample pairing(const CoefficientTable& table, const GammaMatrix& matrix, double tol) {
    if (matrix.det() != 1) throw std::invalid_argument("pairing: matrix must have determinant 1");
    if (!(tol > 0.0)) throw std::invalid_argument("pairing: tolerance must be positive");
    const GammaMatrix m = canonical_sign(matrix);
    if (m.c == 0) return make_sample(Coset{0, 1, 1.0}, 0.0, 0.0);
    const Coset coset{m.c, m.d, coset_norm(m.c, m.d, Complex(0.0, 1.0))};

    const double height = 1.0 / static_cast<double>(m.c);
    const double C = table.tail_constant();
    const std::int64_t M = terms_for_height(height, C, 0.5 * tol);
    require_terms(table, M, "pairing");

    // Lower endpoint gamma^{-1}((a+i)/c) = (-d+i)/c; upper endpoint (a+i)/c.
    const Complex q_low = nome(reduce(-m.d, m.c), m.c, height);
    const Complex q_high = nome(reduce(m.a, m.c), m.c, height);
    const auto w = table.scaled();
    Complex p_low = q_low, p_high = q_high, sum = 0.0;
    for (std::int64_t n = 1; n <= M; ++n) {
        sum += w[n] * (p_low - p_high);
        p_low *= q_low;
        p_high *= q_high;
    }
    return make_sample(coset, sum, 2.0 * tail_bound(height, C, M));
}

Complex oracle_pairing(const CoefficientTable& table, const GammaMatrix& matrix, double split_height, double tol) {
    if (matrix.det() != 1) throw std::invalid_argument("oracle_pairing: matrix must have determinant 1");
    if (!(split_height > 0.0)) throw std::invalid_argument("oracle_pairing: split height must be positive");
    const GammaMatrix m = canonical_sign(matrix);
    if (m.c == 0) return 0.0;
    const double c = static_cast<double>(m.c);
    // <gamma, f> = 2 pi [I(-d/c, 1/(h c)) - I(a/c, h/c)], I(x, t0) = integral_{t0}^inf f(x + i t) dt.
    const double piece_tol = tol / (4.0 * std::numbers::pi);
    const Complex lower = vertical_ray(table, reduce(-m.d, m.c), m.c, 1.0 / (split_height * c), piece_tol);
    const Complex upper = vertical_ray(table, reduce(m.a, m.c), m.c, split_height / c, piece_tol);
    return kTwoPi * (lower - upper);
}

std::pair<Complex, Complex> decompose(Complex value) {
    // value = -2 pi i (P + i Q) with P, Q the real periods of Re(f dz), Im(f dz):
    // alpha = -2 pi i P = i Im(value), beta = -2 pi i Q = -i Re(value).
    return {Complex(0.0, value.imag()), Complex(0.0, -value.real())};
}

std::vector<SymbolSample> evaluate_symbols(const CoefficientTable& table, std::span<const Coset> cosets, double tol,
                                           unsigned threads) {
    if (!(tol > 0.0)) throw std::invalid_argument("evaluate_symbols: tolerance must be positive");
    // Runs of equal c.
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t i = 0; i < cosets.size();) {
        std::size_t j = i;
        while (j < cosets.size() && cosets[j].c == cosets[i].c) ++j;
        if (!runs.empty() && cosets[i].c < cosets[runs.back().first].c)
            throw std::invalid_argument("evaluate_symbols: cosets must be sorted by c");
        runs.emplace_back(i, j);
        i = j;
    }

    // Fail early, before any worker starts, if the table is too short.
    if (!cosets.empty()) {
        const std::int64_t c_max = cosets[runs.back().first].c;
        if (c_max > 0) {
            require_terms(table,
                          terms_for_height(1.0 / static_cast<double>(c_max), table.tail_constant(), 0.5 * tol),
                          "evaluate_symbols");
        }
    }

    std::vector<SymbolSample> out(cosets.size());
    parallel_for(runs.size(), threads, [&](std::size_t run) {
        const auto [begin, end] = runs[run];
        const std::int64_t c = cosets[begin].c;
        if (c == 0) {
            for (std::size_t i = begin; i < end; ++i) out[i] = make_sample(cosets[i], 0.0, 0.0);
            return;
        }
        const double height = 1.0 / static_cast<double>(c);
        const std::int64_t M = terms_for_height(height, table.tail_constant(), 0.5 * tol);
        const double err = 2.0 * tail_bound(height, table.tail_constant(), M);
        ResidueSums sums(table, c, M);
        for (std::size_t i = begin; i < end; ++i) {
            const auto m = lift(cosets[i]);
            const Complex value = sums.at(reduce(-m.d, c)) - sums.at(reduce(m.a, c));
            out[i] = make_sample(cosets[i], value, err);
        }
    });
    return out;
}

}  // namespace modsym
