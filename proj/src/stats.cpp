#include "modsym/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "modsym/summation.hpp"

namespace modsym {

namespace {

double double_factorial(int n) {
    double r = 1.0;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
}

double one_moment(int n) { return n % 2 != 0 ? 0.0 : double_factorial(n - 1); }

}  // namespace

Normalized normalize(std::span<const SymbolSample> samples, double norm_f_sq, double volume, double T) {
    if (!(norm_f_sq > 0.0) || !(volume > 0.0)) throw std::invalid_argument("normalize: norm and volume must be positive");
    const double scale = 8.0 * std::numbers::pi * std::numbers::pi * norm_f_sq / volume;
    Normalized out;
    out.samples.reserve(samples.size());
    for (const auto& s : samples) {
        const double N = s.coset.norm;
        if (N <= 1.0 || N > T) {
            ++out.dropped;
            continue;
        }
        const double r = 1.0 / std::sqrt(scale * std::log(N));
        out.samples.push_back({s.value.real() * r, s.value.imag() * r, N});
    }
    return out;
}

double gaussian_moment(int n, int m) {
    if (n < 0 || m < 0) throw std::invalid_argument("gaussian_moment: negative index");
    return one_moment(n) * one_moment(m);
}

MomentReport moments(std::span<const NormalizedSample> samples, int n_max, int m_max) {
    if (samples.empty()) throw std::invalid_argument("moments: empty sample");
    if (n_max < 0 || m_max < 0 || n_max > 6 || m_max > 6)
        throw std::invalid_argument("moments: indices must lie in [0, 6]");

    std::vector<NormalizedSample> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& u, const auto& v) {
        if (u.x != v.x) return u.x < v.x;
        if (u.y != v.y) return u.y < v.y;
        return u.norm < v.norm;
    });

    const int cols = m_max + 1;
    std::vector<CompensatedSum<double>> sums(static_cast<std::size_t>((n_max + 1) * cols));
    std::vector<double> yp(static_cast<std::size_t>(cols));
    for (const auto& s : sorted) {
        yp[0] = 1.0;
        for (int m = 1; m <= m_max; ++m) yp[m] = yp[m - 1] * s.y;
        double xp = 1.0;
        for (int n = 0; n <= n_max; ++n) {
            for (int m = 0; m <= m_max; ++m) sums[static_cast<std::size_t>(n * cols + m)].add(xp * yp[m]);
            xp *= s.x;
        }
    }

    MomentReport report;
    report.count = sorted.size();
    const double inv = 1.0 / static_cast<double>(sorted.size());
    for (int n = 0; n <= n_max; ++n) {
        for (int m = 0; m <= m_max; ++m) {
            report.empirical[{n, m}] = sums[static_cast<std::size_t>(n * cols + m)].value() * inv;
            report.gaussian_limit[{n, m}] = gaussian_moment(n, m);
        }
    }
    return report;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double ks_distance(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double phi = normal_cdf(v[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - phi, phi - static_cast<double>(i) / n});
    }
    return d;
}

std::vector<HistogramBin> histogram(std::span<const double> values, std::size_t bins, double lo, double hi) {
    if (bins == 0) throw std::invalid_argument("histogram: need at least one bin");
    if (!(lo < hi)) throw std::invalid_argument("histogram: empty range");
    const bool infinite = std::isinf(lo) || std::isinf(hi);
    if (infinite && bins != 1) throw std::invalid_argument("histogram: an infinite range takes a single bin");

    std::vector<HistogramBin> out(bins);
    const double width = infinite ? 0.0 : (hi - lo) / static_cast<double>(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        out[k].lo = infinite ? lo : lo + width * static_cast<double>(k);
        out[k].hi = (infinite || k + 1 == bins) ? hi : lo + width * static_cast<double>(k + 1);
        out[k].expected_mass = normal_cdf(out[k].hi) - normal_cdf(out[k].lo);
    }
    for (double v : values) {
        if (!(v >= lo && v <= hi)) continue;
        std::size_t k = infinite ? 0 : static_cast<std::size_t>((v - lo) / width);
        k = std::min(k, bins - 1);
        // Guard against rounding at interior edges.
        while (k > 0 && v < out[k].lo) --k;
        while (k + 1 < bins && v >= out[k + 1].lo) ++k;
        ++out[k].count;
    }
    return out;
}

}  // namespace modsym
