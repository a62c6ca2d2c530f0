#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "modsym/symbols.hpp"

namespace modsym {

// Symbol scaled by sqrt(8 pi^2 ||f||^2 / vol * log N) so that each component
// is asymptotically standard normal.
struct NormalizedSample {
    double x = 0.0;  // real part
    double y = 0.0;  // imaginary part
    double norm = 0.0;
};

struct Normalized {
    std::vector<NormalizedSample> samples;
    std::size_t dropped = 0;  // norm <= 1 (log N <= 0) or beyond T
};

Normalized normalize(std::span<const SymbolSample> samples, double norm_f_sq, double volume,
                     double T = std::numeric_limits<double>::infinity());

struct MomentReport {
    std::size_t count = 0;
    std::map<std::pair<int, int>, double> empirical;       // (n, m) -> mean of x^n y^m
    std::map<std::pair<int, int>, double> gaussian_limit;  // (n, m) -> E[X^n] E[Y^m]
};

// Mixed moments for 0 <= n <= n_max, 0 <= m <= m_max (each at most 6). The
// samples are put into a canonical order before the reduction, so the result
// does not depend on the order of the input.
MomentReport moments(std::span<const NormalizedSample> samples, int n_max, int m_max);

// E[X^n] E[Y^m] for independent standard normals.
double gaussian_moment(int n, int m);

double normal_cdf(double x);

// sup_x |F_emp(x) - Phi(x)|.
double ks_distance(std::span<const double> values);

struct HistogramBin {
    double lo = 0.0, hi = 0.0;
    std::size_t count = 0;
    double expected_mass = 0.0;  // Phi(hi) - Phi(lo)
};

// Equal-width bins over [lo, hi]; values outside the range are not counted.
// An infinite range gives a single bin.
std::vector<HistogramBin> histogram(std::span<const double> values, std::size_t bins, double lo, double hi);

}  // namespace modsym
