#include "modsym/petersson.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "modsym/cosets.hpp"
#include "modsym/summation.hpp"

namespace modsym {

NormEstimate rankin_estimate(const CoefficientTable& table, std::int64_t N, std::int64_t X) {
    if (X < 1000) throw std::invalid_argument("rankin_estimate: X must be at least 1000");
    if (X > table.n_max())
        throw std::invalid_argument("rankin_estimate: X exceeds the coefficient table (n_max = " +
                                    std::to_string(table.n_max()) + ")");
    const auto a = table.values();
    CompensatedSum<double> prefix, mean;
    double lo = 0.0, hi = 0.0;
    std::int64_t samples = 0;
    for (std::int64_t n = 1; n <= X; ++n) {
        const double an = static_cast<double>(a[n]);
        prefix.add(an * an / static_cast<double>(n));
        if (2 * n < X) continue;
        const double r = prefix.value() / static_cast<double>(n);
        lo = samples == 0 ? r : std::min(lo, r);
        hi = samples == 0 ? r : std::max(hi, r);
        mean.add(r);
        ++samples;
    }
    const double R = mean.value() / static_cast<double>(samples);
    const double scale = volume(N) / (16.0 * std::numbers::pi * std::numbers::pi);
    return {"rankin", scale * R, (hi - lo) / R};
}

NormEstimate lattice_norm(const PeriodLattice& lattice, int degree) {
    if (degree <= 0) throw std::invalid_argument("lattice_norm: modular degree must be positive");
    return {"lattice", degree * lattice.area / (4.0 * std::numbers::pi * std::numbers::pi), 0.0};
}

}  // namespace modsym
