#pragma once

#include <cstdint>
#include <string>

#include "modsym/curve.hpp"

namespace modsym {

struct NormEstimate {
    std::string method;  // "rankin" or "lattice"
    double value = 0.0;
    double spread = 0.0;  // relative spread of the averaged estimates (rankin only)
};

// ||f||^2 = vol(Gamma_0(N)\H) / (16 pi^2) * R, where R is the mean over
// Y in [X/2, X] of (1/Y) sum_{n <= Y} a_n^2 / n. Requires 1000 <= X <= n_max.
NormEstimate rankin_estimate(const CoefficientTable& table, std::int64_t N, std::int64_t X);

// ||f||^2 = degree * area(Lambda) / (4 pi^2) for the optimal curve with
// Manin constant 1 and modular degree `degree`.
NormEstimate lattice_norm(const PeriodLattice& lattice, int degree);

}  // namespace modsym
