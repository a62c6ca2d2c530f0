#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "modsym/cosets.hpp"
#include "modsym/curve.hpp"

namespace modsym {

// Thrown when the coefficient table is too short for the requested
// tolerance; required_n_max is the table length that would suffice.
class InsufficientTable : public std::runtime_error {
public:
    InsufficientTable(const std::string& what, std::int64_t required)
        : std::runtime_error(what), required_n_max(required) {}
    std::int64_t required_n_max;
};

// A coset together with <gamma, f> and its decomposition
// value = alpha + i beta, where alpha = <gamma, Re(f dz)> and
// beta = <gamma, Im(f dz)> are both purely imaginary.
struct SymbolSample {
    Coset coset;
    Complex value;
    Complex alpha;
    Complex beta;
    double err_bound = 0.0;
};

// Smallest M such that C * sum_{n > M} exp(-2 pi n h) < tol.
std::int64_t terms_for_height(double height, double tail_constant, double tol);

// Table length needed to evaluate every symbol with c <= c_max to `tol`,
// assuming |a_n| <= tail_constant * n.
std::int64_t required_table_size(std::int64_t c_max, double tol, double tail_constant = 2.0);

// G(z) = sum a_n/n q^n = -2 pi i * integral_z^{i inf} f(w) dw, i.e. the
// antiderivative F(z) = sum a_n/(2 pi i n) q^n scaled by 2 pi i. The symbol
// of gamma is G(gamma^{-1} w) - G(w) for any w in H.
Complex antiderivative(const CoefficientTable& table, Complex z, double tol);

// <gamma, f> = -2 pi i * integral_{i inf}^{gamma(i inf)} f(z) dz, evaluated by
// splitting the path at (a + i)/c so both q-series are taken at height 1/c.
SymbolSample pairing(const CoefficientTable& table, const GammaMatrix& m, double tol);

// Same integral by adaptive Gauss-Kronrod quadrature of the q-series of f
// along the vertical rays above (a + i h)/c and its preimage under gamma.
Complex oracle_pairing(const CoefficientTable& table, const GammaMatrix& m, double split_height, double tol);

std::pair<Complex, Complex> decompose(Complex value);

// Symbols for a batch of cosets sorted by c (as produced by enumerate).
// Cosets sharing c reuse one residue table, so a full enumeration costs
// O(c) per coset instead of O(c log(1/tol)).
std::vector<SymbolSample> evaluate_symbols(const CoefficientTable& table, std::span<const Coset> cosets,
                                           double tol, unsigned threads = 1);

}  // namespace modsym
