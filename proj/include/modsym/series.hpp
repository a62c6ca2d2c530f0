#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "modsym/cosets.hpp"
#include "modsym/curve.hpp"
#include "modsym/symbols.hpp"

namespace modsym {

struct WeightSpec {
    enum class Kind { One, FPower, AlphaBeta, Abs2m };
    Kind kind = Kind::One;
    int p = 0;  // m for FPower/Abs2m, j for AlphaBeta
    int q = 0;  // n for FPower, k for AlphaBeta

    static WeightSpec one() { return {}; }
    static WeightSpec f_power(int m, int n);
    static WeightSpec alphabeta(int j, int k);
    static WeightSpec abs2m(int m);

    // "one", "f_power(m,n)", "alphabeta(j,k)", "abs2m(m)".
    static WeightSpec parse(const std::string& text);
    std::string to_string() const;

    Complex operator()(const SymbolSample& s) const;
    // |d weight / d value| * err, used for the propagated error budget.
    double error_weight(const SymbolSample& s) const;
    bool nonnegative() const;

    friend bool operator==(const WeightSpec&, const WeightSpec&) = default;
};

// Symbols for every coset of Gamma_0(N) with |cz + d|^2 <= T_max, built once
// and then summed at any T <= T_max.
struct SampleSet {
    CurveSpec curve;
    std::complex<double> z{0.0, 1.0};
    double T_max = 0.0;
    double tol = 1e-10;
    CoefficientTable table;
    std::vector<SymbolSample> samples;  // sorted by (c, d)

    static SampleSet build(const CurveSpec& curve, double T_max, std::complex<double> z, double tol,
                           unsigned threads = 1);
    // Reuses an existing coefficient table (it must be long enough).
    static SampleSet build(const CurveSpec& curve, const CoefficientTable& table, double T_max,
                           std::complex<double> z, double tol, unsigned threads = 1);
};

struct SumReport {
    enum class Mode { Sharp, Smoothed };
    double T = 0.0;
    Complex value;
    std::int64_t count = 0;  // cosets with norm <= T, identity included
    WeightSpec weight;
    std::complex<double> z;
    Mode mode = Mode::Sharp;
    double U = 0.0;            // smoothing parameter (Smoothed only)
    double error_budget = 0.0; // propagated symbol truncation error
    bool warning = false;      // error_budget > 1e-6 |value|
};

SumReport sharp_sum(const SampleSet& set, const WeightSpec& weight, double T, unsigned threads = 1);

// phi_U: 1 on t <= 1 - 1/U, 0 on t >= 1 + 1/U, quintic smoothstep between.
double smooth_cutoff(double t, double U);

SumReport smoothed_sum(const SampleSet& set, const WeightSpec& weight, double T, double U, unsigned threads = 1);

struct EisensteinResult {
    Complex value;               // partial sum over N_z(gamma) <= T_max
    double tail_estimate = 0.0;  // heuristic, never folded into value
    std::int64_t terms = 0;
    double T_max = 0.0;
};

// Partial sum of E^{m,n}(z, s) = sum <gamma,f>^m conj(<gamma,f>)^n Im(gamma z)^s.
// The tail estimate extrapolates the absolute mass of the last decade of
// shells geometrically with ratio 10^{1 - Re s}.
EisensteinResult eisenstein_twisted(const SampleSet& set, Complex s, int m, int n, double T_max,
                                    bool reverse_order = false);

struct AsymptoticInputs {
    double volume = 0.0;
    double norm_f_sq = 0.0;
    double y = 1.0;          // Im z
    Complex base_integral;   // 2 pi i * integral_{i inf}^z f = G(z)
};

// Leading term of sum_{N_z <= T} weight ~ leading * T * log(T)^power_of_logT.
struct AsymptoticConstant {
    WeightSpec weight;
    Complex leading;
    int power_of_T = 1;
    int power_of_logT = 0;
    bool order_bound_only = false;  // odd alphabeta: only an O(T log^k T) bound is known

    Complex evaluate(double T) const;
};

AsymptoticConstant asymptotic_constants(const AsymptoticInputs& inputs, const WeightSpec& weight);

}  // namespace modsym
