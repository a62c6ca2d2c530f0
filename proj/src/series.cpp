#include "modsym/series.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "modsym/parallel.hpp"
#include "modsym/summation.hpp"

namespace modsym {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 4096;
constexpr int kMaxDegree = 6;

Complex ipow(Complex x, int k) {
    Complex r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// (2j)! / (j! 2^j)
double even_moment(int j) { return factorial(2 * j) / (factorial(j) * ipow(2.0, j)); }

struct Partial {
    CompensatedSum<Complex> value;
    CompensatedSum<double> error;
    std::int64_t count = 0;
};

// Sums cutoff(norm) * weight over the samples in fixed chunks, merged in
// chunk order, so the result is independent of the thread count.
template <typename Cutoff>
Partial reduce_samples(const SampleSet& set, const WeightSpec& weight, Cutoff&& cutoff, unsigned threads) {
    const auto& samples = set.samples;
    const std::size_t chunks = (samples.size() + kChunk - 1) / kChunk;
    std::vector<Partial> partials(chunks);
    parallel_for(chunks, threads, [&](std::size_t k) {
        Partial& p = partials[k];
        const std::size_t end = std::min(samples.size(), (k + 1) * kChunk);
        for (std::size_t i = k * kChunk; i < end; ++i) {
            const double phi = cutoff(samples[i].coset.norm);
            if (phi == 0.0) continue;
            p.value.add(phi * weight(samples[i]));
            p.error.add(phi * weight.error_weight(samples[i]));
            ++p.count;
        }
    });
    Partial total;
    for (const auto& p : partials) {
        total.value.add(p.value);
        total.error.add(p.error);
        total.count += p.count;
    }
    return total;
}

void require_coverage(const SampleSet& set, double T, const char* what) {
    if (!(T >= 1.0)) throw std::invalid_argument(std::string(what) + ": T must be >= 1");
    if (T > set.T_max)
        throw std::invalid_argument(std::string(what) + ": T exceeds the range of the sample set");
}

SumReport make_report(const SampleSet& set, const WeightSpec& weight, double T, const Partial& p) {
    SumReport r;
    r.T = T;
    r.value = p.value.value();
    r.count = p.count;
    r.weight = weight;
    r.z = set.z;
    r.error_budget = p.error.value();
    r.warning = r.error_budget > 1e-6 * std::abs(r.value);
    return r;
}

}  // namespace

WeightSpec WeightSpec::f_power(int m, int n) {
    if (m < 0 || n < 0 || m + n > kMaxDegree)
        throw std::invalid_argument("f_power: exponents must be >= 0 with m + n <= 6");
    return {Kind::FPower, m, n};
}

WeightSpec WeightSpec::alphabeta(int j, int k) {
    if (j < 0 || k < 0 || j + k > kMaxDegree)
        throw std::invalid_argument("alphabeta: exponents must be >= 0 with j + k <= 6");
    return {Kind::AlphaBeta, j, k};
}

WeightSpec WeightSpec::abs2m(int m) {
    if (m < 0 || 2 * m > kMaxDegree) throw std::invalid_argument("abs2m: m must be in [0, 3]");
    return {Kind::Abs2m, m, 0};
}

WeightSpec WeightSpec::parse(const std::string& text) {
    int a = 0, b = 0;
    char tail = 0;
    if (text == "one") return one();
    if (std::sscanf(text.c_str(), "f_power(%d,%d)%c", &a, &b, &tail) == 2) return f_power(a, b);
    if (std::sscanf(text.c_str(), "alphabeta(%d,%d)%c", &a, &b, &tail) == 2) return alphabeta(a, b);
    if (std::sscanf(text.c_str(), "abs2m(%d)%c", &a, &tail) == 1) return abs2m(a);
    throw std::invalid_argument("unknown weight '" + text + "'");
}

std::string WeightSpec::to_string() const {
    switch (kind) {
        case Kind::One: return "one";
        case Kind::FPower: return "f_power(" + std::to_string(p) + "," + std::to_string(q) + ")";
        case Kind::AlphaBeta: return "alphabeta(" + std::to_string(p) + "," + std::to_string(q) + ")";
        case Kind::Abs2m: return "abs2m(" + std::to_string(p) + ")";
    }
    return "?";
}

Complex WeightSpec::operator()(const SymbolSample& s) const {
    switch (kind) {
        case Kind::One: return 1.0;
        case Kind::FPower: return ipow(s.value, p) * ipow(std::conj(s.value), q);
        case Kind::AlphaBeta: return ipow(s.alpha, p) * ipow(s.beta, q);
        case Kind::Abs2m: return ipow(std::norm(s.value), p);
    }
    return 0.0;
}

double WeightSpec::error_weight(const SymbolSample& s) const {
    int degree = 0;
    switch (kind) {
        case Kind::One: return 0.0;
        case Kind::FPower:
        case Kind::AlphaBeta: degree = p + q; break;
        case Kind::Abs2m: degree = 2 * p; break;
    }
    if (degree == 0) return 0.0;
    return degree * ipow(std::abs(s.value) + s.err_bound, degree - 1) * s.err_bound;
}

bool WeightSpec::nonnegative() const {
    switch (kind) {
        case Kind::One:
        case Kind::Abs2m: return true;
        case Kind::FPower: return p == q;
        case Kind::AlphaBeta: return p + q == 0;
    }
    return false;
}

SampleSet SampleSet::build(const CurveSpec& curve, double T_max, std::complex<double> z, double tol,
                           unsigned threads) {
    std::int64_t n_max = required_table_size(max_c(T_max, z), tol);
    for (;;) {
        try {
            return build(curve, coefficient_table(curve, n_max), T_max, z, tol, threads);
        } catch (const InsufficientTable& e) {
            if (e.required_n_max <= n_max) throw;
            n_max = e.required_n_max;
        }
    }
}

SampleSet SampleSet::build(const CurveSpec& curve, const CoefficientTable& table, double T_max,
                           std::complex<double> z, double tol, unsigned threads) {
    curve.validate();
    SampleSet set{curve, z, T_max, tol, table, {}};
    const auto cosets = enumerate(curve.N, T_max, z);
    set.samples = evaluate_symbols(table, cosets, tol, threads);
    return set;
}

SumReport sharp_sum(const SampleSet& set, const WeightSpec& weight, double T, unsigned threads) {
    require_coverage(set, T, "sharp_sum");
    const auto p = reduce_samples(set, weight, [T](double norm) { return norm <= T ? 1.0 : 0.0; }, threads);
    return make_report(set, weight, T, p);
}

double smooth_cutoff(double t, double U) {
    if (!(U > 1.0)) throw std::invalid_argument("smooth_cutoff: U must exceed 1");
    const double lo = 1.0 - 1.0 / U, hi = 1.0 + 1.0 / U;
    if (t <= lo) return 1.0;
    if (t >= hi) return 0.0;
    const double s = (t - lo) * U / 2.0;
    return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

SumReport smoothed_sum(const SampleSet& set, const WeightSpec& weight, double T, double U, unsigned threads) {
    if (!(U > 1.0)) throw std::invalid_argument("smoothed_sum: U must exceed 1");
    require_coverage(set, T * (1.0 + 1.0 / U), "smoothed_sum");
    const auto p = reduce_samples(
        set, weight, [T, U](double norm) { return smooth_cutoff(norm / T, U); }, threads);
    SumReport r = make_report(set, weight, T, p);
    r.mode = SumReport::Mode::Smoothed;
    r.U = U;
    return r;
}

EisensteinResult eisenstein_twisted(const SampleSet& set, Complex s, int m, int n, double T_max,
                                    bool reverse_order) {
    if (!(s.real() > 1.0)) throw std::invalid_argument("eisenstein_twisted: Re s must exceed 1");
    if (m < 0 || n < 0 || m + n > kMaxDegree)
        throw std::invalid_argument("eisenstein_twisted: exponents must be >= 0 with m + n <= 6");
    require_coverage(set, T_max, "eisenstein_twisted");

    const double y = set.z.imag();
    const double decade = T_max / 10.0;
    CompensatedSum<Complex> sum;
    CompensatedSum<double> last_decade;
    EisensteinResult out;
    out.T_max = T_max;
    auto visit = [&](const SymbolSample& x) {
        const double norm = x.coset.norm;
        if (norm > T_max) return;
        const Complex term = ipow(x.value, m) * ipow(std::conj(x.value), n) * std::exp(s * std::log(y / norm));
        sum.add(term);
        if (norm > decade) last_decade.add(std::abs(term));
        ++out.terms;
    };
    if (reverse_order) {
        for (auto it = set.samples.rbegin(); it != set.samples.rend(); ++it) visit(*it);
    } else {
        for (const auto& x : set.samples) visit(x);
    }
    out.value = sum.value();
    const double ratio = std::pow(10.0, 1.0 - s.real());
    out.tail_estimate = last_decade.value() * ratio / (1.0 - ratio);
    return out;
}

Complex AsymptoticConstant::evaluate(double T) const {
    return leading * std::pow(T, power_of_T) * std::pow(std::log(T), power_of_logT);
}

AsymptoticConstant asymptotic_constants(const AsymptoticInputs& in, const WeightSpec& weight) {
    if (!(in.volume > 0.0) || !(in.y > 0.0)) throw std::invalid_argument("asymptotic_constants: bad inputs");
    AsymptoticConstant out;
    out.weight = weight;
    const double base = 1.0 / (in.y * in.volume);
    const Complex G = in.base_integral;

    auto abs_moment = [&](int m) {
        out.leading = ipow(16.0 * kPi * kPi, m) * factorial(m) * ipow(in.norm_f_sq, m) /
                      (in.y * ipow(in.volume, m + 1));
        out.power_of_logT = m;
    };

    switch (weight.kind) {
        case WeightSpec::Kind::One:
            out.leading = base;
            return out;
        case WeightSpec::Kind::Abs2m:
            abs_moment(weight.p);
            return out;
        case WeightSpec::Kind::FPower:
            if (weight.p == weight.q) {
                abs_moment(weight.p);
                return out;
            }
            if (weight.p + weight.q <= 2 && weight.p * weight.q == 0) {
                const Complex g = weight.p > 0 ? G : std::conj(G);
                out.leading = ipow(g, weight.p + weight.q) * base;
                return out;
            }
            break;
        case WeightSpec::Kind::AlphaBeta: {
            const int j = weight.p, k = weight.q;
            if (j % 2 != 0 || k % 2 != 0) {
                out.leading = 0.0;
                out.power_of_logT = std::max(0, (j + k + 1) / 2 - 1);
                out.order_bound_only = true;
                return out;
            }
            const int h = (j + k) / 2;
            out.leading = ipow(-8.0 * kPi * kPi, h) * ipow(in.norm_f_sq, h) / (in.y * ipow(in.volume, h + 1)) *
                          even_moment(j / 2) * even_moment(k / 2);
            out.power_of_logT = h;
            return out;
        }
    }
    throw std::invalid_argument("asymptotic_constants: no known leading term for " + weight.to_string());
}

}  // namespace modsym
