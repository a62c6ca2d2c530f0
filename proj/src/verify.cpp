#include "modsym/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>

#include "modsym/cosets.hpp"
#include "modsym/petersson.hpp"
#include "modsym/series.hpp"
#include "modsym/stats.hpp"
#include "modsym/symbols.hpp"

namespace modsym {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBigT = 1e7;
constexpr std::int64_t kRankinX = 20000;

using Status = CriterionResult::Status;

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

std::string join(const std::vector<double>& v, const char* format) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(format, v[i]);
    return out;
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

class Suite {
public:
    explicit Suite(const VerifyOptions& o) : opt_(o), rng_(o.seed) {}

    const CoefficientTable& table() {
        if (!table_) table_.emplace(coefficient_table(opt_.curve, kRankinX));
        return *table_;
    }

    const SampleSet& big() {
        if (!big_) big_.emplace(SampleSet::build(opt_.curve, table(), kBigT, {0.0, 1.0}, opt_.tol, opt_.threads));
        return *big_;
    }

    const SampleSet& small() {
        if (!small_) small_.emplace(SampleSet::build(opt_.curve, table(), 2e4, {0.0, 1.0}, opt_.tol, opt_.threads));
        return *small_;
    }

    double norm_f_sq() { return rankin_estimate(table(), opt_.curve.N, kRankinX).value; }
    double vol() const { return volume(opt_.curve.N); }
    Complex G_at_i() { return antiderivative(table(), {0.0, 1.0}, 1e-15); }

    // A random element of Gamma_0(N): canonical lift of a random coset,
    // translated on the left and possibly negated.
    GammaMatrix random_gamma(std::int64_t c_mult_max, std::int64_t d_max) {
        const std::int64_t N = opt_.curve.N;
        for (;;) {
            const std::int64_t c = N * std::uniform_int_distribution<std::int64_t>(1, c_mult_max)(rng_);
            const std::int64_t d = std::uniform_int_distribution<std::int64_t>(-d_max, d_max)(rng_);
            if (std::gcd(c, d) != 1) continue;
            GammaMatrix m = lift({c, d, 0.0});
            const std::int64_t j = std::uniform_int_distribution<std::int64_t>(-3, 3)(rng_);
            m = GammaMatrix{1, j, 0, 1} * m;
            if (std::uniform_int_distribution<int>(0, 1)(rng_) == 1) m = {-m.a, -m.b, -m.c, -m.d};
            return m;
        }
    }

    Coset random_coset(std::int64_t c_max, std::int64_t d_max) {
        const std::int64_t N = opt_.curve.N;
        for (;;) {
            const std::int64_t c = N * std::uniform_int_distribution<std::int64_t>(1, c_max / N)(rng_);
            const std::int64_t d = std::uniform_int_distribution<std::int64_t>(-d_max, d_max)(rng_);
            if (std::gcd(c, d) == 1) return {c, d, coset_norm(c, d, {0.0, 1.0})};
        }
    }

    const VerifyOptions& opt_;
    std::mt19937_64 rng_;

private:
    std::optional<CoefficientTable> table_;
    std::optional<SampleSet> big_;
    std::optional<SampleSet> small_;
};

struct Outcome {
    bool passed;
    std::string detail;
};

Outcome homomorphism(Suite& s) {
    const double tol = s.opt_.tol;
    auto bounded = [](const GammaMatrix& m) {
        return std::max({std::llabs(m.a), std::llabs(m.b), std::llabs(m.c), std::llabs(m.d)}) <= 1000;
    };
    double worst = 0.0, worst_inverse = 0.0;
    for (int pair = 0; pair < 100;) {
        const GammaMatrix g1 = s.random_gamma(20, 300), g2 = s.random_gamma(20, 300);
        const GammaMatrix g12 = g1 * g2;
        if (!bounded(g1) || !bounded(g2) || !bounded(g12)) continue;
        ++pair;
        const Complex v1 = pairing(s.table(), g1, tol).value;
        const Complex v2 = pairing(s.table(), g2, tol).value;
        worst = std::max(worst, std::abs(pairing(s.table(), g12, tol).value - v1 - v2));
        worst_inverse = std::max(worst_inverse, std::abs(pairing(s.table(), g1.inverse(), tol).value + v1));
    }
    return {worst < 1e-8 && worst_inverse < 1e-8,
            fmt("100 pairs, max |product defect| %.2e, max |inverse defect| %.2e (limit 1e-8)", worst, worst_inverse)};
}

Outcome lattice_membership(Suite& s) {
    const PeriodLattice L = agm_periods(s.opt_.curve);
    const PeriodLattice scaled{2.0 * kPi * L.omega1, 2.0 * kPi * L.omega2, 4.0 * kPi * kPi * L.area};
    const double limit = 1e-6 * std::sqrt(L.area);
    const auto cosets = enumerate(s.opt_.curve.N, 1e4, {0.0, 1.0});
    double worst = 0.0, worst_scaled = 0.0;
    for (const auto& c : cosets) {
        const Complex v = pairing(s.table(), lift(c), s.opt_.tol).value;
        worst = std::max(worst, L.distance(v));
        worst_scaled = std::max(worst_scaled, scaled.distance(v));
    }
    const bool plain = worst < limit, fallback = worst_scaled < limit;
    const char* matched = plain && !fallback ? "period lattice" : fallback && !plain ? "2 pi * period lattice"
                                                                                    : plain ? "both" : "neither";
    return {plain != fallback, fmt("%zu cosets, max distance %.2e (limit %.2e), matched %s", cosets.size(),
                                   plain ? worst : worst_scaled, limit, matched)};
}

Outcome oracle_agreement(Suite& s) {
    double worst = 0.0, worst_split = 0.0;
    for (int i = 0; i < 50; ++i) {
        const GammaMatrix m = lift(s.random_coset(200, 500));
        const Complex direct = pairing(s.table(), m, s.opt_.tol).value;
        const Complex h1 = oracle_pairing(s.table(), m, 1.0, 1e-11);
        const Complex h2 = oracle_pairing(s.table(), m, 2.0, 1e-11);
        worst = std::max({worst, std::abs(direct - h1), std::abs(direct - h2)});
        worst_split = std::max(worst_split, std::abs(h1 - h2));
    }
    return {worst < 1e-8, fmt("50 cosets, max |series - quadrature| %.2e, max |h=1 - h=2| %.2e (limit 1e-8)",
                              worst, worst_split)};
}

Outcome counting(Suite& s) {
    const std::complex<double> z{0.0, 1.0};
    auto deviation = [&](double T) {
        std::int64_t n = 0;
        for_each_coset(s.opt_.curve.N, T, z, [&](const Coset&) { ++n; });
        return std::abs(static_cast<double>(n) * z.imag() * s.vol() / T - 1.0);
    };
    const double d4 = deviation(1e4), d6 = deviation(1e6);
    return {d6 <= 0.02 && d6 < d4, fmt("|count*y*vol/T - 1| = %.4f at 1e4, %.4f at 1e6 (limit 0.02)", d4, d6)};
}

Outcome relative_trend(Suite& s, const WeightSpec& w, Complex expected, const std::vector<double>& grid) {
    std::vector<double> dev;
    for (double T : grid) dev.push_back(std::abs(sharp_sum(s.big(), w, T, s.opt_.threads).value / T - expected) /
                                        std::abs(expected));
    const bool ok = strictly_decreasing(dev) && dev.back() <= 0.25;
    return {ok, fmt("target %.6e, relative deviation %s at T = 1e4, 1e5, 1e6 (decreasing, final <= 0.25)",
                    expected.real(), join(dev, "%.3f").c_str())};
}

Outcome second_moment(Suite& s) {
    const Complex G = s.G_at_i();
    return relative_trend(s, WeightSpec::f_power(2, 0), G * G / s.vol(), {1e4, 1e5, 1e6});
}

Outcome first_moment(Suite& s) { return relative_trend(s, WeightSpec::f_power(1, 0), s.G_at_i() / s.vol(), {1e4, 1e5, 1e6}); }

Outcome abs_square_slope(Suite& s) {
    const std::vector<double> grid{1e4, 3e4, 1e5, 3e5, 1e6};
    std::vector<double> x, y;
    for (double T : grid) {
        x.push_back(std::log(T));
        y.push_back(sharp_sum(s.big(), WeightSpec::abs2m(1), T, s.opt_.threads).value.real() / T);
    }
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    const double slope = sxy / sxx;
    const double target = 16.0 * kPi * kPi * s.norm_f_sq() / (s.vol() * s.vol());
    const double rel = std::abs(slope / target - 1.0);
    return {rel <= 0.15, fmt("slope %.4f vs %.4f, relative error %.3f (limit 0.15)", slope, target, rel)};
}

struct Decade {
    double kx, ky, corr;
    MomentReport report;
    std::vector<double> re;
};

Decade decade(Suite& s, double T) {
    const auto n = normalize(s.big().samples, s.norm_f_sq(), s.vol(), T);
    Decade d{0, 0, 0, moments(n.samples, 4, 4), {}};
    const auto& M = d.report.empirical;
    d.kx = M.at({4, 0}) / (M.at({2, 0}) * M.at({2, 0}));
    d.ky = M.at({0, 4}) / (M.at({0, 2}) * M.at({0, 2}));
    d.corr = std::abs(M.at({1, 1})) / std::sqrt(M.at({2, 0}) * M.at({0, 2}));
    for (const auto& x : n.samples) d.re.push_back(x.x);
    return d;
}

Outcome gaussian_shape(Suite& s) {
    std::vector<double> kx, ky;
    std::optional<Decade> last;
    for (double T : {1e4, 1e5, 1e6, 1e7}) {
        last.emplace(decade(s, T));
        kx.push_back(last->kx);
        ky.push_back(last->ky);
    }
    auto trending = [](const std::vector<double>& k) {
        std::vector<double> gap;
        for (double v : k) gap.push_back(std::abs(v - 3.0));
        return gap.back() == *std::min_element(gap.begin(), gap.end()) && gap.back() < gap.front();
    };
    auto in_band = [](double v) { return v >= 2.4 && v <= 3.6; };
    double odd = 0.0;
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {3, 0}, {0, 3}})
        odd = std::max(odd, std::abs(last->report.empirical.at({n, m})));
    const bool ok = in_band(kx.back()) && in_band(ky.back()) && trending(kx) && trending(ky) && last->corr <= 0.1 &&
                    odd <= 0.1;
    return {ok, fmt("kurtosis Re %s; Im %s (T = 1e4..1e7, band [2.4, 3.6]); correlation %.4f; max odd moment %.4f",
                    join(kx, "%.3f").c_str(), join(ky, "%.3f").c_str(), last->corr, odd)};
}

Outcome gaussian_normalized(Suite& s) {
    const Decade d = decade(s, kBigT);
    const double m20 = d.report.empirical.at({2, 0}), m02 = d.report.empirical.at({0, 2});
    const double ks = ks_distance(d.re);
    auto in_band = [](double v) { return v >= 0.85 && v <= 1.15; };
    return {in_band(m20) && in_band(m02) && ks <= 0.08,
            fmt("M20 %.4f, M02 %.4f (band [0.85, 1.15]), KS distance %.4f (limit 0.08), %zu samples", m20, m02, ks,
                d.report.count)};
}

Outcome petersson_cross(Suite& s) {
    const int degree = preset_modular_degree(s.opt_.curve);
    if (degree <= 0) return {false, "modular degree unknown for this curve"};
    const double lattice = lattice_norm(agm_periods(s.opt_.curve), degree).value;
    const double r2 = rankin_estimate(s.table(), s.opt_.curve.N, kRankinX).value;
    const double r1 = rankin_estimate(s.table(), s.opt_.curve.N, kRankinX / 2).value;
    const double cross = std::abs(r2 / lattice - 1.0), doubling = std::abs(r2 - r1) / r2;
    return {cross < 0.05 && doubling < 0.05,
            fmt("Rankin %.6f vs lattice %.6f (rel %.4f); X-doubling change %.4f (limit 0.05)", r2, lattice, cross,
                doubling)};
}

Outcome convergence(Suite& s) {
    std::vector<double> rel;
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 0}}) {
        const Complex e1 = eisenstein_twisted(s.big(), 2.0, m, n, 1e5).value;
        const Complex e2 = eisenstein_twisted(s.big(), 2.0, m, n, 4e5).value;
        rel.push_back(std::abs(e2 - e1) / std::abs(e2));
    }
    const bool stable = std::all_of(rel.begin(), rel.end(), [](double r) { return r <= 1e-3; });

    std::vector<double> shell(5, 0.0);
    double eichler = 0.0;
    for (const auto& x : s.big().samples) {
        const double N = x.coset.norm;
        if (x.coset.is_identity()) continue;
        if (N <= 1e6) eichler = std::max(eichler, std::abs(x.value) / std::log(N));
        for (int k = 0; k < 5; ++k) {
            const double lo = std::pow(10.0, k + 2);
            if (N >= lo && N <= 2.0 * lo) shell[k] = std::max(shell[k], std::abs(x.value) / std::pow(N, 0.1));
        }
    }
    const bool decay = strictly_decreasing(shell);
    const bool bounded = eichler <= kEichlerConstant;
    return {stable && decay && bounded,
            fmt("E(i,2) relative change 1e5 -> 4e5: %s (limit 1e-3); shell maxima of |v|/N^0.1 on [10^k, 2*10^k], "
                "k = 2..6: %s (strictly decreasing); max |v|/log N %.4f (bound %.1f)",
                join(rel, "%.1e").c_str(), join(shell, "%.4f").c_str(), eichler, kEichlerConstant)};
}

Outcome sandwich(Suite& s) {
    const double T = 1e4;
    int violations = 0, checks = 0;
    for (const auto& w : {WeightSpec::one(), WeightSpec::abs2m(1)}) {
        for (double U : {10.0, 100.0}) {
            const double lo = sharp_sum(s.small(), w, T * (1.0 - 1.0 / U), s.opt_.threads).value.real();
            const double mid = smoothed_sum(s.small(), w, T, U, s.opt_.threads).value.real();
            const double hi = sharp_sum(s.small(), w, T * (1.0 + 1.0 / U), s.opt_.threads).value.real();
            const double slack = 1e-12 * std::abs(hi);
            ++checks;
            if (!(lo <= mid + slack && mid <= hi + slack)) ++violations;
        }
    }
    bool endpoints = true;
    for (double U : {10.0, 100.0, 1e3}) {
        endpoints = endpoints && smooth_cutoff(1.0 - 1.0 / U, U) == 1.0 && smooth_cutoff(1.0 + 1.0 / U, U) == 0.0 &&
                    smooth_cutoff(0.0, U) == 1.0 && smooth_cutoff(2.0, U) == 0.0 &&
                    std::abs(smooth_cutoff(1.0, U) - 0.5) < 1e-12;
    }
    return {violations == 0 && endpoints, fmt("%d/%d sandwich checks hold at T = 1e4; cutoff endpoint values %s",
                                              checks - violations, checks, endpoints ? "exact" : "wrong")};
}

Outcome determinism(Suite& s) {
    const double T = s.opt_.quick ? 1e5 : 1e6;
    std::vector<SampleSet> sets;
    for (unsigned t : {1u, 4u, 8u}) sets.push_back(SampleSet::build(s.opt_.curve, s.table(), T, {0.0, 1.0}, s.opt_.tol, t));
    bool same = true;
    const auto& ref = sets.front().samples;
    for (std::size_t k = 1; k < sets.size(); ++k) {
        const auto& other = sets[k].samples;
        same = same && other.size() == ref.size();
        for (std::size_t i = 0; same && i < ref.size(); ++i)
            same = ref[i].coset == other[i].coset && ref[i].value == other[i].value;
    }
    const unsigned threads[] = {1, 4, 8};
    for (const auto& w : {WeightSpec::abs2m(1), WeightSpec::f_power(2, 0)}) {
        const Complex base = sharp_sum(sets[0], w, T, 1).value;
        for (unsigned t : threads) same = same && sharp_sum(sets[0], w, T, t).value == base;
    }
    return {same, fmt("symbols and sums at T = %.0e bit-identical for 1, 4, 8 threads", T)};
}

struct Criterion {
    int id;
    const char* name;
    bool quick;
    double budget_seconds;  // 0: no budget
    std::function<Outcome(Suite&)> run;
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options) {
    options.curve.validate();
    const std::vector<Criterion> criteria = {
        {1, "homomorphism", true, 10.0, homomorphism},
        {2, "lattice membership", true, 30.0, lattice_membership},
        {3, "quadrature oracle", true, 0.0, oracle_agreement},
        {4, "coset counting", false, 10.0, counting},
        {5, "second moment of symbols", false, 300.0, second_moment},
        {6, "mean square growth", false, 300.0, abs_square_slope},
        {7, "first moment of symbols", false, 0.0, first_moment},
        {8, "gaussian shape", false, 1200.0, gaussian_shape},
        {9, "gaussian normalization", false, 0.0, gaussian_normalized},
        {10, "norm cross-check", true, 0.0, petersson_cross},
        {11, "convergence and growth", false, 0.0, convergence},
        {12, "smoothing sandwich", true, 0.0, sandwich},
        {13, "thread determinism", true, 0.0, determinism},
    };

    Suite suite(options);
    std::vector<CriterionResult> out;
    for (const auto& c : criteria) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.id) == options.only.end())
            continue;
        CriterionResult r{c.id, c.name, Status::Skip, ""};
        if (options.quick && !c.quick) {
            r.detail = "needs T above 1e5, skipped in quick mode";
            out.push_back(r);
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        try {
            const Outcome o = c.run(suite);
            r.status = o.passed ? Status::Pass : Status::Fail;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.status = Status::Fail;
            r.detail = std::string("error: ") + e.what();
        }
        if (c.budget_seconds > 0.0) {
            const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (elapsed > c.budget_seconds) {
                r.status = Status::Fail;
                r.detail += fmt("; over the %.0f s runtime budget", c.budget_seconds);
            } else {
                r.detail += fmt("; within the %.0f s runtime budget", c.budget_seconds);
            }
        }
        out.push_back(r);
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    const char* tag = r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "SKIP";
    return fmt("%s  C%02d %s: ", tag, r.id, r.name.c_str()) + r.detail;
}

}  // namespace modsym
