#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modsym/config.hpp"
#include "modsym/cosets.hpp"
#include "modsym/curve.hpp"
#include "modsym/petersson.hpp"
#include "modsym/series.hpp"
#include "modsym/stats.hpp"
#include "modsym/symbols.hpp"
#include "modsym/verify.hpp"

using namespace modsym;

namespace {

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Rows of pre-formatted cells written as CSV or as a JSON array of records.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream& os, const std::string& format) const {
        if (format == "json") {
            nlohmann::ordered_json out = nlohmann::ordered_json::array();
            for (const auto& row : rows) {
                nlohmann::ordered_json rec;
                for (std::size_t k = 0; k < header.size(); ++k) {
                    const auto& cell = row[k];
                    char* end = nullptr;
                    const long long i = std::strtoll(cell.c_str(), &end, 10);
                    if (!cell.empty() && *end == '\0') {
                        rec[header[k]] = i;
                        continue;
                    }
                    const double v = std::strtod(cell.c_str(), &end);
                    if (!cell.empty() && *end == '\0')
                        rec[header[k]] = v;
                    else
                        rec[header[k]] = cell;
                }
                out.push_back(rec);
            }
            os << out.dump(2) << '\n';
            return;
        }
        for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << row[k];
            os << '\n';
        }
    }
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

struct Options {
    RunConfig config;
    std::string config_path, write_config;
    std::string T_grid_text;
    std::int64_t N = 0, n_max = 100, X = 20000;
    std::string weight = "one";
    double U = 0.0;
    int n_max_moment = 4, m_max_moment = 4;
    std::string component = "re";
    std::size_t bins = 20;
    std::string range = "-4,4";
    double s_re = 2.0, s_im = 0.0;
    int m = 1, n = 0;
    bool reverse = false, quick = false;
    std::vector<int> only;
};

void add_common(CLI::App* sub, Options& o, bool with_T) {
    sub->add_option("--curve", o.config.curve, "11a, 37a or a1,a2,a3,a4,a6,N");
    sub->add_option("--threads", o.config.threads, "worker threads");
    sub->add_option("--tol", o.config.tol, "absolute tolerance per symbol");
    sub->add_option("--z-re", o.config.z_re, "Re z");
    sub->add_option("--z-im", o.config.z_im, "Im z");
    sub->add_option("--format", o.config.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", o.config_path, "JSON run config (flags given explicitly take precedence)");
    sub->add_option("--write-config", o.write_config, "write the effective run config as JSON");
    if (with_T) sub->add_option("--T", o.T_grid_text, "bound T, or a comma-separated grid");
}

// Loads --config first, then reapplies every flag the user passed.
void resolve_config(CLI::App* sub, Options& o) {
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw std::invalid_argument("cannot read config '" + o.config_path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        const RunConfig file = RunConfig::from_json(buf.str());
        RunConfig merged = file;
        auto given = [&](const char* flag) { return sub->get_option_no_throw(flag) && sub->count(flag) > 0; };
        if (given("--curve")) merged.curve = o.config.curve;
        if (given("--threads")) merged.threads = o.config.threads;
        if (given("--tol")) merged.tol = o.config.tol;
        if (given("--z-re")) merged.z_re = o.config.z_re;
        if (given("--z-im")) merged.z_im = o.config.z_im;
        if (given("--format")) merged.format = o.config.format;
        if (given("--seed")) merged.seed = o.config.seed;
        o.config = merged;
    }
    if (!o.T_grid_text.empty()) o.config.T_grid = parse_list(o.T_grid_text);
    o.config.validate();
    if (!o.write_config.empty()) {
        std::ofstream out(o.write_config);
        out << o.config.to_json() << '\n';
    }
}

SampleSet build_samples(const RunConfig& c, double T) {
    return SampleSet::build(c.curve_spec(), T, c.z(), c.tol, c.threads);
}

int run_coeffs(const Options& o) {
    if (o.n_max < 1) throw std::invalid_argument("--n-max must be positive");
    const auto table = coefficient_table(o.config.curve_spec(), o.n_max);
    Table t{{"n", "a_n"}, {}};
    for (std::int64_t n = 1; n <= table.n_max(); ++n) t.rows.push_back({std::to_string(n), std::to_string(table[n])});
    t.write(std::cout, o.config.format);
    return 0;
}

int run_enumerate(const Options& o) {
    const std::int64_t N = o.N > 0 ? o.N : o.config.curve_spec().N;
    Table t{{"c", "d", "norm"}, {}};
    for_each_coset(N, o.config.T_max(), o.config.z(), [&](const Coset& c) {
        t.rows.push_back({std::to_string(c.c), std::to_string(c.d), num(c.norm)});
    });
    t.write(std::cout, o.config.format);
    return 0;
}

int run_symbols(const Options& o) {
    const auto set = build_samples(o.config, o.config.T_max());
    Table t{{"c", "d", "norm", "re_symbol", "im_symbol", "err_bound"}, {}};
    for (const auto& s : set.samples)
        t.rows.push_back({std::to_string(s.coset.c), std::to_string(s.coset.d), num(s.coset.norm), num(s.value.real()),
                          num(s.value.imag()), num(s.err_bound)});
    t.write(std::cout, o.config.format);
    return 0;
}

AsymptoticInputs theory_inputs(const RunConfig& c, const SampleSet& set, std::int64_t X) {
    const auto curve = c.curve_spec();
    const auto table = coefficient_table(curve, X);
    return {volume(curve.N), rankin_estimate(table, curve.N, X).value, c.z().imag(),
            antiderivative(set.table, c.z(), 1e-14)};
}

int run_sums(const Options& o) {
    const auto weight = WeightSpec::parse(o.weight);
    const double reach = o.U > 0.0 ? o.config.T_max() * (1.0 + 1.0 / o.U) : o.config.T_max();
    const auto set = build_samples(o.config, reach);
    std::optional<AsymptoticConstant> theory;
    try {
        theory = asymptotic_constants(theory_inputs(o.config, set, o.X), weight);
    } catch (const std::invalid_argument&) {
        // no known leading term for this weight
    }
    Table t{{"T", "count", "re_value", "im_value", "mode", "theory_leading_re", "theory_leading_im"}, {}};
    for (double T : o.config.T_grid) {
        const auto r = o.U > 0.0 ? smoothed_sum(set, weight, T, o.U, o.config.threads)
                                 : sharp_sum(set, weight, T, o.config.threads);
        if (r.warning)
            std::cerr << "warning: truncation error budget " << r.error_budget << " exceeds 1e-6 |value| at T = " << T
                      << '\n';
        const Complex lead = theory ? theory->evaluate(T) : Complex(NAN, NAN);
        t.rows.push_back({num(T), std::to_string(r.count), num(r.value.real()), num(r.value.imag()),
                          r.mode == SumReport::Mode::Sharp ? "sharp" : "smoothed", num(lead.real()),
                          num(lead.imag())});
    }
    t.write(std::cout, o.config.format);
    return 0;
}

Normalized normalized_samples(const Options& o) {
    const auto curve = o.config.curve_spec();
    const auto set = build_samples(o.config, o.config.T_max());
    const double norm = rankin_estimate(coefficient_table(curve, o.X), curve.N, o.X).value;
    auto n = normalize(set.samples, norm, volume(curve.N), o.config.T_max());
    if (n.samples.empty()) throw std::invalid_argument("no samples with norm > 1 below T; increase --T");
    return n;
}

int run_moments(const Options& o) {
    const auto n = normalized_samples(o);
    const auto report = moments(n.samples, o.n_max_moment, o.m_max_moment);
    Table t{{"n", "m", "empirical", "gaussian_limit"}, {}};
    for (const auto& [key, value] : report.empirical)
        t.rows.push_back({std::to_string(key.first), std::to_string(key.second), num(value),
                          num(report.gaussian_limit.at(key))});
    t.write(std::cout, o.config.format);
    return 0;
}

int run_histogram(const Options& o) {
    const auto n = normalized_samples(o);
    const auto range = parse_list(o.range);
    if (range.size() != 2) throw std::invalid_argument("--range takes lo,hi");
    std::vector<double> values;
    for (const auto& s : n.samples) values.push_back(o.component == "re" ? s.x : s.y);
    Table t{{"bin_lo", "bin_hi", "count", "expected"}, {}};
    for (const auto& b : histogram(values, o.bins, range[0], range[1]))
        t.rows.push_back({num(b.lo), num(b.hi), std::to_string(b.count),
                          num(b.expected_mass * static_cast<double>(values.size()))});
    t.write(std::cout, o.config.format);
    return 0;
}

int run_petersson(const Options& o) {
    const auto curve = o.config.curve_spec();
    std::vector<NormEstimate> est{rankin_estimate(coefficient_table(curve, o.X), curve.N, o.X)};
    if (const int degree = preset_modular_degree(curve); degree > 0)
        est.push_back(lattice_norm(agm_periods(curve), degree));
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& e : est) out.push_back({{"method", e.method}, {"value", e.value}, {"spread", e.spread}});
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_eisenstein(const Options& o) {
    const auto set = build_samples(o.config, o.config.T_max());
    const auto r = eisenstein_twisted(set, {o.s_re, o.s_im}, o.m, o.n, o.config.T_max(), o.reverse);
    nlohmann::ordered_json out = {{"m", o.m},
                                  {"n", o.n},
                                  {"s", {o.s_re, o.s_im}},
                                  {"T_max", r.T_max},
                                  {"terms", r.terms},
                                  {"re_value", r.value.real()},
                                  {"im_value", r.value.imag()},
                                  {"tail_estimate", r.tail_estimate}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_verify(const Options& o) {
    VerifyOptions v;
    v.curve = o.config.curve_spec();
    v.threads = o.config.threads;
    v.tol = o.config.tol;
    v.seed = o.config.seed;
    v.quick = o.quick;
    v.only = o.only;
    bool ok = true;
    for (const auto& r : run_acceptance(v)) {
        std::cout << format_result(r) << '\n' << std::flush;
        ok = ok && r.status != CriterionResult::Status::Fail;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modular symbols of weight-2 newforms: enumeration, sums, moments"};
    app.require_subcommand(1);
    Options o;

    auto* coeffs = app.add_subcommand("coeffs", "Fourier coefficients a_n as CSV (n,a_n)");
    add_common(coeffs, o, false);
    coeffs->add_option("--n-max", o.n_max, "largest n");

    auto* enumerate = app.add_subcommand("enumerate", "cosets with |cz+d|^2 <= T as CSV (c,d,norm)");
    add_common(enumerate, o, true);
    enumerate->add_option("--N", o.N, "level (defaults to the conductor of --curve)");

    auto* symbols = app.add_subcommand("symbols", "modular symbols per coset");
    add_common(symbols, o, true);

    auto* sums = app.add_subcommand("sums", "weighted sums over cosets on a T grid");
    add_common(sums, o, false);
    sums->add_option("--weight", o.weight, "one, f_power(m,n), alphabeta(j,k) or abs2m(m)");
    sums->add_option("--T-grid,--T", o.T_grid_text, "comma-separated T values");
    sums->add_option("--smooth-U", o.U, "smooth cutoff width parameter U > 1 (sharp if omitted)");
    sums->add_option("--X", o.X, "Rankin cutoff for the norm used in the theory column");

    auto* mom = app.add_subcommand("moments", "mixed moments of the normalized symbols");
    add_common(mom, o, true);
    mom->add_option("--n-max", o.n_max_moment, "largest power of the real part (<= 6)");
    mom->add_option("--m-max", o.m_max_moment, "largest power of the imaginary part (<= 6)");
    mom->add_option("--X", o.X, "Rankin cutoff for the normalizing norm");

    auto* hist = app.add_subcommand("histogram", "histogram of one normalized component");
    add_common(hist, o, true);
    hist->add_option("--component", o.component, "re or im")->check(CLI::IsMember({"re", "im"}));
    hist->add_option("--bins", o.bins, "number of bins");
    hist->add_option("--range", o.range, "lo,hi");
    hist->add_option("--X", o.X, "Rankin cutoff for the normalizing norm");

    auto* pet = app.add_subcommand("petersson", "norm of the newform by each available method (JSON)");
    add_common(pet, o, false);
    pet->add_option("--X", o.X, "Rankin cutoff");

    auto* eis = app.add_subcommand("eisenstein", "partial sum of the twisted Eisenstein series (JSON)");
    add_common(eis, o, false);
    eis->add_option("--T-max,--T", o.T_grid_text, "summation bound");
    eis->add_option("--s-re", o.s_re, "Re s (> 1)");
    eis->add_option("--s-im", o.s_im, "Im s");
    eis->add_option("--m", o.m, "power of the symbol");
    eis->add_option("--n", o.n, "power of its conjugate");
    eis->add_flag("--reverse", o.reverse, "sum in reverse order");

    auto* ver = app.add_subcommand("verify", "run the acceptance suite, one PASS/FAIL line per criterion");
    add_common(ver, o, false);
    ver->add_flag("--quick", o.quick, "only the checks with T <= 1e5");
    ver->add_option("--seed", o.config.seed, "seed for the randomized checks");
    ver->add_option("--only", o.only, "criterion ids to run");

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* sub = app.get_subcommands().front();
        resolve_config(sub, o);
        if (sub == coeffs) return run_coeffs(o);
        if (sub == enumerate) return run_enumerate(o);
        if (sub == symbols) return run_symbols(o);
        if (sub == sums) return run_sums(o);
        if (sub == mom) return run_moments(o);
        if (sub == hist) return run_histogram(o);
        if (sub == pet) return run_petersson(o);
        if (sub == eis) return run_eisenstein(o);
        if (sub == ver) return run_verify(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
