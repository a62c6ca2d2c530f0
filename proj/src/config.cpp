#include "modsym/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace modsym {

void RunConfig::validate() const {
    curve_spec().validate();
    if (T_grid.empty()) throw std::invalid_argument("config: T grid is empty");
    for (double T : T_grid)
        if (!(T >= 1.0 && T <= 1e8)) throw std::invalid_argument("config: T must lie in [1, 1e8]");
    if (!(z_im > 0.0)) throw std::invalid_argument("config: Im z must be positive");
    if (!(std::abs(z_re) <= 1e3)) throw std::invalid_argument("config: |Re z| must be at most 1e3");
    if (!(tol >= 1e-14 && tol <= 1e-2)) throw std::invalid_argument("config: tol must lie in [1e-14, 1e-2]");
    if (threads < 1 || threads > 256) throw std::invalid_argument("config: threads must lie in [1, 256]");
    if (format != "csv" && format != "json") throw std::invalid_argument("config: format must be csv or json");
}

double RunConfig::T_max() const { return *std::max_element(T_grid.begin(), T_grid.end()); }

std::string RunConfig::to_json() const {
    const nlohmann::json j = {{"curve", curve},   {"T_grid", T_grid}, {"z", {z_re, z_im}}, {"tol", tol},
                              {"threads", threads}, {"format", format}, {"seed", seed}};
    return j.dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
    RunConfig c;
    try {
        const auto j = nlohmann::json::parse(text);
        c.curve = j.value("curve", c.curve);
        if (j.contains("T")) c.T_grid = {j.at("T").get<double>()};
        if (j.contains("T_grid")) c.T_grid = j.at("T_grid").get<std::vector<double>>();
        if (j.contains("z")) {
            const auto z = j.at("z").get<std::vector<double>>();
            if (z.size() != 2) throw std::invalid_argument("config: z must have two components");
            c.z_re = z[0];
            c.z_im = z[1];
        }
        c.tol = j.value("tol", c.tol);
        c.threads = j.value("threads", c.threads);
        c.format = j.value("format", c.format);
        c.seed = j.value("seed", c.seed);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

}  // namespace modsym
