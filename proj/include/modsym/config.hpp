#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "modsym/curve.hpp"

namespace modsym {

// Settings shared by every subcommand. Bounds are checked by validate():
// 1 <= T <= 1e8 for each grid entry, Im z > 0, |Re z| <= 1e3,
// 1e-14 <= tol <= 1e-2, 1 <= threads <= 256, format csv or json.
struct RunConfig {
    std::string curve = "11a";
    std::vector<double> T_grid{1e4};
    double z_re = 0.0;
    double z_im = 1.0;
    double tol = 1e-10;
    unsigned threads = 1;
    std::string format = "csv";
    std::uint64_t seed = 20240611;

    void validate() const;
    CurveSpec curve_spec() const { return parse_curve(curve); }
    std::complex<double> z() const { return {z_re, z_im}; }
    double T_max() const;

    std::string to_json() const;
    static RunConfig from_json(const std::string& text);

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

}  // namespace modsym
