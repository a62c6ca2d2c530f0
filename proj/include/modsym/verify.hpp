#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modsym/curve.hpp"

namespace modsym {

struct VerifyOptions {
    CurveSpec curve = preset_curve("11a");
    unsigned threads = 1;
    bool quick = false;  // only the checks that need T <= 1e5
    double tol = 1e-10;
    std::uint64_t seed = 20240611;
    std::vector<int> only;  // restrict to these criterion ids (empty: all)
};

struct CriterionResult {
    int id = 0;
    std::string name;
    enum class Status { Pass, Fail, Skip } status = Status::Skip;
    std::string detail;
};

// Constant used for the Eichler-type bound |<gamma,f>| <= C log N_z(gamma).
constexpr double kEichlerConstant = 1.0;

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options);

// One line per criterion, e.g. "PASS  C04 counting: ...". Contains no
// timings, so the text is reproducible across runs and thread counts.
std::string format_result(const CriterionResult& r);

}  // namespace modsym
