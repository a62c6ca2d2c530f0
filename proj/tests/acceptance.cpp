#include <iostream>

#include <CLI11.hpp>

#include "modsym/verify.hpp"

int main(int argc, char** argv) {
    modsym::VerifyOptions opt;
    CLI::App app{"acceptance criteria, one PASS/FAIL line each"};
    app.add_option("--only", opt.only, "criterion ids");
    app.add_option("--threads", opt.threads, "worker threads");
    app.add_flag("--quick", opt.quick, "skip checks that need T above 1e5");
    CLI11_PARSE(app, argc, argv);

    bool ok = true;
    for (const auto& r : modsym::run_acceptance(opt)) {
        std::cout << modsym::format_result(r) << '\n';
        ok = ok && r.status != modsym::CriterionResult::Status::Fail;
    }
    return ok ? 0 : 1;
}
