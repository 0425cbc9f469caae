// Acceptance gate: runs every verification suite and prints one line per
// check. Exit status 0 only when all checks pass. Pass --quick to run the
// reduced-budget variant during development; the full run is the gate.

#include <cstdio>
#include <cstring>

#include "pinlab/verify.hpp"

int main(int argc, char** argv) {
    pinlab::verify::options opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) {
            opt.quick = true;
        } else {
            std::fprintf(stderr, "usage: %s [--quick]\n", argv[0]);
            return 2;
        }
    }

    int failures = 0;
    int total = 0;
    for (const auto& suite : pinlab::verify::suite_names()) {
        for (const auto& res : pinlab::verify::run_suite(suite, opt)) {
            ++total;
            if (!res.pass) ++failures;
            std::printf("[%s] %-14s %-40s %7.1fs  %s\n", res.pass ? "PASS" : "FAIL",
                        suite.c_str(), res.name.c_str(), res.seconds, res.detail.c_str());
            std::fflush(stdout);
        }
    }
    std::printf("%d/%d checks passed%s\n", total - failures, total,
                failures ? " -- FAILURES PRESENT" : "");
    return failures == 0 ? 0 : 1;
}
